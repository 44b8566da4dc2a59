"""Endomorphisms of Z_d1 x ... x Z_dm as integer matrices, plus subgroup
machinery built on the Diophantine solver.

A homomorphism is fixed by the images of the factor generators e^i; the
images form the columns of a matrix whose row k lives in Z_{d_k}. The
column list is a valid homomorphism exactly when d_i * column_i = 0 in
the group, and everything else here (duals, inverses, orthogonal
subgroups, character-constraint solving) reduces to exact integer
linear algebra over that representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import ENUM_BOUND, AbelianGroup, GroupElement
from .intlinalg import kernel_basis, solve_diophantine


class InvalidEndomorphism(ValueError):
    """A column list that is not a homomorphism of the group."""

    def __init__(self, column: int, message: str):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class EndoMatrix:
    """Matrix representation of an endomorphism: column i = image of e^i."""

    group: AbelianGroup
    columns: tuple[GroupElement, ...]

    def __post_init__(self):
        m = self.group.num_factors
        if len(self.columns) != m:
            raise ValueError(f"expected {m} columns, got {len(self.columns)}")
        for i, col in enumerate(self.columns):
            if col.group != self.group:
                raise ValueError("column element belongs to a different group")
            if not (self.group.moduli[i] * col).is_zero:
                raise InvalidEndomorphism(
                    i,
                    f"column {i} image {col} has order not dividing "
                    f"{self.group.moduli[i]}",
                )

    @classmethod
    def identity(cls, group: AbelianGroup) -> EndoMatrix:
        return cls(group, tuple(group.units()))

    @classmethod
    def zero(cls, group: AbelianGroup) -> EndoMatrix:
        return cls(group, (group.zero(),) * group.num_factors)

    def entry(self, row: int, col: int) -> int:
        return self.columns[col].residues[row]

    def apply(self, g: GroupElement) -> GroupElement:
        out = self.group.zero()
        for gi, col in zip(g.residues, self.columns):
            out = out + gi * col
        return out

    def compose(self, inner: EndoMatrix) -> EndoMatrix:
        """The map g -> self(inner(g))."""
        return EndoMatrix(self.group, tuple(self.apply(c) for c in inner.columns))


def endo_validate(group: AbelianGroup, columns: Sequence[Sequence[int]]) -> EndoMatrix:
    """Build an EndoMatrix from raw residue columns.

    Raises InvalidEndomorphism (carrying the offending column index)
    when d_i * column_i != 0, and ValueError for malformed input.
    """
    elems = tuple(group.element(c) for c in columns)
    return EndoMatrix(group, elems)


def endo_is_valid(group: AbelianGroup, columns: Sequence[Sequence[int]]) -> bool:
    try:
        endo_validate(group, columns)
    except (InvalidEndomorphism, ValueError):
        return False
    return True


def endo_dual(A: EndoMatrix) -> EndoMatrix:
    """The unique endomorphism B with chi_g(A(x)) = chi_{B(g)}(x).

    Entrywise B_kl = (d_k * A_lk) / d_l mod d_k; the division is exact
    because A is valid.
    """
    group = A.group
    d = group.moduli
    m = group.num_factors
    cols = []
    for l in range(m):
        col = []
        for k in range(m):
            num = d[k] * A.entry(l, k)
            if num % d[l] != 0:
                raise InvalidEndomorphism(k, "dual entry not integral")
            col.append((num // d[l]) % d[k])
        cols.append(group.element(col))
    return EndoMatrix(group, tuple(cols))


def auto_inverse(A: EndoMatrix) -> EndoMatrix | None:
    """Matrix of the inverse automorphism, or None when A is not invertible.

    Searches for an integer matrix B with d_j B_ij = 0 mod d_i (so B is
    a homomorphism) and B A = identity mod the row moduli. Unknowns are
    the m^2 entries of B plus slack variables absorbing both families of
    congruences; the system is linear Diophantine, and feasibility is
    exactly invertibility. The integer solution is projected entrywise
    mod d_i afterwards.
    """
    group = A.group
    d = group.moduli
    m = group.num_factors
    if m == 0:
        return EndoMatrix(group, ())

    def b_var(i, j):
        return i * m + j

    def u_var(i, j):
        return m * m + i * m + j

    def v_var(k, i):
        return 2 * m * m + k * m + i

    cols = 3 * m * m
    rows: list[list[int]] = []
    rhs: list[int] = []
    # d_j B_ij + d_i u_ij = 0: columns of B are group elements
    for i in range(m):
        for j in range(m):
            row = [0] * cols
            row[b_var(i, j)] = d[j]
            row[u_var(i, j)] = d[i]
            rows.append(row)
            rhs.append(0)
    # sum_j B_kj A_ji + d_k v_ki = delta_ki: B undoes A on each e^i
    for k in range(m):
        for i in range(m):
            row = [0] * cols
            for j in range(m):
                row[b_var(k, j)] = A.entry(j, i)
            row[v_var(k, i)] = d[k]
            rows.append(row)
            rhs.append(1 if k == i else 0)
    sol = solve_diophantine(rows, rhs)
    if sol is None:
        return None
    b_cols = []
    for j in range(m):
        col = [sol.particular[b_var(i, j)] % d[i] for i in range(m)]
        b_cols.append(group.element(col))
    return EndoMatrix(group, tuple(b_cols))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by a (possibly redundant) generating set."""

    group: AbelianGroup
    generators: tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.group != self.group:
                raise ValueError("generator belongs to a different group")


def orthogonal_subgroup(H: Subgroup) -> Subgroup:
    """Generators of {g : chi_g(h) = 1 for all h in H}.

    The condition on g is sum_j (order * h_j / d_j) g_j = 0 mod order
    for each generator h; appending slack columns with coefficient
    `order` turns it into an integer system whose kernel, projected onto
    the first m coordinates mod the moduli, generates the orthogonal.
    """
    group = H.group
    d = group.moduli
    m = group.num_factors
    gens = H.generators
    if not gens:
        return Subgroup(group, tuple(group.units()))
    order = group.order
    r = len(gens)
    rows = []
    for i, h in enumerate(gens):
        row = [order // d[j] * h.residues[j] for j in range(m)]
        row += [order if s == i else 0 for s in range(r)]
        rows.append(row)
    basis = kernel_basis(rows)
    out = []
    for vec in basis:
        g = group.element(vec[:m])
        if not g.is_zero:
            out.append(g)
    return Subgroup(group, tuple(out))


def solve_character_system(
    group: AbelianGroup,
    gens: Sequence[GroupElement],
    phases: Sequence[int],
) -> GroupElement | None:
    """Find g with chi_{h^k}(g) = exp(2*pi*i*s_k/order) for every k.

    `phases` holds the s_k as integers mod order. Returns None when the
    constraints are unsatisfiable. With no constraints, returns 0.
    """
    if len(gens) != len(phases):
        raise ValueError("constraint count mismatch")
    if not gens:
        return group.zero()
    d = group.moduli
    m = group.num_factors
    order = group.order
    r = len(gens)
    rows = []
    for i, h in enumerate(gens):
        if h.group != group:
            raise ValueError("constraint element belongs to a different group")
        row = [order // d[j] * h.residues[j] for j in range(m)]
        row += [order if s == i else 0 for s in range(r)]
        rows.append(row)
    sol = solve_diophantine(rows, [int(s) for s in phases])
    if sol is None:
        return None
    return group.element(sol.particular[:m])


def subgroup_members(
    H: Subgroup, bound: int = ENUM_BOUND
) -> frozenset[GroupElement]:
    """Exhaustive closure of the generating set (test utility)."""
    group = H.group
    if group.order > bound:
        raise ValueError(f"group order {group.order} exceeds bound {bound}")
    members = {group.zero()}
    frontier = [group.zero()]
    while frontier:
        cur = frontier.pop()
        for gen in H.generators:
            nxt = cur + gen
            if nxt not in members:
                members.add(nxt)
                frontier.append(nxt)
    return frozenset(members)


def subgroup_contains(H: Subgroup, g: GroupElement) -> bool:
    """Membership via Diophantine solvability; no enumeration."""
    group = H.group
    d = group.moduli
    m = group.num_factors
    gens = H.generators
    rows = []
    for j in range(m):
        row = [h.residues[j] for h in gens]
        row += [d[j] if s == j else 0 for s in range(m)]
        rows.append(row)
    return solve_diophantine(rows, list(g.residues)) is not None
