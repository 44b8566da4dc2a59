"""Dense state-vector brute force for desk-scale verification.

Everything here is deliberately small and floating-point: states are
full complex vectors indexed by group elements in lexicographic order,
gates act as explicit matrices or permutations, and agreement with the
exact engine is judged against tolerances. The exactness claims live in
the engine; this module only needs to discriminate at small orders,
where support probabilities are at least 1/order, far above tolerance.

Also home to the affine-permutation tester: a permutation F of the
group either equals g -> alpha(g) + t for an automorphism alpha (and
the tester reconstructs alpha and t), or a concrete counterexample
element is produced. Modular exponentiation permutations are built in
as a parametrized family because they are the canonical non-affine
case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .engine import (
    AutomorphismGate,
    CosetInput,
    FourierGate,
    Gate,
    PauliGate,
    QuadraticGate,
    conjugate_circuit,
    init_stabilizer,
    simulate,
)
from .groups import AbelianGroup, GroupElement, character_exponent
from .homs import (
    EndoMatrix,
    InvalidEndomorphism,
    Subgroup,
    auto_inverse,
    subgroup_members,
)
from .pauli import PauliLabel
from .quadratic import quad_eval

DENSE_BOUND = 4096
TOL = 1e-9
NORM_TOL = 1e-12


class BoundExceeded(ValueError):
    """Group order too large for dense verification."""


def _check_bound(group: AbelianGroup, bound: int):
    if group.order > bound:
        raise BoundExceeded(
            f"group order {group.order} exceeds dense bound {bound}"
        )


def _gamma_power(group: AbelianGroup, a: int) -> complex:
    return np.exp(1j * np.pi * a / group.order)


@dataclass
class DenseState:
    group: AbelianGroup
    vector: np.ndarray  # complex128, length = group order, lex order

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))


def coset_state(coset: CosetInput, bound: int = DENSE_BOUND) -> DenseState:
    _check_bound(coset.group, bound)
    group = coset.group
    members = subgroup_members(Subgroup(group, coset.generators), bound)
    vec = np.zeros(group.order, dtype=np.complex128)
    amp = 1.0 / np.sqrt(len(members))
    for k in members:
        vec[group.index_of(k + coset.shift)] = amp
    return DenseState(group, vec)


def basis_state(group: AbelianGroup, g: GroupElement) -> DenseState:
    vec = np.zeros(group.order, dtype=np.complex128)
    vec[group.index_of(g)] = 1.0
    return DenseState(group, vec)


def apply_gate(state: DenseState, gate: Gate) -> DenseState:
    group = state.group
    if isinstance(gate, FourierGate):
        shaped = state.vector.reshape(group.moduli)
        for axis in gate.targets:
            d = group.moduli[axis]
            grid = np.outer(np.arange(d), np.arange(d))
            f = np.exp(2j * np.pi * grid / d) / np.sqrt(d)
            if gate.inverse:
                f = f.conj()
            shaped = np.moveaxis(
                np.tensordot(f, shaped, axes=([1], [axis])), 0, axis
            )
        out = shaped.reshape(group.order)
    elif isinstance(gate, AutomorphismGate):
        out = np.zeros_like(state.vector)
        for g in group.elements():
            out[group.index_of(gate.matrix.apply(g))] = state.vector[
                group.index_of(g)
            ]
    elif isinstance(gate, QuadraticGate):
        phases = np.array(
            [
                _gamma_power(group, quad_eval(gate.encoding, g).value)
                for g in group.elements()
            ]
        )
        out = state.vector * phases
    elif isinstance(gate, PauliGate):
        return apply_pauli(state, gate.label)
    else:
        raise TypeError(f"unknown gate {gate!r}")
    result = DenseState(group, out)
    if abs(result.norm() - 1.0) > NORM_TOL and abs(state.norm() - 1.0) <= NORM_TOL:
        raise AssertionError("gate application broke normalization")
    return result


def apply_pauli(state: DenseState, label: PauliLabel) -> DenseState:
    group = state.group
    out = np.zeros_like(state.vector)
    for k in group.elements():
        target = k + label.x_part
        a = label.phase.value + character_exponent(label.z_part, target)
        out[group.index_of(target)] += _gamma_power(group, a) * state.vector[
            group.index_of(k)
        ]
    return DenseState(group, out)


def apply_circuit(
    state: DenseState, gates: Sequence[Gate]
) -> DenseState:
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def gate_matrix(gate: Gate, bound: int = DENSE_BOUND) -> np.ndarray:
    """Explicit unitary, one basis column at a time."""
    group = gate.group
    _check_bound(group, bound)
    n = group.order
    mat = np.zeros((n, n), dtype=np.complex128)
    for j, g in enumerate(group.elements()):
        mat[:, j] = apply_gate(basis_state(group, g), gate).vector
    return mat


def pauli_matrix(label: PauliLabel, bound: int = DENSE_BOUND) -> np.ndarray:
    group = label.group
    _check_bound(group, bound)
    n = group.order
    mat = np.zeros((n, n), dtype=np.complex128)
    for j, g in enumerate(group.elements()):
        mat[:, j] = apply_pauli(basis_state(group, g), label).vector
    return mat


def dense_distribution(state: DenseState) -> dict[GroupElement, float]:
    probs = np.abs(state.vector) ** 2
    return {
        g: float(probs[i])
        for i, g in enumerate(state.group.elements())
    }


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    support_matches: bool
    max_uniform_dev: float
    engine_support_size: int
    dense_support_size: int

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict}: support "
            f"{'matches' if self.support_matches else 'differs'} "
            f"(engine {self.engine_support_size}, dense "
            f"{self.dense_support_size}), max probability deviation "
            f"{self.max_uniform_dev:.3e}"
        )


def compare_with_engine(
    coset: CosetInput,
    gates: Sequence[Gate],
    tol: float = TOL,
    bound: int = DENSE_BOUND,
) -> VerifyReport:
    """Engine support and uniformity versus the dense state, at small order."""
    group = coset.group
    _check_bound(group, bound)
    dist = simulate(coset, gates)
    state = apply_circuit(coset_state(coset, bound), gates)
    probs = dense_distribution(state)
    dense_support = {g for g, p in probs.items() if p > tol}
    engine_support = dist.members(bound)
    support_matches = dense_support == engine_support
    expected = 1.0 / len(engine_support)
    max_dev = max(
        (abs(probs[g] - expected) for g in engine_support), default=0.0
    )
    return VerifyReport(
        passed=support_matches and max_dev < tol,
        support_matches=support_matches,
        max_uniform_dev=max_dev,
        engine_support_size=len(engine_support),
        dense_support_size=len(dense_support),
    )


def eigenvector_check(
    coset: CosetInput,
    gates: Sequence[Gate],
    tol: float = TOL,
    bound: int = DENSE_BOUND,
    labels: Sequence[PauliLabel] | None = None,
) -> bool:
    """Is the dense output state fixed by every conjugated stabilizer label?

    Passing explicit labels overrides the engine-computed conjugation
    (useful as a negative control).
    """
    _check_bound(coset.group, bound)
    if labels is None:
        labels = conjugate_circuit(init_stabilizer(coset), gates)
    state = apply_circuit(coset_state(coset, bound), gates)
    for label in labels:
        moved = apply_pauli(state, label)
        if np.max(np.abs(moved.vector - state.vector)) > tol:
            return False
    return True


@dataclass(frozen=True)
class PermutationSpec:
    """An explicit bijection of the group, stored by element index."""

    group: AbelianGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.images) != self.group.order:
            raise ValueError("permutation table has wrong size")
        if len(set(self.images)) != self.group.order:
            raise ValueError("permutation table is not a bijection")

    def apply(self, g: GroupElement) -> GroupElement:
        return self.images[self.group.index_of(g)]

    @classmethod
    def from_callable(
        cls,
        group: AbelianGroup,
        fn: Callable[[GroupElement], GroupElement],
        bound: int = DENSE_BOUND,
    ) -> PermutationSpec:
        _check_bound(group, bound)
        return cls(group, tuple(fn(g) for g in group.elements()))


def modexp_permutation(a: int, m: int, n: int) -> PermutationSpec:
    """(x, y) -> (x, y + a^x mod n) on Z_{2^m} x Z_n."""
    group = AbelianGroup((2**m, n))

    def fn(g: GroupElement) -> GroupElement:
        x, y = g.residues
        return group.element((x, y + pow(a, x, n)))

    return PermutationSpec.from_callable(group, fn)


@dataclass(frozen=True)
class AffineTestResult:
    is_affine: bool
    matrix: EndoMatrix | None = None
    shift: GroupElement | None = None
    witness: GroupElement | None = None
    detail: str = ""

    def __str__(self):
        if self.is_affine:
            cols = " ".join(str(c) for c in self.matrix.columns)
            return f"affine cols=[{cols}] shift={self.shift}"
        return f"not_affine witness={self.witness} ({self.detail})"


def affine_test(spec: PermutationSpec, bound: int = DENSE_BOUND) -> AffineTestResult:
    """Decide whether F(g) = alpha(g) + t for some automorphism alpha.

    The only candidates are t = F(0) and alpha(e^i) = F(e^i) - t. If
    those columns are not a homomorphism, some unit increment of F is
    inconsistent and the element where that happens is the witness;
    otherwise F is compared against the candidate everywhere.
    """
    _check_bound(spec.group, bound)
    group = spec.group
    t = spec.apply(group.zero())
    cols = tuple(spec.apply(e) - t for e in group.units())
    try:
        candidate = EndoMatrix(group, cols)
    except InvalidEndomorphism as err:
        i = err.column
        for g in group.elements():
            if spec.apply(g + group.unit(i)) - spec.apply(g) != cols[i]:
                return AffineTestResult(
                    is_affine=False,
                    witness=g,
                    detail=(
                        f"increment by e^{i} at {g} breaks the candidate "
                        f"column {cols[i]}"
                    ),
                )
        raise AssertionError(
            "invalid columns but all increments consistent"
        )  # mathematically unreachable
    for g in group.elements():
        if spec.apply(g) != candidate.apply(g) + t:
            return AffineTestResult(
                is_affine=False,
                witness=g,
                detail=f"F({g}) = {spec.apply(g)} but candidate gives "
                f"{candidate.apply(g) + t}",
            )
    assert auto_inverse(candidate) is not None, "bijection forces invertibility"
    return AffineTestResult(is_affine=True, matrix=candidate, shift=t)
