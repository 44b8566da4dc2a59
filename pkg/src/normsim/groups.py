"""Exact arithmetic for finite Abelian groups Z_d1 x ... x Z_dm.

A group is an ordered tuple of cyclic moduli and an element is a tuple
of residues. Every phase used by the simulator is an integer power of
gamma = exp(i*pi/order), so phases are tracked as exact integers modulo
2*order; floating point never enters the core arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

# Default ceiling for test utilities that enumerate the whole group.
ENUM_BOUND = 1 << 20


class GroupMismatchError(ValueError):
    """Operands belong to different groups."""


@dataclass(frozen=True)
class AbelianGroup:
    """A finite Abelian group presented as a product of cyclic factors.

    Args:
        moduli: the cyclic orders (d_1, ..., d_m). External input must
            use d_i >= 2; internally a factor of order 1 is tolerated.
    """

    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(d) for d in self.moduli)
        if any(d < 1 for d in mods):
            raise ValueError(f"moduli must be positive, got {mods}")
        object.__setattr__(self, "moduli", mods)

    @cached_property
    def order(self) -> int:
        n = 1
        for d in self.moduli:
            n *= d
        return n

    @property
    def phase_modulus(self) -> int:
        """Modulus 2*order of the exponent group for gamma powers."""
        return 2 * self.order

    @property
    def num_factors(self) -> int:
        return len(self.moduli)

    def element(self, residues: Sequence[int]) -> GroupElement:
        """Build an element, reducing arbitrary integers componentwise."""
        if len(residues) != len(self.moduli):
            raise ValueError(
                f"expected {len(self.moduli)} residues, got {len(residues)}"
            )
        return GroupElement(
            self, tuple(int(r) % d for r, d in zip(residues, self.moduli))
        )

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def unit(self, i: int) -> GroupElement:
        """The generator e^i of the i-th cyclic factor (0-based)."""
        res = [0] * len(self.moduli)
        res[i] = 1 % self.moduli[i]
        return GroupElement(self, tuple(res))

    def units(self) -> list[GroupElement]:
        return [self.unit(i) for i in range(len(self.moduli))]

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order, first residue most significant."""
        for combo in itertools.product(*(range(d) for d in self.moduli)):
            yield GroupElement(self, combo)

    def index_of(self, g: GroupElement) -> int:
        """Mixed-radix rank of g under the elements() ordering."""
        idx = 0
        for d, r in zip(self.moduli, g.residues):
            idx = idx * d + r
        return idx

    def element_at(self, index: int) -> GroupElement:
        res = []
        for d in reversed(self.moduli):
            res.append(index % d)
            index //= d
        return GroupElement(self, tuple(reversed(res)))

    def __str__(self):
        return "x".join(f"Z{d}" for d in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup, stored as reduced residues."""

    group: AbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.group.moduli):
            raise ValueError("residue count does not match group")
        for r, d in zip(self.residues, self.group.moduli):
            if not 0 <= r < d:
                raise ValueError(f"residue {r} out of range for modulus {d}")

    def _require_same_group(self, other: GroupElement):
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {self.group} and {other.group} do not mix"
            )

    def __add__(self, other: GroupElement) -> GroupElement:
        self._require_same_group(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % d
                for a, b, d in zip(self.residues, other.residues, self.group.moduli)
            ),
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._require_same_group(other)
        return GroupElement(
            self.group,
            tuple(
                (a - b) % d
                for a, b, d in zip(self.residues, other.residues, self.group.moduli)
            ),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group,
            tuple((-a) % d for a, d in zip(self.residues, self.group.moduli)),
        )

    def __rmul__(self, n: int) -> GroupElement:
        # n may be any integer, including negative
        return GroupElement(
            self.group,
            tuple((n * a) % d for a, d in zip(self.residues, self.group.moduli)),
        )

    @property
    def is_zero(self) -> bool:
        return all(r == 0 for r in self.residues)

    def __str__(self):
        return "(" + ",".join(str(r) for r in self.residues) + ")"


@dataclass(frozen=True)
class PhaseExponent:
    """An exact phase gamma^value with gamma = exp(i*pi/order).

    The exponent is reduced modulo 2*order; multiplying phases adds
    exponents. This is the only place a complex number is ever produced,
    and only on explicit request.
    """

    group: AbelianGroup
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.group.phase_modulus)

    def __add__(self, other: PhaseExponent) -> PhaseExponent:
        if self.group != other.group:
            raise GroupMismatchError("phase exponents over different groups")
        return PhaseExponent(self.group, self.value + other.value)

    def __neg__(self) -> PhaseExponent:
        return PhaseExponent(self.group, -self.value)

    def __sub__(self, other: PhaseExponent) -> PhaseExponent:
        return self + (-other)

    def times(self, n: int) -> PhaseExponent:
        return PhaseExponent(self.group, n * self.value)

    @property
    def is_even(self) -> bool:
        return self.value % 2 == 0

    def to_complex(self) -> complex:
        """Float bridge for the dense verifier; not used by the core."""
        import cmath

        return cmath.exp(1j * cmath.pi * self.value / self.group.order)


def character_exponent(g: GroupElement, h: GroupElement) -> int:
    """Exponent a with gamma^a = chi_g(h), as a plain integer.

    chi_g(h) = exp(2*pi*i * sum_i g_i h_i / d_i), hence
    a = sum_i (2*order/d_i) * g_i * h_i mod 2*order, always even.
    """
    g._require_same_group(h)
    group = g.group
    two_g = group.phase_modulus
    a = 0
    for d, gi, hi in zip(group.moduli, g.residues, h.residues):
        a += (two_g // d) * gi * hi
    return a % two_g


def character_eval(g: GroupElement, h: GroupElement) -> PhaseExponent:
    """The character chi_g evaluated at h, as an exact phase."""
    return PhaseExponent(g.group, character_exponent(g, h))


def character_sum_is_zero(g: GroupElement, bound: int = ENUM_BOUND) -> bool:
    """Decide exactly whether sum over h of chi_g(h) vanishes.

    Test utility with an enumeration bound. The sum factors over the
    cyclic coordinates; coordinate i contributes the multiset of roots
    exp(2*pi*i * (g_i*k mod d_i) / d_i) for k = 0..d_i-1, which covers a
    cyclic subgroup of the d_i-th roots of unity with uniform
    multiplicity. A full set of t-th roots of unity sums to zero exactly
    when t > 1 (sum of roots of x^t - 1), so the product vanishes iff
    some coordinate's support has more than one point.
    """
    group = g.group
    if group.order > bound:
        raise ValueError(f"group order {group.order} exceeds bound {bound}")
    for d, gi in zip(group.moduli, g.residues):
        support = {gi * k % d for k in range(d)}
        if len(support) > 1:
            return True
    return False
