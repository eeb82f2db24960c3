"""Finite abelian groups in invariant-factor form, duals, and inertia data.

A group is a chain Z_{d_1} x ... x Z_{d_s} with d_1 | d_2 | ... | d_s and
every d_j >= 2 (the empty chain is the trivial group).  Characters are stored
by their exponents in the dual basis, and character values are exact
rationals mod 1 (a value a/m stands for the root of unity e^{2 pi i a/m});
no floats appear anywhere.

An inertia datum is the pair (cyclic subgroup H, distinguished generator psi
of H*), encoded by the group element g with psi(g) = 1/ord(g): these pairs
are in bijection with the nonzero elements of the group.

>>> G = FinAbGroup((2, 2))
>>> [d.generator.coords for d in enumerate_inertia(G)]
[(0, 1), (1, 0), (1, 1)]
>>> chi = G.character((1, 1))
>>> chi.pair(G.element((1, 0)))
Fraction(1, 2)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .intlinalg import quotient_invariants, rational_rank, subgroup_order


class EnumerationBoundExceeded(ValueError):
    """Raised when a brute-force enumeration would exceed its size bound."""


@dataclass(frozen=True)
class FinAbGroup:
    """Z_{d_1} x ... x Z_{d_s} with d_j >= 2 and d_j | d_{j+1}."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        d = self.invariant_factors
        if any(x < 2 for x in d):
            raise ValueError(f"invariant factors must be >= 2, got {d}")
        if any(d[j + 1] % d[j] for j in range(len(d) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {d}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(int(c) % d for c, d in zip(coords, self.invariant_factors, strict=True)))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.rank)

    def basis(self) -> list["GroupElement"]:
        return [self.element(tuple(1 if i == j else 0 for i in range(self.rank))) for j in range(self.rank)]

    def elements(self):
        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, coords)

    def character(self, exponents) -> "Character":
        return Character(self, tuple(int(a) % d for a, d in zip(exponents, self.invariant_factors, strict=True)))

    def trivial_character(self) -> "Character":
        return self.character((0,) * self.rank)

    def characters(self):
        for exps in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield Character(self, exps)

    def dual_basis(self) -> list["Character"]:
        return [self.character(tuple(1 if i == j else 0 for i in range(self.rank))) for j in range(self.rank)]

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        return self.group.element(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return lcm(*(d // gcd(a, d) for a, d in zip(self.coords, self.group.invariant_factors)), 1)

    def _require_same(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")


@dataclass(frozen=True)
class Character:
    """chi = chi_1^{a_1} ... chi_s^{a_s} in the dual basis, 0 <= a_j < d_j."""

    group: FinAbGroup
    exponents: tuple[int, ...]

    def pair(self, g: GroupElement) -> Fraction:
        """chi(g) as an exact rational mod 1, in [0, 1)."""
        if g.group != self.group:
            raise ValueError("character and element of different groups")
        val = sum(
            (Fraction(a * c, d) for a, c, d in zip(self.exponents, g.coords, self.group.invariant_factors)),
            Fraction(0),
        )
        return val % 1

    def __mul__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise ValueError("characters of different groups")
        return self.group.character(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Character":
        return self.group.character(tuple(k * a for a in self.exponents))

    def inverse(self) -> "Character":
        return self ** (-1)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        return lcm(*(d // gcd(a, d) for a, d in zip(self.exponents, self.group.invariant_factors)), 1)


@dataclass(frozen=True)
class InertiaDatum:
    """A branch datum: the cyclic subgroup <g> with the character psi, psi(g) = 1/ord(g)."""

    generator: GroupElement

    def __post_init__(self):
        if self.generator.is_zero:
            raise ValueError("inertia datum needs a nonzero generator")

    @property
    def group(self) -> FinAbGroup:
        return self.generator.group

    @property
    def m(self) -> int:
        """Order of the inertia subgroup."""
        return self.generator.order()

    def subgroup_elements(self) -> list[GroupElement]:
        return [self.generator * k for k in range(self.m)]

    def exponent_weights(self) -> tuple[int, ...]:
        """Per-basis-character weights w_j with inertia_exponent(chi) = sum a_j w_j mod m."""
        m = self.m
        return tuple(c * m // d for c, d in zip(self.generator.coords, self.group.invariant_factors))


def enumerate_inertia(group: FinAbGroup) -> list[InertiaDatum]:
    """All inertia data of the group: one per nonzero element."""
    return [InertiaDatum(g) for g in group.elements() if not g.is_zero]


def inertia_exponent(datum: InertiaDatum, chi: Character) -> int:
    """The unique e with 0 <= e < m and chi restricted to <g> equal to psi^e.

    Equivalently the numerator of chi(g) written over denominator m.
    """
    if chi.group != datum.group:
        raise ValueError("character and inertia datum of different groups")
    m = datum.m
    return sum(a * w for a, w in zip(chi.exponents, datum.exponent_weights())) % m


def pair_carry(datum: InertiaDatum, chi1: Character, chi2: Character) -> int:
    """Carry (0 or 1) when the inertia exponents of chi1 and chi2 add up."""
    return (inertia_exponent(datum, chi1) + inertia_exponent(datum, chi2)) // datum.m


def basis_carry(datum: InertiaDatum, chi: Character) -> int:
    """Floor of (sum_j a_j e_j) / m for the dual-basis exponents e_j of the datum.

    Unlike the inertia exponent this depends on the chosen basis.
    """
    if chi.group != datum.group:
        raise ValueError("character and inertia datum of different groups")
    return sum(a * w for a, w in zip(chi.exponents, datum.exponent_weights())) // datum.m


def exponent_matrix(group: FinAbGroup, inertia) -> list[list[int]]:
    """The k x s matrix of inertia exponents of the dual basis characters."""
    duals = group.dual_basis()
    return [[inertia_exponent(d, chi) for chi in duals] for d in inertia]


def is_totally_ramified(group: FinAbGroup, inertia) -> bool:
    """Whether the inertia subgroups together generate the whole group."""
    gens = [list(d.generator.coords) for d in inertia]
    return subgroup_order(list(group.invariant_factors), gens) == group.order


def has_full_exponent_rank(group: FinAbGroup, inertia) -> bool:
    """Whether the exponent matrix has rank equal to the group rank over Q.

    Total ramification guarantees this; both directions are exposed so the
    implication can be property-tested.
    """
    if not inertia:
        raise ValueError("need at least one inertia datum")
    return rational_rank(exponent_matrix(group, inertia)) == group.rank


@dataclass(frozen=True)
class Automorphism:
    """Group automorphism given by the images of the basis elements."""

    group: FinAbGroup
    images: tuple[GroupElement, ...]

    def __call__(self, g: GroupElement) -> GroupElement:
        acc = self.group.zero()
        for c, img in zip(g.coords, self.images):
            acc = acc + img * c
        return acc

    @property
    def is_identity(self) -> bool:
        return self.images == tuple(self.group.basis())


def inertia_preserving_automorphisms(group: FinAbGroup, inertia, bound: int = 512) -> list[Automorphism]:
    """All automorphisms of the group mapping the inertia set to itself.

    The induced action on inertia data is just the action on the generators.
    Brute force over basis images, so the group order is capped.
    """
    if group.order > bound:
        raise EnumerationBoundExceeded(f"group order {group.order} exceeds bound {bound}")
    gen_set = frozenset(d.generator for d in inertia)
    d = group.invariant_factors
    candidates = {dj: [g for g in group.elements() if dj % g.order() == 0] for dj in set(d)}
    moduli = list(d)
    found = []

    def extend(images):
        j = len(images)
        if j == group.rank:
            phi = Automorphism(group, tuple(images))
            if frozenset(phi(g) for g in gen_set) == gen_set:
                found.append(phi)
            return
        for b in candidates[d[j]]:
            rows = [list(x.coords) for x in images] + [list(b.coords)]
            if subgroup_order(moduli, rows) == prod(d[: j + 1]):
                extend(images + [b])

    extend([])
    return found


def character_kernel(group: FinAbGroup, characters) -> list[GroupElement]:
    """Elements on which every given character is trivial."""
    chars = list(characters)
    return [g for g in group.elements() if all(chi.pair(g) == 0 for chi in chars)]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup presented by its full element list."""

    group: FinAbGroup
    elements: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def invariant_factors(self) -> tuple[int, ...]:
        gens = [list(g.coords) for g in self.elements if not g.is_zero]
        if not gens:
            return ()
        return tuple(quotient_invariants(list(self.group.invariant_factors), gens))

    def contains(self, g: GroupElement) -> bool:
        return g in set(self.elements)

    def __str__(self):
        inv = self.invariant_factors()
        return " x ".join(f"Z{d}" for d in inv) if inv else "0"
