"""Cover data: branch classes, reduced classes, and their compatibility.

A cover of the base is described numerically by a finite abelian group, an
ordered set of inertia data, one lattice class per branch divisor, and one
lattice class per dual-basis character (the reduced classes).  The reduced
relations tie them together:

    ord(chi_j) * eta_j  =  sum_i rbar_ij * xi_i,

where rbar_ij = ord(chi_j) * (inertia exponent of chi_j at i) / m_i.  From
the reduced classes every eigensheaf class is recovered by the basis-carry
formula, and the pairwise fundamental relations

    eta_chi + eta_chi' = eta_{chi chi'} + sum_i carry_i(chi, chi') * xi_i

then hold identically; check_fundamental_relations re-verifies them (useful
against corrupted data).

Divisor geometry is NOT modeled: the intersection pattern records which
branch divisors are asserted to meet, and smoothness_audit only decides the
group-theoretic injectivity conditions.  Reports say so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .base import NSClass, NumericalBase, Pic0Marker
from .groups import (
    Character,
    FinAbGroup,
    InertiaDatum,
    basis_carry,
    inertia_exponent,
    is_totally_ramified,
    pair_carry,
)
from .intlinalg import subgroup_order

USER_ASSERTION_NOTE = (
    "divisor geometry (smoothness of members, transversality) is a user "
    "assertion; only the group-theoretic conditions are checked"
)


class InfeasibleReduction(ValueError):
    """The reduced system has no lattice solution; names the failing index."""

    def __init__(self, index: int, residue, message: str):
        super().__init__(message)
        self.index = index
        self.residue = residue


def reduced_exponents(group: FinAbGroup, inertia) -> list[list[int]]:
    """Matrix rbar_ij = n_j * e_ij / m_i (always integral)."""
    out = []
    for datum in inertia:
        m = datum.m
        row = []
        for chi in group.dual_basis():
            n = chi.order()
            num = n * inertia_exponent(datum, chi)
            assert num % m == 0
            row.append(num // m)
        out.append(row)
    return out


@dataclass(frozen=True)
class ReducedSolution:
    classes: tuple[NSClass, ...]
    markers: tuple[Pic0Marker, ...] | None
    torsion_candidates: int


def solve_reduced(group, inertia, base, branch_classes, branch_markers=None) -> ReducedSolution:
    """Solve the reduced relations for the eta_j over the lattice.

    The lattice solution is unique when it exists; the count of candidate
    solutions upstairs in Pic (they differ by torsion points of Pic^0) is
    reported as prod_j n_j^(2q) but not enumerated.
    """
    if not is_totally_ramified(group, inertia):
        raise ValueError("inertia data do not generate the group (not totally ramified)")
    rbar = reduced_exponents(group, inertia)
    orders = [chi.order() for chi in group.dual_basis()]
    classes = []
    markers = [] if branch_markers is not None else None
    for j, n in enumerate(orders):
        total = base.zero_class()
        for i, xi in enumerate(branch_classes):
            total = total + rbar[i][j] * xi
        coords = []
        for c in total.coords:
            val = Fraction(c, n)
            coords.append(val)
        if any(v.denominator != 1 for v in coords):
            residue = tuple(c % n for c in total.coords)
            raise InfeasibleReduction(
                j, residue, f"reduced class {j + 1}: {total} is not divisible by {n} (residue {residue})"
            )
        classes.append(base.cls(tuple(v.numerator for v in coords)))
        if markers is not None:
            msum = None
            for i, mk in enumerate(branch_markers):
                term = rbar[i][j] * mk
                msum = term if msum is None else msum + term
            if any(c % n for c in msum.coords):
                raise InfeasibleReduction(j, msum.coords, f"marker relation {j + 1} not divisible by {n}")
            markers.append(Pic0Marker(tuple(c // n for c in msum.coords)))
    torsion = prod(n ** (2 * base.q) for n in orders)
    return ReducedSolution(tuple(classes), tuple(markers) if markers is not None else None, torsion)


@dataclass(frozen=True)
class EigenClass:
    """Lattice class (and optional continuous marker) of one eigensheaf."""

    ns: NSClass
    marker: Pic0Marker | None


@dataclass(frozen=True)
class CoverData:
    group: FinAbGroup
    inertia: tuple[InertiaDatum, ...]
    base: NumericalBase
    branch_classes: tuple[NSClass, ...]
    reduced_classes: tuple[NSClass, ...]
    branch_markers: tuple[Pic0Marker, ...] | None = None
    reduced_markers: tuple[Pic0Marker, ...] | None = None
    intersection_pattern: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        g = self.group
        if len(self.inertia) != len(set(d.generator for d in self.inertia)):
            raise ValueError("inertia data must be distinct")
        if any(d.group != g for d in self.inertia):
            raise ValueError("inertia data from a different group")
        if len(self.branch_classes) != len(self.inertia):
            raise ValueError("need one branch class per inertia datum")
        if len(self.reduced_classes) != g.rank:
            raise ValueError("need one reduced class per invariant factor")
        for c in (*self.branch_classes, *self.reduced_classes):
            if c.base != self.base:
                raise ValueError("classes from a different base")
        if not is_totally_ramified(g, self.inertia):
            raise ValueError("cover is not totally ramified")
        if (self.branch_markers is None) != (self.reduced_markers is None):
            raise ValueError("markers must be given for both branch and reduced data")
        if self.branch_markers is not None:
            ranks = {m.rank for m in (*self.branch_markers, *self.reduced_markers)}
            if len(ranks) > 1:
                raise ValueError("markers of mixed ranks")
            if self.base.q < 1 and any(not m.is_zero for m in (*self.branch_markers, *self.reduced_markers)):
                raise ValueError("nonzero markers need an irregular base (q >= 1)")
        self._check_reduced_relations()
        for subset in self.intersection_pattern:
            if len(subset) != len(set(subset)):
                raise ValueError(f"repeated index in intersection pattern entry {subset}")
            if not _subset_injective(self, subset):
                raise ValueError(f"inertia subgroups of {subset} do not embed jointly (cover would be singular)")

    def _check_reduced_relations(self):
        rbar = reduced_exponents(self.group, self.inertia)
        for j, chi in enumerate(self.group.dual_basis()):
            n = chi.order()
            lhs = n * self.reduced_classes[j]
            rhs = self.base.zero_class()
            for i, xi in enumerate(self.branch_classes):
                rhs = rhs + rbar[i][j] * xi
            if lhs.coords != rhs.coords:
                raise ValueError(f"reduced relation {j + 1} fails: {lhs} != {rhs}")
            if self.reduced_markers is not None:
                lm = n * self.reduced_markers[j]
                rm = Pic0Marker.zero(self.reduced_markers[j].rank)
                for i, mk in enumerate(self.branch_markers):
                    rm = rm + rbar[i][j] * mk
                if lm != rm:
                    raise ValueError(f"reduced marker relation {j + 1} fails")

    @classmethod
    def create(
        cls,
        group,
        inertia,
        base,
        branch_classes,
        reduced_classes=None,
        branch_markers=None,
        reduced_markers=None,
        intersection_pattern=None,
    ) -> "CoverData":
        """Build cover data, solving for the reduced classes when omitted.

        The default intersection pattern declares every pair of branch
        divisors to meet (generic members of ample classes on a surface do);
        curves get the empty pattern.
        """
        inertia = tuple(inertia)
        branch_classes = tuple(branch_classes)
        if reduced_classes is None:
            sol = solve_reduced(group, inertia, base, branch_classes, branch_markers)
            reduced_classes = sol.classes
            if branch_markers is not None and reduced_markers is None:
                reduced_markers = sol.markers
        if intersection_pattern is None:
            if base.dim >= 2:
                intersection_pattern = tuple(itertools.combinations(range(len(inertia)), 2))
            else:
                intersection_pattern = ()
        return cls(
            group=group,
            inertia=inertia,
            base=base,
            branch_classes=branch_classes,
            reduced_classes=tuple(reduced_classes),
            branch_markers=tuple(branch_markers) if branch_markers is not None else None,
            reduced_markers=tuple(reduced_markers) if reduced_markers is not None else None,
            intersection_pattern=tuple(tuple(s) for s in intersection_pattern),
        )

    @property
    def has_markers(self) -> bool:
        return self.branch_markers is not None

    def orders(self) -> list[int]:
        return [d.m for d in self.inertia]


def derive_eigenclass(cd: CoverData, chi: Character) -> EigenClass:
    """Class (and marker) of the eigensheaf of chi, from the reduced data."""
    if chi.group != cd.group:
        raise ValueError("character from a different group")
    total = cd.base.zero_class()
    for a, eta in zip(chi.exponents, cd.reduced_classes):
        total = total + a * eta
    carries = [basis_carry(d, chi) for d in cd.inertia]
    for q, xi in zip(carries, cd.branch_classes):
        total = total - q * xi
    marker = None
    if cd.has_markers:
        marker = Pic0Marker.zero(cd.reduced_markers[0].rank)
        for a, mk in zip(chi.exponents, cd.reduced_markers):
            marker = marker + a * mk
        for q, mk in zip(carries, cd.branch_markers):
            marker = marker - q * mk
    return EigenClass(total, marker)


def fundamental_relation_witness(cd: CoverData):
    """First pair (chi, chi') violating the pairwise relations, or None."""
    nontrivial = [chi for chi in cd.group.characters() if not chi.is_trivial]
    eigen = {chi: derive_eigenclass(cd, chi) for chi in cd.group.characters()}
    for c1, c2 in itertools.combinations_with_replacement(nontrivial, 2):
        lhs = eigen[c1].ns + eigen[c2].ns
        rhs = eigen[c1 * c2].ns
        for d, xi in zip(cd.inertia, cd.branch_classes):
            rhs = rhs + pair_carry(d, c1, c2) * xi
        if lhs.coords != rhs.coords:
            return (c1, c2)
        if cd.has_markers:
            lm = eigen[c1].marker + eigen[c2].marker
            rm = eigen[c1 * c2].marker
            for d, mk in zip(cd.inertia, cd.branch_markers):
                rm = rm + pair_carry(d, c1, c2) * mk
            if lm != rm:
                return (c1, c2)
    return None


def check_fundamental_relations(cd: CoverData) -> bool:
    return fundamental_relation_witness(cd) is None


def _subset_injective(cd: CoverData, subset) -> bool:
    gens = [list(cd.inertia[i].generator.coords) for i in subset]
    order = subgroup_order(list(cd.group.invariant_factors), gens)
    return order == prod(cd.inertia[i].m for i in subset)


@dataclass(frozen=True)
class SmoothnessReport:
    entries: tuple  # (subset, product of orders, generated order, injective)
    maximal_injective: tuple[tuple[int, ...], ...] | None
    notes: tuple[str, ...]

    @property
    def all_injective(self) -> bool:
        return all(e[3] for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"subset": list(s), "order_product": p, "generated_order": o, "injective": ok}
                for s, p, o, ok in self.entries
            ],
            "maximal_injective": [list(s) for s in self.maximal_injective]
            if self.maximal_injective is not None
            else None,
            "notes": list(self.notes),
            "all_injective": self.all_injective,
        }


def smoothness_audit(cd: CoverData, pattern=None, scan_limit: int = 14) -> SmoothnessReport:
    """Injectivity audit of joint inertia maps.

    Checks every subset of the (given or declared) intersection pattern and,
    when the number of branch divisors is small enough, also scans all
    subsets to report the maximal ones that may meet simultaneously.
    Failure of a subset is inherited by supersets, so the scan prunes.
    """
    if pattern is None:
        pattern = cd.intersection_pattern
    entries = []
    for subset in pattern:
        p = prod(cd.inertia[i].m for i in subset)
        gens = [list(cd.inertia[i].generator.coords) for i in subset]
        o = subgroup_order(list(cd.group.invariant_factors), gens)
        entries.append((tuple(subset), p, o, p == o))
    maximal = None
    if len(cd.inertia) <= scan_limit:
        injective = {(): True}
        for size in range(1, len(cd.inertia) + 1):
            for subset in itertools.combinations(range(len(cd.inertia)), size):
                if all(injective.get(subset[:k] + subset[k + 1 :], False) for k in range(size)):
                    injective[subset] = _subset_injective(cd, subset)
                else:
                    injective[subset] = False
        good = [s for s, ok in injective.items() if ok and s]
        maximal = tuple(s for s in good if not any(set(s) < set(t) for t in good))
    return SmoothnessReport(tuple(entries), maximal, (USER_ASSERTION_NOTE,))


@dataclass(frozen=True)
class AmplenessHypotheses:
    """Numerical gate for the generic-automorphism theorem.

    The adjoint test class is K + sum (1 - 1/m_i) xi_i shifted down by
    (m-1)*N times the hyperplane; base-point freeness of xi - m*N*H is only
    proxied by positivity against the test classes (necessary, not
    sufficient, and reported as such).
    """

    adjoint_class: NSClass
    adjoint_ample: bool
    mobile_class: NSClass
    mobile_positive: bool
    notes: tuple[str, ...]

    @property
    def plausible(self) -> bool:
        return self.adjoint_ample and self.mobile_positive

    def to_dict(self) -> dict:
        from .reportfmt import qstr

        return {
            "adjoint_class": [qstr(c) for c in self.adjoint_class.coords],
            "adjoint_ample": self.adjoint_ample,
            "mobile_class": [qstr(c) for c in self.mobile_class.coords],
            "mobile_positive": self.mobile_positive,
            "plausible": self.plausible,
            "notes": list(self.notes),
        }


def generic_aut_hypotheses(cd: CoverData, hyperplane: NSClass, n_steps: int, distinguished: int = 0) -> AmplenessHypotheses:
    """Evaluate the ampleness/positivity hypotheses for a distinguished divisor."""
    m1 = cd.inertia[distinguished].m
    adjoint = cd.base.canonical_class - (m1 - 1) * n_steps * hyperplane
    for d, xi in zip(cd.inertia, cd.branch_classes):
        adjoint = adjoint + Fraction(d.m - 1, d.m) * xi
    mobile = cd.branch_classes[distinguished] - m1 * n_steps * hyperplane
    mobile_positive = all(cd.base.pairing(mobile, cd.base.cls(t)) > 0 for t in cd.base.ample_tests)
    notes = (
        "base-point freeness is proxied by positivity (necessary, not sufficient)",
        USER_ASSERTION_NOTE,
    )
    return AmplenessHypotheses(adjoint, cd.base.is_sufficiently_ample(adjoint), mobile, mobile_positive, notes)
