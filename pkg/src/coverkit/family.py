"""The simplex family of covers and its moduli-component classifier.

For a divisibility chain d_1 | ... | d_s (s >= 2) take the product group
with basis e_1, ..., e_s and add the extra generator e_0 = -(e_1 + ... + e_s),
of order d_0 = d_s.  The s + 1 cyclic subgroups <e_i> are the inertia data of
a totally ramified cover whose branch classes are all equal to one ample
class xi; the continuous parts are markers F_j on the reduced classes, with
branch divisor j carrying d_j * F_j and divisor 0 carrying none.

The eigenclass of a character with exponents (a_1, ..., a_s) works out to
N * xi plus sum a_j F_j, where the twist degree N = ceil(sum a_j b_j / d_0)
and b_j = d_0 / d_j.  Only characters with twist degree 1 can support
non-Galois perturbations, and whether they do is exact marker linear
algebra: the summand at (i, chi) is nonzero iff sum_j a_j F_j = d_i F_i.

classify_components runs the tangent-table predictor over the marker loci
"first k markers independent, the rest zero" and returns the predicted
generic symmetry group for each k: the chain of subgroups Z_{d_1} x ... x
Z_{d_k}.  When d_0 = 2 the top proper locus (k = s - 1) supports no breaking
direction at all there; the classifier instead uses the locus F_s = -F_k,
where the diagonal character in the k-th and s-th dual generators acquires a
section and still excludes everything outside a subgroup of the right order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base import NSClass, NumericalBase, Pic0Marker
from .covers import CoverData
from .deformations import predict_generic_automorphisms, tangent_table
from .groups import Character, FinAbGroup, InertiaDatum, Subgroup, inertia_exponent
from .intlinalg import subgroup_order
from .invariants import canonical_data, chern_by_family_formula, euler_stratified
from .reportfmt import qjson


@dataclass(frozen=True)
class SimplexCoverFamily:
    """Parameters d_1 | ... | d_s plus the derived index-0 data."""

    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if len(self.d) < 2:
            raise ValueError("need at least two invariant factors")
        FinAbGroup(self.d)  # validates the chain

    @property
    def s(self) -> int:
        return len(self.d)

    @property
    def d0(self) -> int:
        return self.d[-1]

    @property
    def cofactors(self) -> tuple[int, ...]:
        """b_j with b_j * d_j = d_0."""
        return tuple(self.d0 // dj for dj in self.d)

    @property
    def group(self) -> FinAbGroup:
        return FinAbGroup(self.d)

    def inertia(self) -> list[InertiaDatum]:
        """Index 0 carries -(e_1 + ... + e_s); indices 1..s the basis."""
        g = self.group
        e0 = g.zero()
        for e in g.basis():
            e0 = e0 - e
        return [InertiaDatum(e0)] + [InertiaDatum(e) for e in g.basis()]

    def exponent_table(self) -> list[list[int]]:
        """Inertia exponents of the dual basis: delta_ij for i >= 1, b_j (d_j - 1) at i = 0."""
        g = self.group
        data = self.inertia()
        return [[inertia_exponent(d, chi) for chi in g.dual_basis()] for d in data]

    def twist_degree(self, chi: Character) -> int:
        """Exponent of the shared class in the eigenclass of chi.

        Zero exactly for the trivial character; one exactly when
        sum a_j b_j <= d_0 (and chi is nontrivial).
        """
        num = sum(a * b for a, b in zip(chi.exponents, self.cofactors))
        return -((-num) // self.d0)

    def build_cover(self, base: NumericalBase, xi: NSClass, markers=None) -> CoverData:
        """Cover data over the given base with every branch class equal to xi.

        markers, when given, lists F_1, ..., F_s; branch divisor j then
        carries the marker d_j F_j and divisor 0 stays marker-free.  With an
        ample xi the construction is feasible by design.

        The declared intersection pattern keeps only the pairs whose inertia
        subgroups embed jointly; the other pairs must be geometrically
        disjoint in any smooth realization (for mixed chains on a surface
        that is a real constraint, recorded here as an assertion).
        """
        if not base.is_sufficiently_ample(xi):
            raise ValueError("the shared branch class must pass the ampleness gate")
        data = self.inertia()
        branch = [xi] * (self.s + 1)
        branch_markers = None
        reduced_markers = None
        if markers is not None:
            markers = list(markers)
            if len(markers) != self.s:
                raise ValueError(f"need {self.s} markers")
            rank = markers[0].rank
            branch_markers = [Pic0Marker.zero(rank)] + [dj * f for dj, f in zip(self.d, markers)]
            reduced_markers = markers
        moduli = list(self.group.invariant_factors)
        pattern = []
        if base.dim >= 2:
            for i in range(len(data)):
                for j in range(i + 1, len(data)):
                    gens = [list(data[i].generator.coords), list(data[j].generator.coords)]
                    if subgroup_order(moduli, gens) == data[i].m * data[j].m:
                        pattern.append((i, j))
        return CoverData.create(
            self.group,
            self.inertia(),
            base,
            branch,
            reduced_classes=[xi] * self.s,
            branch_markers=branch_markers,
            reduced_markers=reduced_markers,
            intersection_pattern=pattern,
        )

    def marker_locus(self, k: int) -> list[Pic0Marker]:
        """Markers for the k-th component locus: F_1..F_k independent, rest zero.

        In the d_0 = 2 family the k = s - 1 locus is special: all its
        perturbations would be Galois, so the classifier uses F_s = -F_k
        instead, which frees exactly one diagonal breaking direction.
        """
        if not 0 <= k <= self.s:
            raise ValueError(f"k must lie in 0..{self.s}")
        markers = [Pic0Marker.unit(self.s, j) if j < k else Pic0Marker.zero(self.s) for j in range(self.s)]
        if self.d0 == 2 and k == self.s - 1 and k >= 1:
            markers[self.s - 1] = -markers[k - 1]
        return markers


@dataclass(frozen=True)
class ComponentPrediction:
    k: int
    markers: tuple[Pic0Marker, ...]
    predicted: Subgroup

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "markers": [list(m.coords) for m in self.markers],
            "predicted_order": self.predicted.order,
            "predicted_group": str(self.predicted),
        }


def classify_components(family: SimplexCoverFamily, base: NumericalBase, xi: NSClass) -> list[ComponentPrediction]:
    """Predicted generic symmetry group on each marker locus k = 0..s.

    Requires an irregular base (q >= 1): without continuous line-bundle
    parameters the marker loci collapse and nothing is claimed.
    """
    if base.q < 1:
        raise ValueError("component classification needs an irregular base (q >= 1)")
    out = []
    for k in range(family.s + 1):
        markers = family.marker_locus(k)
        cd = family.build_cover(base, xi, markers)
        predicted = predict_generic_automorphisms(cd, tangent_table(cd))
        out.append(ComponentPrediction(k, tuple(markers), predicted))
    return out


@dataclass(frozen=True)
class SymmetryBoundReport:
    """Generic-symmetry order of the square family against its Chern size."""

    n: int
    predicted_order: int
    k2_printed: Fraction | int
    k2_pullback: Fraction | int
    k2_quoted: int
    stratified_c2: Fraction | int
    bound_holds_quoted: bool
    bound_holds_printed: bool
    bound_holds_pullback: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "predicted_order": self.predicted_order,
            "K2_printed_formula": qjson(self.k2_printed),
            "K2_pullback_formula": qjson(self.k2_pullback),
            "K2_quoted": self.k2_quoted,
            "stratified_c2": qjson(self.stratified_c2),
            "order_exceeds_sixteenth_of_quoted": self.bound_holds_quoted,
            "order_exceeds_sixteenth_of_printed": self.bound_holds_printed,
            "order_exceeds_sixteenth_of_pullback": self.bound_holds_pullback,
        }


def symmetry_bound_report(n: int) -> SymmetryBoundReport:
    """The s = 2, d = (n, n) family over the polarized abelian surface.

    Generic markers force every perturbation to be Galois, so the predicted
    symmetry order is n^2.  The canonical degree comes out differently from
    the printed formula, the pullback formula, and the quoted value
    16 (n-1)^2; all three are reported, and the n^2 > 2^-4 * quoted bound is
    evaluated against each.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    base = NumericalBase.preset("abelian_pp")
    xi = base.cls((2,))
    family = SimplexCoverFamily((n, n))
    cd = family.build_cover(base, xi, family.marker_locus(2))
    predicted = predict_generic_automorphisms(cd, tangent_table(cd))
    k2_printed, _ = chern_by_family_formula(family.d, base, xi)
    k2_pullback = canonical_data(cd).canonical_squared
    e = euler_stratified(cd)
    quoted = 16 * (n - 1) ** 2
    order = predicted.order
    return SymmetryBoundReport(
        n=n,
        predicted_order=order,
        k2_printed=k2_printed,
        k2_pullback=k2_pullback,
        k2_quoted=quoted,
        stratified_c2=e,
        bound_holds_quoted=order > Fraction(quoted, 16),
        bound_holds_printed=order > Fraction(k2_printed, 16),
        bound_holds_pullback=order > Fraction(k2_pullback, 16),
    )
