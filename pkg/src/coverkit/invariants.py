"""Numerical invariants of the cover: canonical data, Euler numbers, genus.

The canonical class of the cover pulls back from K_Y + sum_i (1 - 1/m_i) D_i,
so its top self-intersection is the group order times the self-intersection
of that class.  Euler numbers are assembled stratum by stratum: a point of
the base lying on no branch divisor has #G preimages, a general point of D_i
has #G/m_i, and a crossing of D_i and D_j has #G/(m_i m_j) -- the last count
is valid when the pair passes the smoothness audit, which the caller is
expected to have run.

chi(O) of the cover has two independent routes: Noether's identity from
(K^2, e), and the sum over characters of the Riemann-Roch Euler
characteristics of the dual eigensheaves.  Both are exposed; disagreement
means the input numerics do not describe a smooth cover.

chern_by_family_formula evaluates the printed closed-form Chern expressions
for the shared-branch-class family verbatim.  They are reproduced exactly as
printed even though they disagree with the stratified computation (see
compare_chern_variants); the stratification is this package's ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

from .base import NSClass, NumericalBase
from .covers import CoverData, derive_eigenclass
from .reportfmt import qjson


@dataclass(frozen=True)
class CoverInvariants:
    canonical_times_order: NSClass
    canonical_squared: Fraction
    euler_number: Fraction | int | None
    chi_o: Fraction | int | None
    general_type_verdict: bool

    def to_dict(self) -> dict:
        return {
            "K_times_group_order": [qjson(c) for c in self.canonical_times_order.coords],
            "K_squared": qjson(self.canonical_squared),
            "euler_number": qjson(self.euler_number),
            "chi_O": qjson(self.chi_o),
            "general_type": self.general_type_verdict,
        }


def canonical_pullback_class(cd: CoverData) -> NSClass:
    """K_Y + sum_i (1 - 1/m_i) xi_i as an exact rational class."""
    acc = cd.base.canonical_class
    for d, xi in zip(cd.inertia, cd.branch_classes):
        acc = acc + Fraction(d.m - 1, d.m) * xi
    return acc


def canonical_data(cd: CoverData) -> CoverInvariants:
    """Canonical class data of the cover (Euler/chi left to euler_stratified)."""
    cls = canonical_pullback_class(cd)
    order = cd.group.order
    k2 = None
    if cd.base.dim == 2:
        k2 = order * cls.dot(cls)
    times_order = order * cls
    if not times_order.is_integral:
        raise AssertionError("group order times the canonical class must be integral")
    return CoverInvariants(
        canonical_times_order=times_order,
        canonical_squared=k2,
        euler_number=None,
        chi_o=None,
        general_type_verdict=cd.base.is_sufficiently_ample(cls),
    )


def _as_exact(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def euler_strata(cd: CoverData, branch_euler=None, pair_points=None) -> list[dict]:
    """Per-stratum ledger behind the stratified Euler number.

    Each entry records the stratum, its Euler number downstairs, the local
    preimage count, and the contribution upstairs.  branch_euler maps
    divisor index -> Euler number of the (smooth) member; default is the
    adjunction value -xi.(xi + K).  pair_points maps an index pair -> number
    of crossing points; default xi_i . xi_j for pairs declared in the
    intersection pattern and 0 otherwise.  Patterns with triple or deeper
    intersections are outside this model.
    """
    if cd.base.dim != 2:
        raise ValueError("stratified Euler numbers are for surfaces")
    if any(len(s) > 2 for s in cd.intersection_pattern):
        raise ValueError("intersection pattern has triple points; the stratified model refuses")
    n = len(cd.inertia)
    k_y = cd.base.canonical_class
    e_branch = {}
    for i, xi in enumerate(cd.branch_classes):
        if branch_euler is not None and i in branch_euler:
            e_branch[i] = branch_euler[i]
        else:
            e_branch[i] = -xi.dot(xi + k_y)
    declared_pairs = {tuple(sorted(s)) for s in cd.intersection_pattern if len(s) == 2}
    points = {}
    for pair in declared_pairs:
        i, j = pair
        if pair_points is not None and pair in pair_points:
            points[pair] = pair_points[pair]
        else:
            points[pair] = cd.branch_classes[i].dot(cd.branch_classes[j])
    order = cd.group.order
    e_open_branch = {}
    for i in range(n):
        e_open_branch[i] = e_branch[i] - sum(points[p] for p in points if i in p)
    e_open_base = cd.base.euler - sum(e_open_branch.values()) - sum(points.values())
    strata = [
        {
            "stratum": "base minus branch divisors",
            "euler_downstairs": e_open_base,
            "preimages": order,
            "contribution": _as_exact(Fraction(order * e_open_base)),
        }
    ]
    for i, d in enumerate(cd.inertia):
        strata.append(
            {
                "stratum": f"open part of branch divisor {i}",
                "euler_downstairs": e_open_branch[i],
                "preimages": _as_exact(Fraction(order, d.m)),
                "contribution": _as_exact(Fraction(order, d.m) * e_open_branch[i]),
            }
        )
    for (i, j), cnt in sorted(points.items()):
        mm = cd.inertia[i].m * cd.inertia[j].m
        strata.append(
            {
                "stratum": f"crossings of divisors {i} and {j}",
                "euler_downstairs": cnt,
                "preimages": _as_exact(Fraction(order, mm)),
                "contribution": _as_exact(Fraction(order, mm) * cnt),
            }
        )
    return strata


def euler_stratified(cd: CoverData, branch_euler=None, pair_points=None):
    """Euler number of the cover by counting preimages stratum by stratum."""
    total = sum(Fraction(s["contribution"]) for s in euler_strata(cd, branch_euler, pair_points))
    return _as_exact(total)


def chi_by_eigensheaf_sum(cd: CoverData):
    """chi(O) of the cover as the character sum of Riemann-Roch values.

    This is exact Euler-characteristic arithmetic (no vanishing needed), so
    it serves as an independent oracle against Noether's identity.
    """
    if cd.base.dim != 2:
        raise ValueError("eigensheaf chi sum is for surfaces")
    k_y = cd.base.canonical_class
    total = Fraction(0)
    for chi in cd.group.characters():
        eta = derive_eigenclass(cd, chi).ns
        total += cd.base.chi_o + Fraction(eta.dot(eta + k_y), 2)
    return _as_exact(total)


def cover_invariants(cd: CoverData, branch_euler=None, pair_points=None) -> CoverInvariants:
    """Full invariant table; chi(O) from Noether, with K^2 and e as computed."""
    kdata = canonical_data(cd)
    e = euler_stratified(cd, branch_euler, pair_points)
    chi = _as_exact(Fraction(kdata.canonical_squared + e, 12))
    return CoverInvariants(
        canonical_times_order=kdata.canonical_times_order,
        canonical_squared=kdata.canonical_squared,
        euler_number=e,
        chi_o=chi,
        general_type_verdict=kdata.general_type_verdict,
    )


def chern_by_family_formula(d_chain, base: NumericalBase, xi: NSClass):
    """The printed closed-form (K^2, c_2) of the shared-class family, verbatim.

    d_chain is (d_1, ..., d_s); the extra index 0 carries d_0 = d_s.  Both
    values are for the whole cover (already multiplied by the group order).
    """
    if base.dim != 2:
        raise ValueError("Chern formulas are for surfaces")
    d = list(d_chain)
    s = len(d)
    if s < 2:
        raise ValueError("the family needs at least two invariant factors")
    d0 = d[-1]
    all_d = [d0] + d
    order = prod(d)
    inv_sum = sum(Fraction(1, x) for x in all_d)
    k_y = base.canonical_class
    k_class = k_y + (s - inv_sum) * xi
    k2 = order * k_class.dot(k_class)
    xik = xi.dot(k_y)
    xi2 = xi.dot(xi)
    bracket = (
        Fraction(comb(s + 2, 2))
        + inv_sum
        + sum(Fraction(1, all_d[i] * all_d[j]) for i in range(s + 1) for j in range(i + 1, s + 1))
    )
    c2 = order * (base.euler - ((s + 1) - inv_sum) * xik + bracket * xi2)
    return _as_exact(k2), _as_exact(c2)


def compare_chern_variants(d_chain, base: NumericalBase, xi: NSClass) -> dict:
    """Printed formulas vs the pullback/stratification route, side by side.

    No variant is adjudicated here; discrepancies are simply recorded.  The
    stratified Euler number is what the rest of the package trusts.
    """
    from .family import SimplexCoverFamily

    printed_k2, printed_c2 = chern_by_family_formula(d_chain, base, xi)
    fam = SimplexCoverFamily(tuple(d_chain))
    cd = fam.build_cover(base, xi)
    kdata = canonical_data(cd)
    e = euler_stratified(cd)
    return {
        "printed_K2": printed_k2,
        "printed_c2": printed_c2,
        "pullback_K2": kdata.canonical_squared,
        "stratified_c2": e,
        "K2_agree": printed_k2 == kdata.canonical_squared,
        "c2_agree": printed_c2 == e,
    }


def hurwitz_genus(g_base: int, group, inertia, branch_point_counts) -> int:
    """Genus of a cover of a curve from branch point counts.

    2g - 2 = #G (2g_Y - 2 + sum_i b_i (1 - 1/m_i)); configurations with a
    non-integral or negative genus are rejected.
    """
    if g_base < 0:
        raise ValueError("base genus must be >= 0")
    if len(branch_point_counts) != len(inertia):
        raise ValueError("need one branch point count per inertia datum")
    total = Fraction(2 * g_base - 2)
    for d, b in zip(inertia, branch_point_counts):
        if b < 0:
            raise ValueError("branch point counts must be >= 0")
        total += b * Fraction(d.m - 1, d.m)
    rhs = group.order * total
    g2 = rhs + 2
    if g2 % 2 != 0 or Fraction(g2).denominator != 1:
        raise ValueError(f"configuration gives non-integral genus: 2g - 2 = {rhs}")
    g = int(g2) // 2
    if g < 0:
        raise ValueError(f"configuration gives negative genus {g}")
    return g
