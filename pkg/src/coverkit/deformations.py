"""Character-decomposed deformation dimension tables and their consumers.

The equations of a cover can be perturbed by one section per admissible pair
(i, chi): the pair is admissible when chi restricted to the i-th inertia
subgroup differs from the inverse of the distinguished character, i.e. when
the inertia exponent is not m_i - 1.  section_indices enumerates them.

For a nontrivial character chi, the tangent dimension of these perturbations
is the sum over admissible i of h^0 of the class xi_i minus the eigenclass
of chi (marker-aware for degree zero).  Unknown summands make the entry
unknown; the invariant (Galois) part has no general recipe and is a plug-in.

predict_generic_automorphisms returns the subgroup of elements acting
trivially on every nonzero non-Galois summand: exactly the symmetries that
survive a generic perturbation.  This is a statement about generic members
of the deformation, not a computation of the full automorphism group of any
particular cover (special data can have extra symmetries).
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import CoverData, derive_eigenclass
from .groups import Character, Subgroup, character_kernel, inertia_exponent
from .reportfmt import qjson


def section_indices(group, inertia) -> list[tuple[int, Character]]:
    """Admissible perturbation indices (i, chi), trivial character included."""
    out = []
    for i, d in enumerate(inertia):
        for chi in group.characters():
            if inertia_exponent(d, chi) != d.m - 1:
                out.append((i, chi))
    return out


@dataclass(frozen=True)
class DeformationReport:
    cover: CoverData
    support: tuple[tuple[int, Character], ...]
    tangent: dict  # Character -> int | None, nontrivial characters only
    obstruction_lower: dict  # Character -> int | None (lower bounds)
    invariant_tangent: int | None
    invariant_obstruction: int | None
    completeness: bool
    assumptions: tuple[str, ...]
    unknown_terms: tuple[tuple[int, Character], ...]

    @property
    def galois_only(self) -> bool:
        """All known non-Galois directions vanish (and none is unknown)."""
        return all(v == 0 for v in self.tangent.values())

    @property
    def natural_deformation_dim(self) -> int | None:
        """Parameter count of all perturbation sections, branch motion included."""
        total = 0
        for i, chi in self.support:
            ec = derive_eigenclass(self.cover, chi)
            h0 = self.cover.base.riemann_roch_h0(
                self.cover.branch_classes[i] - ec.ns,
                _marker_diff(self.cover, i, ec),
            )
            if h0 is None:
                return None
            total += h0
        return total

    def to_dict(self) -> dict:
        return {
            "support_size": len(self.support),
            "tangent": {_label(chi): qjson(v) for chi, v in sorted(self.tangent.items(), key=lambda kv: kv[0].exponents)},
            "obstruction_lower_bounds": {
                _label(chi): qjson(v) for chi, v in sorted(self.obstruction_lower.items(), key=lambda kv: kv[0].exponents)
            },
            "invariant_tangent": qjson(self.invariant_tangent),
            "invariant_obstruction": qjson(self.invariant_obstruction),
            "completeness": self.completeness,
            "assumptions": list(self.assumptions),
            "galois_only": self.galois_only,
            "natural_deformation_dim": qjson(self.natural_deformation_dim),
            "unknown_terms": [[i, _label(chi)] for i, chi in self.unknown_terms],
        }


def _label(chi: Character) -> str:
    return ",".join(str(a) for a in chi.exponents) if chi.exponents else "1"


def _marker_diff(cd: CoverData, i: int, eigen):
    if not cd.has_markers:
        return None
    return cd.branch_markers[i] - eigen.marker


def tangent_table(cd: CoverData, invariant_dims=(None, None), omega_twists_assumed_ample=False) -> DeformationReport:
    """Per-character tangent and obstruction dimension table.

    invariant_dims supplies the two invariant-part dimensions (tangent,
    obstruction) when the caller knows them; there is no general recipe for
    them here.  The completeness verdict needs every nontrivial eigensheaf
    class to pass the ampleness gate; the cotangent-twist half of that
    hypothesis cannot be checked numerically and is taken on the caller's
    word through omega_twists_assumed_ample (recorded in the assumptions).
    """
    group = cd.group
    support = tuple(section_indices(group, cd.inertia))
    by_char = {}
    for i, chi in support:
        if not chi.is_trivial:
            by_char.setdefault(chi, []).append(i)
    tangent = {}
    obstruction = {}
    unknown_terms = []
    eigen_ample = True
    for chi in group.characters():
        if chi.is_trivial:
            continue
        ec = derive_eigenclass(cd, chi)
        if not cd.base.is_sufficiently_ample(ec.ns):
            eigen_ample = False
        total = 0
        known = True
        all_ample_branch = True
        for i in by_char.get(chi, []):
            cls = cd.branch_classes[i] - ec.ns
            marker = _marker_diff(cd, i, ec)
            h0 = cd.base.riemann_roch_h0(cls, marker)
            if h0 is None:
                unknown_terms.append((i, chi))
                known = False
            else:
                total += h0
            if not (cd.base.dim == 2 and cd.base.is_sufficiently_ample(cls, cd.base.canonical_class)):
                all_ample_branch = False
        tangent[chi] = total if known else None
        # vanishing gives h^1 = 0 on summands that met the ampleness margin;
        # otherwise the lower bound is unknown
        obstruction[chi] = 0 if all_ample_branch else None
    assumptions = [
        "higher cohomology assumed to vanish wherever the ampleness margin test passed",
        "obstruction entries are lower bounds (injection only)",
    ]
    if omega_twists_assumed_ample:
        assumptions.append("cotangent twists by eigensheaves asserted ample by the caller")
    completeness = eigen_ample and omega_twists_assumed_ample
    return DeformationReport(
        cover=cd,
        support=support,
        tangent=tangent,
        obstruction_lower=obstruction,
        invariant_tangent=invariant_dims[0],
        invariant_obstruction=invariant_dims[1],
        completeness=completeness,
        assumptions=tuple(assumptions),
        unknown_terms=tuple(unknown_terms),
    )


class UnknownDimensionsError(ValueError):
    """The predictor needs every non-Galois tangent dimension to be known."""


def predict_generic_automorphisms(cd: CoverData, report: DeformationReport | None = None) -> Subgroup:
    """Subgroup of group elements extending to generic perturbations.

    An element survives iff every character with a nonzero non-Galois
    tangent summand vanishes on it; the result is the kernel of those
    characters.  This bounds the generic automorphism group of the family
    from within, and deliberately says nothing about extra symmetries of
    special members.
    """
    if report is None:
        report = tangent_table(cd)
    if report.unknown_terms:
        raise UnknownDimensionsError(f"unknown tangent entries at {report.unknown_terms[:3]}")
    active = [chi for chi, dim in report.tangent.items() if dim]
    return Subgroup(cd.group, tuple(character_kernel(cd.group, active)))


@dataclass(frozen=True)
class WeightTable:
    """Exponents of the torus action on perturbation sections.

    The torus has one factor per branch divisor; the section attached to
    (j, chi) scales with exponent m_i * delta_ij - e_i(chi) in the i-th
    factor.  The section moving the j-th branch divisor itself (trivial chi)
    therefore has weight m_j concentrated in coordinate j.
    """

    cover: CoverData
    weights: dict  # (j, Character) -> tuple[int, ...]

    def weight(self, j: int, chi: Character) -> tuple[int, ...]:
        return self.weights[(j, chi)]

    def to_dict(self) -> dict:
        return {
            f"{j}|{_label(chi)}": list(w)
            for (j, chi), w in sorted(self.weights.items(), key=lambda kv: (kv[0][0], kv[0][1].exponents))
        }


def cstar_weights(cd: CoverData) -> WeightTable:
    weights = {}
    for j, chi in section_indices(cd.group, cd.inertia):
        row = tuple(
            (d.m if i == j else 0) - inertia_exponent(d, chi) for i, d in enumerate(cd.inertia)
        )
        weights[(j, chi)] = row
    return WeightTable(cd, weights)


def moduli_dimension(cd: CoverData, aut_base_dim: int | None = None):
    """Dimension of the moduli of covers with these classes, or None.

    q * #I continuous line-bundle parameters plus the projective spaces of
    branch members.  Needs every xi_i to clear the canonical margin (the
    pushforwards must be bundles); otherwise and on unknown h^0 the answer
    is None.  aut_base_dim, when given, is subtracted for the quotient
    estimate.
    """
    total = cd.base.q * len(cd.inertia)
    for xi in cd.branch_classes:
        if not cd.base.is_sufficiently_ample(xi, cd.base.canonical_class):
            return None
        h0 = cd.base.riemann_roch_h0(xi)
        if h0 is None:
            return None
        total += h0 - 1
    if aut_base_dim is not None:
        total -= aut_base_dim
    return total
