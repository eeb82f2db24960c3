"""Defining relations of the cover inside the total space of its eigensheaves.

One coordinate z_chi per character, with the trivial coordinate normalized
to the constant 1 (a convention, flagged in every emitted header); one
parameter s_{i,chi} per admissible perturbation index.  For every unordered
pair of nontrivial characters there is one relation

    z_chi * z_chi'  -  z_{chi chi'} * prod_i tau_i^{carry_i(chi, chi')},

with tau_i the universal branch section sum_{(i,mu)} s_{i,mu} z_mu.  Setting
every parameter with nontrivial character to zero (the --galois flag at the
command line) leaves the classical monomial presentation of the cover.

The relations are multihomogeneous for the character grading deg z_chi =
chi, deg s_{i,mu} = -mu: every monomial of the (chi, chi') relation has
degree chi * chi'.  Tests verify this on the expanded monomials.

Emission is deterministic: characters are ordered by their exponent tuples
and every flavor renders the same relation list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .covers import CoverData
from .deformations import section_indices
from .groups import Character, FinAbGroup, pair_carry

FLAVORS = ("plain", "singular", "macaulay2")

_COMMENT = {"plain": "#", "singular": "//", "macaulay2": "--"}


class SystemSizeExceeded(ValueError):
    """Raised when a solve would exceed the supported group order."""


@dataclass(frozen=True)
class Relation:
    chi1: Character
    chi2: Character
    product: Character
    carries: tuple[int, ...]


@dataclass(frozen=True)
class RelationSystem:
    group: FinAbGroup
    inertia: tuple
    support: tuple  # (i, Character) pairs indexing the parameters
    relations: tuple[Relation, ...]

    @classmethod
    def build(cls, group: FinAbGroup, inertia) -> "RelationSystem":
        inertia = tuple(inertia)
        support = tuple(section_indices(group, inertia))
        nontrivial = sorted(
            (chi for chi in group.characters() if not chi.is_trivial), key=lambda c: c.exponents
        )
        relations = []
        for c1, c2 in itertools.combinations_with_replacement(nontrivial, 2):
            carries = tuple(pair_carry(d, c1, c2) for d in inertia)
            relations.append(Relation(c1, c2, c1 * c2, carries))
        return cls(group, inertia, support, relations)

    @classmethod
    def from_cover(cls, cd: CoverData) -> "RelationSystem":
        return cls.build(cd.group, cd.inertia)

    # -- naming ----------------------------------------------------------

    def char_label(self, chi: Character) -> str:
        sep = "" if all(d <= 9 for d in self.group.invariant_factors) else "_"
        return sep.join(str(a) for a in chi.exponents)

    def z_name(self, chi: Character) -> str:
        return "1" if chi.is_trivial else f"z{self.char_label(chi)}"

    def s_name(self, i: int, chi: Character) -> str:
        return f"s{i + 1}_{self.char_label(chi)}"

    def variables(self) -> list[str]:
        nontrivial = sorted(
            (chi for chi in self.group.characters() if not chi.is_trivial), key=lambda c: c.exponents
        )
        return [self.z_name(c) for c in nontrivial]

    def parameters(self, galois: bool = False) -> list[str]:
        pairs = [(i, chi) for i, chi in self.support if not galois or chi.is_trivial]
        pairs.sort(key=lambda p: (p[0], p[1].exponents))
        return [self.s_name(i, chi) for i, chi in pairs]

    # -- structure for tests and solving ---------------------------------

    def tau_terms(self, i: int, galois: bool = False) -> list[tuple[int, Character]]:
        return [
            (j, chi)
            for j, chi in self.support
            if j == i and (not galois or chi.is_trivial)
        ]

    def expanded_monomials(self, rel: Relation, galois: bool = False):
        """Monomials of the relation as (sign, {tagged var: exponent}) pairs.

        Tags: ("z", exps) for coordinates, ("s", i, exps) for parameters.
        The trivial coordinate is already substituted by 1.
        """
        out = []
        lhs = {}
        for chi in (rel.chi1, rel.chi2):
            key = ("z", chi.exponents)
            lhs[key] = lhs.get(key, 0) + 1
        out.append((1, lhs))
        branch_lists = [self.tau_terms(i, galois) for i, c in enumerate(rel.carries) if c]
        for choice in itertools.product(*branch_lists):
            mono = {}
            if not rel.product.is_trivial:
                mono[("z", rel.product.exponents)] = 1
            for i, chi in choice:
                skey = ("s", i, chi.exponents)
                mono[skey] = mono.get(skey, 0) + 1
                if not chi.is_trivial:
                    zkey = ("z", chi.exponents)
                    mono[zkey] = mono.get(zkey, 0) + 1
            out.append((-1, mono))
        return out

    # -- text ------------------------------------------------------------

    def render_relation(self, rel: Relation, galois: bool = False) -> str:
        if rel.chi1 == rel.chi2:
            lhs = f"{self.z_name(rel.chi1)}^2"
        else:
            lhs = f"{self.z_name(rel.chi1)}*{self.z_name(rel.chi2)}"
        factors = []
        if not rel.product.is_trivial:
            factors.append(self.z_name(rel.product))
        for i, c in enumerate(rel.carries):
            if not c:
                continue
            terms = []
            for _, chi in self.tau_terms(i, galois):
                if chi.is_trivial:
                    terms.append(self.s_name(i, chi))
                else:
                    terms.append(f"{self.s_name(i, chi)}*{self.z_name(chi)}")
            if len(terms) == 1:
                factors.append(terms[0])
            else:
                factors.append("(" + " + ".join(terms) + ")")
        rhs = "*".join(factors) if factors else "1"
        return f"{lhs} - {rhs}"

    def emit(self, flavor: str = "plain", galois: bool = False) -> str:
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        c = _COMMENT[flavor]
        lines = [
            f"{c} cover relations for {self.group}; branch divisors: {len(self.inertia)}",
            f"{c} convention: the coordinate of the trivial character is normalized to 1",
        ]
        if galois:
            lines.append(f"{c} specialization: all parameters with nontrivial character set to 0")
        body = [self.render_relation(r, galois) for r in self.relations]
        names = self.variables() + self.parameters(galois)
        if flavor == "singular":
            lines.append(f"ring R = 0, ({', '.join(names)}), dp;")
            lines.append("ideal I =")
            lines.extend(f"  {rel}{',' if i < len(body) - 1 else ';'}" for i, rel in enumerate(body))
        elif flavor == "macaulay2":
            lines.append(f"R = QQ[{', '.join(names)}]")
            lines.append("I = ideal(")
            lines.extend(f"  {rel}{',' if i < len(body) - 1 else ''}" for i, rel in enumerate(body))
            lines.append(")")
        else:
            lines.extend(body)
        return "\n".join(lines) + "\n"


def emit(cd: CoverData, flavor: str = "plain", galois: bool = False) -> str:
    return RelationSystem.from_cover(cd).emit(flavor, galois)


@dataclass(frozen=True)
class FlatnessReport:
    distinct_solutions: int
    eliminant_degree: int
    expected: int

    @property
    def matches_expected(self) -> bool:
        return self.distinct_solutions == self.expected

    def to_dict(self) -> dict:
        return {
            "distinct_solutions": self.distinct_solutions,
            "eliminant_degree": self.eliminant_degree,
            "expected": self.expected,
            "matches_expected": self.matches_expected,
        }


def flatness_smoke_test(system: RelationSystem, parameter_values: dict, bound: int = 8) -> FlatnessReport:
    """Count fiber points of the relation system at numeric parameter values.

    parameter_values maps (i, exponent tuple) -> rational; missing parameters
    default to 0.  The solution count is taken through a fixed generic linear
    projection, eliminated down to one variable by iterated resultants; the
    distinct-root count of the squarefree eliminant is the number of distinct
    solutions the projection sees (for an unramified fiber it should equal
    the group order, with drops indicating multiplicity collapse).
    """
    import sympy

    g = system.group
    if g.order > bound:
        raise SystemSizeExceeded(f"group order {g.order} exceeds the solve bound {bound}")
    nontrivial = sorted((chi for chi in g.characters() if not chi.is_trivial), key=lambda c: c.exponents)
    zsyms = {chi: sympy.Symbol(f"z{k}") for k, chi in enumerate(nontrivial)}

    def tau(i):
        acc = sympy.Integer(0)
        for j, chi in system.support:
            if j != i:
                continue
            val = parameter_values.get((j, chi.exponents), Fraction(0))
            coeff = sympy.Rational(val.numerator, val.denominator) if isinstance(val, Fraction) else sympy.Rational(val)
            acc += coeff * (sympy.Integer(1) if chi.is_trivial else zsyms[chi])
        return acc

    polys = []
    for rel in system.relations:
        term = sympy.Integer(1) if rel.product.is_trivial else zsyms[rel.product]
        for i, c in enumerate(rel.carries):
            if c:
                term *= tau(i)
        polys.append(sympy.expand(zsyms[rel.chi1] * zsyms[rel.chi2] - term))
    # deterministic "generic" projection
    w = sympy.Symbol("w")
    proj = w - sum((k + 3) ** 2 * z for k, z in enumerate(zsyms[chi] for chi in nontrivial))
    polys.append(proj)
    remaining = [zsyms[chi] for chi in nontrivial]
    for var in remaining:
        with_var = [p for p in polys if p.has(var)]
        without = [p for p in polys if not p.has(var)]
        if not with_var:
            polys = without
            continue
        with_var.sort(key=lambda p: sympy.degree(p, var))
        pivot = with_var[0]
        new = [sympy.expand(sympy.resultant(pivot, q, var)) for q in with_var[1:]]
        polys = without + [p for p in new if p != 0]
    finals = [sympy.Poly(p, w) for p in polys if p.free_symbols == {w}]
    if not finals:
        raise ValueError("elimination produced no univariate eliminant")
    elim = finals[0]
    for p in finals[1:]:
        elim = elim.gcd(p)
    if elim.degree() == 0:
        return FlatnessReport(0, 0, g.order)
    squarefree = elim.quo(elim.gcd(elim.diff()))
    return FlatnessReport(squarefree.degree(), elim.degree(), g.order)
