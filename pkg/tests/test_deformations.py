"""Deformation tables, the generic-symmetry predictor, weights, moduli dims."""

from __future__ import annotations

import pytest

from coverkit.base import NumericalBase
from coverkit.covers import CoverData
from coverkit.deformations import (
    UnknownDimensionsError,
    cstar_weights,
    moduli_dimension,
    predict_generic_automorphisms,
    section_indices,
    tangent_table,
)
from coverkit.groups import FinAbGroup, InertiaDatum, character_kernel, enumerate_inertia
from helpers import random_surjective_inertia, seeded_rng
from test_covers import bidouble, simple_cyclic


class TestSectionIndices:
    def test_z2_single(self):
        g = FinAbGroup((2,))
        s = section_indices(g, [InertiaDatum(g.element((1,)))])
        assert len(s) == 1
        assert s[0][1].is_trivial

    def test_simple_cyclic_count(self):
        for m in (2, 3, 4, 5, 6):
            g = FinAbGroup((m,))
            s = section_indices(g, [InertiaDatum(g.element((1,)))])
            assert len(s) == m - 1
            # the excluded character is the inverse of the distinguished one
            excluded = {chi.exponents for _, chi in s}
            assert (m - 1,) not in excluded

    def test_bidouble_count(self):
        cd = bidouble()
        s = section_indices(cd.group, cd.inertia)
        per_i = {}
        for i, chi in s:
            per_i[i] = per_i.get(i, 0) + 1
        assert per_i == {0: 2, 1: 2, 2: 2}
        assert len(s) == 6


class TestTangentTable:
    def test_simple_cyclic_m3(self):
        # eta = 2h, xi = 6h: dims h^0(O(6)) + h^0(O(4)) = 28 + 15
        cd = simple_cyclic(3, 2)
        report = tangent_table(cd)
        psi = cd.group.character((1,))
        psi2 = cd.group.character((2,))
        assert report.tangent[psi] == 15
        assert report.tangent[psi2] == 0  # empty summand list
        assert report.natural_deformation_dim == 28 + 15

    def test_double_cover_galois_only(self):
        cd = simple_cyclic(2, 4)
        report = tangent_table(cd)
        assert report.galois_only
        assert report.natural_deformation_dim == 45  # h^0(O(8)) alone

    def test_unknown_propagates(self):
        base = NumericalBase.preset("curve_product")
        g = FinAbGroup((3,))
        inertia = [InertiaDatum(g.element((1,)))]
        # xi - eta = (2, 2) is positive on both rulings but misses the
        # canonical margin: that summand's h^0 is unknown
        cd = CoverData.create(g, inertia, base, [base.cls((3, 3))])
        report = tangent_table(cd)
        assert report.unknown_terms
        assert None in report.tangent.values()

    def test_completeness_needs_omega_assumption(self):
        cd = simple_cyclic(3, 2)
        assert not tangent_table(cd).completeness
        report = tangent_table(cd, omega_twists_assumed_ample=True)
        assert report.completeness
        assert any("cotangent" in a for a in report.assumptions)

    def test_invariant_dims_are_plugins(self):
        cd = bidouble()
        report = tangent_table(cd, invariant_dims=(7, 0))
        assert report.invariant_tangent == 7
        assert report.invariant_obstruction == 0
        assert tangent_table(cd).invariant_tangent is None


class TestPredictor:
    def test_double_cover_keeps_involution(self):
        cd = simple_cyclic(2, 4)
        sub = predict_generic_automorphisms(cd)
        assert sub.order == 2

    def test_higher_cyclic_loses_everything(self):
        for m, eta in ((3, 2), (4, 2), (5, 1)):
            cd = simple_cyclic(m, eta)
            sub = predict_generic_automorphisms(cd)
            assert sub.order == 1

    def test_marker_free_bidouble_loses_everything(self):
        sub = predict_generic_automorphisms(bidouble(degree=2))
        assert sub.order == 1

    def test_unknown_dims_error(self):
        base = NumericalBase.preset("curve_product")
        g = FinAbGroup((3,))
        cd = CoverData.create(g, [InertiaDatum(g.element((1,)))], base, [base.cls((3, 3))])
        with pytest.raises(UnknownDimensionsError):
            predict_generic_automorphisms(cd)

    def test_result_is_kernel_of_active_characters(self):
        rng = seeded_rng("predictor-kernel")
        groups = [FinAbGroup(c) for c in ((2,), (3,), (2, 2), (6,), (2, 4), (3, 3))]
        base = NumericalBase.preset("P2")
        for _ in range(25):
            g = rng.choice(groups)
            inertia = random_surjective_inertia(g, rng)
            n = g.invariant_factors[-1]
            xi = [base.cls((n * rng.randrange(1, 3),)) for _ in inertia]
            cd = CoverData.create(g, inertia, base, xi, intersection_pattern=())
            report = tangent_table(cd)
            sub = predict_generic_automorphisms(cd, report)
            active = [chi for chi, v in report.tangent.items() if v]
            brute = character_kernel(g, active)
            assert set(sub.elements) == set(brute)
            zero = g.zero()
            assert zero in set(sub.elements)


class TestWeights:
    def test_branch_section_weight(self):
        cd = bidouble()
        table = cstar_weights(cd)
        for j, d in enumerate(cd.inertia):
            w = table.weight(j, cd.group.trivial_character())
            assert w == tuple(d.m if i == j else 0 for i in range(3))

    def test_simple_cyclic_weights(self):
        m = 5
        cd = simple_cyclic(m, 1)
        table = cstar_weights(cd)
        for k in range(m - 1):
            chi = cd.group.character((k,))
            assert table.weight(0, chi) == (m - k,)

    def test_bidouble_mixed_weight(self):
        cd = bidouble()
        chi2 = cd.group.character((0, 1))
        # divisor order: 0 <-> e1, 1 <-> e2, 2 <-> e1+e2; exponents of chi2
        # at them are 0, 1, 1
        assert cstar_weights(cd).weight(0, chi2) == (2, -1, -1)

    def test_random_branch_weights(self):
        rng = seeded_rng("weights")
        groups = [FinAbGroup(c) for c in ((2,), (4,), (2, 2), (3, 3), (2, 4), (6,))]
        base = NumericalBase.preset("P2")
        for _ in range(50):
            g = rng.choice(groups)
            inertia = random_surjective_inertia(g, rng)
            n = g.invariant_factors[-1]
            xi = [base.cls((n,)) for _ in inertia]
            cd = CoverData.create(g, inertia, base, xi, intersection_pattern=())
            table = cstar_weights(cd)
            for j, d in enumerate(cd.inertia):
                expected = tuple(d.m if i == j else 0 for i in range(len(cd.inertia)))
                assert table.weight(j, g.trivial_character()) == expected


class TestModuliDimension:
    def test_bidouble_conics(self):
        assert moduli_dimension(bidouble(degree=2)) == 15

    def test_abelian_counts_continuous_parameters(self):
        base = NumericalBase.preset("abelian_pp")
        g = FinAbGroup((2, 2))
        inertia = [InertiaDatum(g.element(c)) for c in ((1, 0), (0, 1), (1, 1))]
        cd = CoverData.create(g, inertia, base, [base.cls((2,))] * 3)
        # q #I + sum (h^0(2 Theta) - 1) = 6 + 3 * 3
        assert moduli_dimension(cd) == 15

    def test_aut_quotient(self):
        assert moduli_dimension(bidouble(degree=2), aut_base_dim=8) == 7

    def test_empty_inertia(self):
        base = NumericalBase.preset("P2")
        cd = CoverData.create(FinAbGroup(()), [], base, [])
        assert moduli_dimension(cd) == 0

    def test_insufficiently_ample_unknown(self):
        cd = bidouble(degree=2)
        small = CoverData.create(
            cd.group, cd.inertia, NumericalBase.preset("curve_product"),
            [NumericalBase.preset("curve_product").cls((2, 2))] * 3,
            intersection_pattern=(),
        )
        assert moduli_dimension(small) is None
