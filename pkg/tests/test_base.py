"""Numerical base: presets, pairing, positivity, Riemann-Roch branches."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from coverkit.base import NSClass, NumericalBase, Pic0Marker


def monomial_count(degree):
    """h^0(O_P2(d)) by counting monomials of degree d in three variables."""
    return comb(degree + 2, 2) if degree >= 0 else 0


class TestPresets:
    def test_all_presets_satisfy_noether(self):
        for name in ("P2", "P1xP1", "abelian_pp", "curve_product"):
            b = NumericalBase.preset(name)
            k2 = b.canonical_class.dot(b.canonical_class)
            assert 12 * b.chi_o == k2 + b.euler

    def test_preset_signature(self):
        # diagonalize the form over Q and count signs
        for name in ("P2", "P1xP1", "abelian_pp", "curve_product"):
            b = NumericalBase.preset(name)
            rho = b.ns_rank
            m = [[Fraction(x) for x in row] for row in b.form]
            signs = []
            for t in range(rho):
                if m[t][t] == 0:
                    other = next((j for j in range(t, rho) if m[t][j]), None)
                    assert other is not None
                    for i in range(rho):
                        m[i][t] += m[i][other]
                    for j in range(rho):
                        m[t][j] += m[other][j]
                signs.append(1 if m[t][t] > 0 else -1)
                for i in range(t + 1, rho):
                    f = m[i][t] / m[t][t]
                    for j in range(rho):
                        m[i][j] -= f * m[t][j]
                for j in range(t + 1, rho):
                    f = m[t][j] / m[t][t]
                    for i in range(rho):
                        m[i][j] -= f * m[i][t]
            assert signs.count(1) == 1
            assert signs.count(-1) == rho - 1

    def test_bad_noether_rejected(self):
        with pytest.raises(ValueError, match="Noether"):
            NumericalBase(2, 1, ((1,),), (-3,), 0, 1, 4, ((1,),))

    def test_asymmetric_form_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            NumericalBase(2, 2, ((0, 1), (2, 0)), (0, 0), 0, 1, 12, ())

    def test_curve_product_general_genus(self):
        b = NumericalBase.preset("curve_product", genus=(3, 5))
        assert b.q == 8
        assert 12 * b.chi_o == b.canonical_class.dot(b.canonical_class) + b.euler


class TestPairing:
    def test_p2(self):
        b = NumericalBase.preset("P2")
        h = b.cls((1,))
        assert h.dot(h) == 1

    def test_p1xp1(self):
        b = NumericalBase.preset("P1xP1")
        f1, f2 = b.cls((1, 0)), b.cls((0, 1))
        assert f1.dot(f2) == 1
        assert f1.dot(f1) == 0
        assert f2.dot(f2) == 0

    def test_abelian_theta(self):
        # h^0(Theta) = 1 plus Riemann-Roch on an abelian surface force
        # Theta^2 = 2, which is how the preset is defined
        b = NumericalBase.preset("abelian_pp")
        theta = b.cls((1,))
        assert theta.dot(theta) == 2
        assert b.riemann_roch_h0(theta) == 1

    def test_mismatch_rejected(self):
        a = NumericalBase.preset("P2").cls((1,))
        c = NumericalBase.preset("P1xP1").cls((1, 0))
        with pytest.raises(ValueError):
            a.dot(c)

    def test_rational_classes(self):
        b = NumericalBase.preset("P2")
        half = b.cls((Fraction(1, 2),))
        assert half.dot(half) == Fraction(1, 4)
        assert not half.is_integral


class TestSufficientlyAmple:
    def test_p2_examples(self):
        b = NumericalBase.preset("P2")
        h = b.cls((1,))
        margin = b.canonical_class + 3 * h  # zero class
        assert b.is_sufficiently_ample(5 * h, margin)
        assert not b.is_sufficiently_ample(-1 * h)

    def test_abelian(self):
        b = NumericalBase.preset("abelian_pp")
        assert b.is_sufficiently_ample(b.cls((2,)))

    def test_margin_shifts(self):
        b = NumericalBase.preset("P2")
        h = b.cls((1,))
        assert b.is_sufficiently_ample(4 * h, 3 * h)
        assert not b.is_sufficiently_ample(3 * h, 3 * h)


class TestRiemannRoch:
    def test_p2_degree_two(self):
        b = NumericalBase.preset("P2")
        assert b.riemann_roch_h0(b.cls((2,))) == 6
        assert monomial_count(2) == 6

    def test_p2_matches_monomial_count(self):
        b = NumericalBase.preset("P2")
        for d in range(1, 9):
            assert b.riemann_roch_h0(b.cls((d,))) == monomial_count(d)

    def test_zero_class_marker_rule(self):
        for name in ("P2", "abelian_pp", "P1xP1"):
            b = NumericalBase.preset(name)
            z = b.zero_class()
            assert b.riemann_roch_h0(z) == 1
            assert b.riemann_roch_h0(z, Pic0Marker.zero(2)) == 1
            assert b.riemann_roch_h0(z, Pic0Marker((1, 0))) == 0

    def test_abelian_two_theta(self):
        # classical h^0(2 Theta) = 4
        b = NumericalBase.preset("abelian_pp")
        assert b.riemann_roch_h0(b.cls((2,))) == 4

    def test_negative_class(self):
        b = NumericalBase.preset("P2")
        assert b.riemann_roch_h0(b.cls((-2,))) == 0

    def test_unknown(self):
        # a fiber class on a product of genus-2 curves: not ample after the
        # canonical margin, not negative against the tests -> refuse to guess
        b = NumericalBase.preset("curve_product")
        assert b.riemann_roch_h0(b.cls((1, 0))) is None

    def test_integer_valued(self):
        b = NumericalBase.preset("P1xP1")
        for a in range(1, 5):
            for c in range(1, 5):
                v = b.riemann_roch_h0(b.cls((a, c)))
                assert v == (a + 1) * (c + 1)  # classical bidegree count


class TestSerialization:
    def test_round_trip(self):
        for name in ("P2", "P1xP1", "abelian_pp"):
            b = NumericalBase.preset(name)
            assert NumericalBase.from_dict(b.to_dict()) == b

    def test_preset_reference(self):
        assert NumericalBase.from_dict({"preset": "P2"}) == NumericalBase.preset("P2")

    def test_unknown_keys_rejected(self):
        d = NumericalBase.preset("P2").to_dict()
        d["bogus"] = 1
        with pytest.raises(ValueError, match="unknown base keys"):
            NumericalBase.from_dict(d)
