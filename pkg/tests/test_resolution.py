"""Blow-up ledger traces and negativity verdicts."""

from __future__ import annotations

from fractions import Fraction

import pytest

from coverkit.resolution import (
    H_UNIT,
    H_VANISHING,
    BlowupTrace,
    canonical_multiple,
    check_trace,
    expected_ledger,
    trace_even,
    trace_odd,
    verify_all,
)


class TestNegativityValues:
    def test_r2(self):
        assert canonical_multiple(2) == -2

    def test_closed_forms(self):
        # even r: -4/r; odd r: -3/r (simplifications of the two formulas)
        for r in range(2, 1001):
            v = canonical_multiple(r)
            if r % 2 == 0:
                assert v == Fraction(-4, r)
            else:
                assert v == Fraction(-3, r)
            assert v < 0

    def test_r1_rejected(self):
        with pytest.raises(ValueError):
            canonical_multiple(1)


class TestEvenTraces:
    def test_n2(self):
        t = trace_even(2)
        assert len(t.steps) == 1
        assert t.final_ledger == (("D", 1), ("E_1", 2))
        (v,) = t.verdicts
        assert v.inertia_order == 2
        assert v.value == -2

    def test_n4_first_step(self):
        t = trace_even(4)
        assert t.verdicts[0].inertia_order == 2
        assert t.verdicts[0].value == -2

    def test_n6_final_step(self):
        t = trace_even(6)
        last = t.steps[-1]
        assert last.equation.f == 6
        assert last.equation.residual == "1 + t*g"
        assert last.ledger[-1] == ("E_3", 6)
        assert t.verdicts[-1].inertia_order == 6

    def test_multiplicity_progression(self):
        for n in (2, 4, 8, 12):
            t = trace_even(n)
            assert [c for _, c in t.final_ledger[1:]] == [2 * k for k in range(1, n // 2 + 1)]

    def test_parity_rejected(self):
        with pytest.raises(ValueError):
            trace_even(3)


class TestOddTraces:
    def test_n3_h_unit(self):
        t = trace_odd(3, H_UNIT)
        assert [s.name for s in t.steps] == ["E_1", "E_2", "F"]
        assert t.final_ledger == (("D", 1), ("E_1", 2), ("E_2", 3), ("F", 6))
        conic_step = t.steps[1]
        assert conic_step.equation.render(3) == "z^3 = f^2*g^3*(f + t*g)"

    def test_n3_h_vanishing(self):
        t = trace_odd(3, H_VANISHING)
        ledger = dict(t.final_ledger)
        assert ledger["Ebar"] == 4  # n + 1
        ebar_step = next(s for s in t.steps if s.name == "Ebar")
        assert ebar_step.equation.render(3) == "z^3 = f^2*h^4*(f + t*g)"

    def test_n5_h_unit_verdicts(self):
        t = trace_odd(5, H_UNIT)
        by_name = {v.name: v for v in t.verdicts}
        # gcd(2, 5) = gcd(4, 5) = 1: totally ramified, rational
        assert by_name["E_1"].flag == "splits/rational"
        assert by_name["E_2"].flag == "splits/rational"
        assert by_name["E_3"].flag == "splits/rational"
        assert by_name["F"].flag == "splits/rational"
        assert t.all_negative

    def test_n9_mixed_inertia(self):
        t = trace_odd(9, H_UNIT)
        by_name = {v.name: v for v in t.verdicts}
        assert by_name["E_3"].inertia_order == 3  # gcd(6, 9)
        assert by_name["E_3"].value == Fraction(-1, 1) * Fraction(3, 3)  # -3/3
        assert by_name["E_1"].flag == "splits/rational"  # gcd(2, 9) = 1

    def test_final_coefficient_is_2n(self):
        for n in (3, 5, 7, 9, 11):
            for case in (H_UNIT, H_VANISHING):
                t = trace_odd(n, case)
                assert t.final_ledger[-1] == ("F", 2 * n)
                ledger = dict(t.final_ledger)
                assert ledger[f"E_{(n + 1) // 2}"] == n
                assert ledger[f"E_{(n - 1) // 2}"] == n - 1

    def test_parity_and_case_rejected(self):
        with pytest.raises(ValueError):
            trace_odd(4)
        with pytest.raises(ValueError):
            trace_odd(3, "h-sometimes")


class TestDeterminism:
    def test_identical_serialization(self):
        for build in (lambda: trace_even(8), lambda: trace_odd(7, H_VANISHING)):
            assert build().to_json() == build().to_json()


class TestVerifyAll:
    def test_up_to_eight(self):
        summary = verify_all(8)
        # n = 2,4,6,8 even (one trace each) and 3,5,7 odd (two each)
        assert summary.traces == 4 + 6

    def test_smallest(self):
        assert verify_all(2).traces == 1

    def test_corruption_detected(self):
        t = trace_even(4)
        bad_steps = list(t.steps)
        last = bad_steps[-1]
        corrupted = tuple((name, c + (1 if name == "E_2" else 0)) for name, c in last.ledger)
        bad_steps[-1] = type(last)(last.name, last.center, last.chart, last.equation, corrupted)
        bad = BlowupTrace(t.n, t.case, tuple(bad_steps), t.verdicts)
        problems = check_trace(bad)
        assert problems
        assert any("E_2" in p for p in problems)

    def test_expected_ledger_shapes(self):
        assert expected_ledger(3, H_UNIT) == (("D", 1), ("E_1", 2), ("E_2", 3), ("F", 6))
        assert expected_ledger(5, H_VANISHING) == (
            ("D", 1),
            ("E_1", 2),
            ("E_2", 4),
            ("Ebar", 6),
            ("E_3", 5),
            ("F", 10),
        )
