import math
from fractions import Fraction

import mpmath
import pytest

from _oracles import selberg_lhs_brute
from pntkit import averages, sieve, theorem_checks as tc
from pntkit.construction import build_set_pair
from pntkit.errors import InvalidRangeError, PairingError
from pntkit.universe import SyntheticUniverse


def test_alpha_constants_accurate():
    with mpmath.workdps(45):
        assert mpmath.almosteq(mpmath.mpf(tc.ALPHA_SQRT2), mpmath.sqrt(2), rel_eps=mpmath.mpf(10) ** -38)
        assert mpmath.almosteq(
            mpmath.mpf(tc.ALPHA_GOLDEN), (1 + mpmath.sqrt(5)) / 2, rel_eps=mpmath.mpf(10) ** -38
        )


def test_shift_constant_function(table_1e4):
    assert tc.shift_discrepancy("one", 10**4, table_1e4).value == 0.0


def test_shift_alternating_identity(table_1e4):
    sd = tc.shift_discrepancy("alternating", 10**4, table_1e4)
    exact = tc.shift_alternating_exact(table_1e4, 10**4)
    assert exact == Fraction(2 * 94, 10**4)
    assert sd.value == pytest.approx(float(exact), abs=1e-15)


def test_liouville_trace(table_1e4):
    rows = tc.liouville_mean_trace([1, 10, 10**4], table_1e4)
    assert rows[0]["L"] == 1
    assert rows[1]["L"] == 0
    assert rows[2]["L"] == -94


def test_pillai_m1(table_1e4):
    dens = tc.pillai_selberg_density(1, 10**4, table_1e4)
    assert dens == (Fraction(1),)


def test_pillai_parity_identity(table_1e4):
    N = 10**4
    L = sieve.liouville_summatory(N)
    dens = tc.pillai_selberg_density(2, N, table_1e4)
    assert dens[0] == Fraction(N + L, 2 * N)
    assert dens[1] == Fraction(N - L, 2 * N)
    assert sum(dens) == 1


def test_weyl_degenerate_rational(table_1e4):
    rows = tc.erdos_delange_weyl(0, [100, 10**4], table_1e4)
    assert all(r["magnitude"] == pytest.approx(1.0) for r in rows)


def test_weyl_half_equals_liouville(table_1e4):
    N = 10**4
    rows = tc.erdos_delange_weyl(Fraction(1, 2), [N], table_1e4)
    assert rows[0]["magnitude"] == pytest.approx(94 / N, abs=1e-14)


def test_weyl_rejects_floats_and_short_strings(table_1e4):
    with pytest.raises(InvalidRangeError):
        tc.erdos_delange_weyl(1.41421, [100], table_1e4)
    with pytest.raises(InvalidRangeError):
        tc.erdos_delange_weyl("1.41421356", [100], table_1e4)


def test_selberg_hand_enumeration():
    rows = tc.selberg_formula_trace([10])
    assert rows[0]["lhs"] == pytest.approx(selberg_lhs_brute(10), rel=1e-12)


def test_selberg_trace_deficit_bounded():
    rows = tc.selberg_formula_trace([10**3, 10**4])
    assert all(abs(r["normalized_deficit"]) < 6 for r in rows)


def test_transfer_constant_function(table_1e4):
    B = averages.WeightedSet.of([2])
    audit = tc.transfer_audit(B, "one", 10**4, table_1e4)
    assert audit.difference == 0.0
    assert audit.holds


def test_transfer_single_element(table_1e4):
    B = averages.WeightedSet.of([2])
    audit = tc.transfer_audit(B, "alternating", 10**4, table_1e4)
    # averaged second moment for B={p} is (p-1)/p^2 / (1/p)^2 = p-1 = 1
    assert float(audit.tk_averaged) == pytest.approx(1.0, abs=1e-3)
    assert audit.holds


def test_transfer_requires_big_N(table_1e4):
    B = averages.WeightedSet.of([150])
    with pytest.raises(InvalidRangeError):
        tc.transfer_audit(B, "one", 10**4, table_1e4)


@pytest.fixture(scope="module")
def synthetic_pair():
    return build_set_pair(SyntheticUniverse(), Fraction(1, 2), N_target=Fraction(1, 50))


@pytest.fixture(scope="module")
def table_8e6():
    return sieve.sieve_range(1, 8 * 10**6 + 1, workers=4)


def test_pairing_identical_sets_zero(synthetic_pair, table_8e6):
    import dataclasses

    sp = dataclasses.replace(synthetic_pair, B2=synthetic_pair.B1,
                             pair_ratio_bounds=tuple(Fraction(1) for _ in synthetic_pair.B1))
    audit = tc.pairing_transfer_audit(sp, "alternating", 8 * 10**6, table_8e6)
    assert audit.difference == 0.0


def test_pairing_synthetic_pair(synthetic_pair, table_8e6):
    audit = tc.pairing_transfer_audit(synthetic_pair, "alternating", 8 * 10**6, table_8e6)
    assert audit.holds
    assert audit.bound == tc.PAIRING_CONSTANT * 0.5


def test_pairing_requires_big_N(synthetic_pair, table_1e4):
    with pytest.raises(InvalidRangeError):
        tc.pairing_transfer_audit(synthetic_pair, "one", 10**4, table_1e4)


def test_pairing_missing_verdicts(synthetic_pair, table_1e4):
    import dataclasses

    broken = dataclasses.replace(
        synthetic_pair,
        verdicts=dataclasses.replace(synthetic_pair.verdicts, ratios=False),
    )
    with pytest.raises(PairingError):
        tc.pairing_transfer_audit(broken, "one", 10**4, table_1e4)


def test_shift_value_bounded_by_2sup(table_1e4):
    for f_id in ("alternating", "root_of_unity:5", "exp_alpha:golden"):
        sd = tc.shift_discrepancy(f_id, 10**4, table_1e4)
        assert 0 <= sd.value <= 2 * sd.sup_f


def test_prime_count_trace():
    rows = tc.prime_count_trace([100, 1000])
    assert rows[0]["pi"] == 25
    assert rows[1]["pi"] == 168
