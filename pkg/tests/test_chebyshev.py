import math
from fractions import Fraction

import pytest

from _oracles import pi_oracle
from pntkit import chebyshev as ch
from pntkit import sieve
from pntkit.errors import InvalidRangeError, SigmaRangeError


def test_legendre_examples():
    assert ch.legendre_multiplicity(2, 5) == 2
    assert ch.legendre_multiplicity(7, 5) == 1
    assert ch.legendre_multiplicity(11, 5) == 0


def test_legendre_rejects_composite():
    with pytest.raises(InvalidRangeError):
        ch.legendre_multiplicity(6, 10)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 37, 128])
def test_legendre_matches_factorization(n):
    comb = math.comb(2 * n, n)
    for p in sieve.base_primes(2 * n).tolist():
        e = 0
        c = comb
        while c % p == 0:
            c //= p
            e += 1
        assert ch.legendre_multiplicity(int(p), n) == e


def test_reconstruction_small_sweep():
    primes = sieve.base_primes(400).tolist()
    for n in range(1, 201):
        assert ch.audit_central_binomial(n, primes).reconstructs_exactly()


def test_audit_invariants():
    audit = ch.audit_central_binomial(500)
    logsum = sum(e * math.log(p) for p, e in audit.multiplicities.items())
    assert logsum == pytest.approx(audit.log_binom, rel=1e-10)
    for p, e in audit.multiplicities.items():
        nu = 0
        q = p
        while q <= 1000:
            nu += 1
            q *= p
        assert e <= nu
    assert audit.stirling_estimate == pytest.approx(1000 * math.log(2))
    assert audit.stirling_error <= 2 * math.log(1000)


def test_beta_examples():
    assert ch.beta(2) == pytest.approx(2 * math.log(2))
    assert ch.beta(16) == pytest.approx(16 * math.log(16) - 15 * math.log(15))
    with pytest.raises(SigmaRangeError):
        ch.beta(1)
    with pytest.raises(SigmaRangeError):
        ch.beta(16.5)


def test_beta_monotone_on_grid():
    values = [ch.beta(1 + k * 0.25) for k in range(1, 61)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_lower_inequality_examples(pi_table_8e5):
    v = ch.lower_binomial_inequality(2, pi_table_8e5)
    assert v.holds and v.slack == pytest.approx(math.log(4) * 2 - math.log(6))
    assert ch.lower_binomial_inequality(50, pi_table_8e5).holds
    # n = 1 is an exact tie: C(2,1) = 2 = 2^pi(2); decided exactly
    assert ch.lower_binomial_inequality(1, pi_table_8e5).holds


def test_lower_sweep_no_violations(pi_table_8e5):
    for v in ch.sweep_lower_binomial(2000, pi_table_8e5):
        assert v.holds


def test_upper_inequality_example(pi_table_8e5):
    v = ch.upper_binomial_inequality(4, 2, pi_table_8e5)
    assert v.holds
    assert v.slack == pytest.approx(math.log(70) - math.log(4) * 2)


def test_upper_sweep_sigma_le_2(pi_table_8e5):
    for s in (Fraction(3, 2), 2):
        for v in ch.sweep_upper_binomial(2000, [s], pi_table_8e5)[s]:
            assert v.holds, f"sigma={s}, x={v.x}"


def test_upper_known_violations_detected(pi_table_8e5):
    # the interval inequality genuinely fails for wide sigma; the checker
    # must report, not mask, these.
    assert not ch.upper_binomial_inequality(21, 4, pi_table_8e5).holds
    assert not ch.upper_binomial_inequality(3, 8, pi_table_8e5).holds


def test_upper_sigma_range(pi_table_8e5):
    with pytest.raises(SigmaRangeError):
        ch.upper_binomial_inequality(10, 1, pi_table_8e5)
    with pytest.raises(SigmaRangeError):
        ch.upper_binomial_inequality(10, 17, pi_table_8e5)


def test_log_binom_matches_exact():
    for m, r in [(10, 5), (100, 50), (4000, 2000)]:
        assert ch.log_binom(m, r) == pytest.approx(math.log(math.comb(m, r)), rel=1e-12)


def test_window_lower_examples():
    v = ch.window_lower_bound(2)
    assert v.interval.count == 79 and v.bound_value == 32.0 and v.holds
    v3 = ch.window_lower_bound(3)
    assert v3.interval.count == pi_oracle(4096) - pi_oracle(512)
    assert v3.holds


def test_window_upper_examples():
    v = ch.window_upper_bound(6, Fraction(1, 10))
    assert v.holds
    v = ch.window_upper_bound(4, Fraction(1, 20))
    assert v.holds
    with pytest.raises(InvalidRangeError):
        ch.window_upper_bound(4, 0)


def test_window_lower_fractional_x():
    # (8^1.5, 8^2.5] = (22, 181]: pi(181) - pi(22) = 42 - 8 = 34 >= 8^1.5/1.5
    v = ch.window_lower_bound(Fraction(3, 2))
    assert v.interval.count == pi_oracle(181) - pi_oracle(22) == 34
    assert v.bound_value == pytest.approx(8**1.5 / 1.5)
    assert v.holds


def test_calibration_report():
    rep = ch.calibrate_x0_eps0([1, 2, 3, 4], [Fraction(1, 10)])
    assert rep.x0_lower == 1
    assert rep.upper_thresholds[Fraction(1, 10)] == 1
    # degenerate single-point grid
    rep1 = ch.calibrate_x0_eps0([2], [])
    assert rep1.x0_lower == 2


def test_stirling_audit():
    audit = ch.stirling_factorial_audit(10**5)
    assert audit.holds
    assert audit.max_ratio < 1


def test_sqrt_eps_dominance_increasing():
    rows = ch.sqrt_eps_dominance([10**-1, 10**-2, 10**-3, 10**-4])
    ratios = [r for _, r in rows]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
