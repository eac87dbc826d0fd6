"""Chebyshev-type prime bounds from binomial coefficients.

Four exact inequalities are audited at desk scale:

  * factorial-multiplicity identities reconstructing C(2n, n),
  * log C(2n,n) <= log(2n) * pi(2n)              (every prime power <= 2n),
  * log C(floor(sx), x) >= log(x) * (pi(sx) - pi(x)),
  * window bounds   #primes in (8^x, 8^{x+1}]   >= 8^x / x   and
                    #primes in (8^x, 8^{x+eps}] <= sqrt(eps) * 8^x / x.

The second inequality is only valid for sigma <= 2: for sigma >= 3 the
prime mass of (x, sigma x] is ~ (sigma-1) x while log C(sigma x, x) is
~ beta(sigma) x, and beta(sigma) < sigma - 1 from sigma = 3 on.  The sweep
reports violations rather than hiding them.

Float log-binomials come from lgamma; any verdict with slack below
EXACT_TIER is re-decided by exact big-integer comparison, so ties (e.g.
n = 1, where log C(2,1) = log 2 * pi(2) exactly) are never mis-reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from pntkit import sieve
from pntkit.errors import InvalidRangeError, SigmaRangeError

EXACT_TIER = 1e-6
LOG_BINOM_PREC = 96


def beta(sigma: float) -> float:
    """sigma*log(sigma) - (sigma-1)*log(sigma-1) on (1, 16]."""
    if not 1 < sigma <= 16:
        raise SigmaRangeError(f"need 1 < sigma <= 16, got {sigma}")
    s = float(sigma)
    out = s * math.log(s)
    if s > 1:
        out -= (s - 1) * math.log(s - 1) if s != 1 else 0.0
    return out


def is_prime_trial(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def legendre_multiplicity(p: int, n: int) -> int:
    """Exponent of the prime p in C(2n, n).

    Sums floor(2n/p^i) - 2*floor(n/p^i) over p^i <= 2n; each summand is 0
    or 1, which is asserted.
    """
    if n < 1:
        raise InvalidRangeError(f"need n >= 1, got {n}")
    if not is_prime_trial(p):
        raise InvalidRangeError(f"p={p} is not prime")
    total = 0
    q = p
    while q <= 2 * n:
        term = (2 * n) // q - 2 * (n // q)
        if term not in (0, 1):
            raise AssertionError(f"floor difference {term} outside {{0,1}} (p={p}, n={n})")
        total += term
        q *= p
    return total


def log_binom(m: int, r: int, prec: int = LOG_BINOM_PREC) -> float:
    """log C(m, r) via loggamma at `prec` bits."""
    if not 0 <= r <= m:
        raise InvalidRangeError(f"need 0 <= r <= m, got r={r} m={m}")
    with mpmath.workprec(prec):
        v = (
            mpmath.loggamma(m + 1)
            - mpmath.loggamma(r + 1)
            - mpmath.loggamma(m - r + 1)
        )
        return float(v)


def _log_binom_fast(m: int, r: int) -> float:
    return math.lgamma(m + 1) - math.lgamma(r + 1) - math.lgamma(m - r + 1)


@dataclass(frozen=True)
class BinomialAudit:
    """Multiplicity decomposition of one central binomial coefficient."""

    n: int
    log_binom: float
    multiplicities: dict[int, int]
    stirling_estimate: float  # 2n log 2, the leading Stirling term
    stirling_error: float

    def reconstructs_exactly(self) -> bool:
        prod = 1
        for p, e in self.multiplicities.items():
            prod *= p**e
        return prod == math.comb(2 * self.n, self.n)


def audit_central_binomial(n: int, primes: Optional[Sequence[int]] = None) -> BinomialAudit:
    """Factor C(2n,n) by multiplicities and audit it against Stirling."""
    if primes is None:
        primes = sieve.base_primes(2 * n).tolist()
    mult = {}
    for p in primes:
        if p > 2 * n:
            break
        e = legendre_multiplicity(int(p), n)
        if e:
            mult[int(p)] = e
    lb = log_binom(2 * n, n)
    est = 2 * n * math.log(2)
    return BinomialAudit(
        n=n,
        log_binom=lb,
        multiplicities=mult,
        stirling_estimate=est,
        stirling_error=abs(lb - est),
    )


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of one inequality check.

    slack is oriented so that the inequality holds iff slack >= 0,
    regardless of the bound's direction.
    """

    x: object
    interval: Optional[sieve.IntervalCensus]
    bound_value: float
    slack: float
    holds: bool
    kind: str


def lower_binomial_inequality(n: int, pi_table: np.ndarray) -> BoundVerdict:
    """Check log C(2n, n) <= log(2n) * pi(2n) with exact tie handling."""
    if n < 1:
        raise InvalidRangeError(f"need n >= 1, got {n}")
    if 2 * n >= len(pi_table):
        raise InvalidRangeError(f"pi table too small for 2n={2*n}")
    count = int(pi_table[2 * n])
    lhs = _log_binom_fast(2 * n, n)
    rhs = math.log(2 * n) * count
    slack = rhs - lhs
    if abs(slack) < EXACT_TIER:
        holds = math.comb(2 * n, n) <= (2 * n) ** count
    else:
        holds = slack >= 0
    cen = sieve.IntervalCensus(1, 2 * n, count)
    return BoundVerdict(n, cen, rhs, slack, holds, "central-binomial-vs-pi")


def upper_binomial_inequality(x: int, sigma, pi_table: np.ndarray) -> BoundVerdict:
    """Check log C(floor(sigma x), x) >= log(x) * (pi(sigma x) - pi(x)).

    sigma is interpreted exactly (Fraction), so floor(sigma x) is never a
    float rounding artifact.
    """
    if x < 1:
        raise InvalidRangeError(f"need x >= 1, got {x}")
    sig = Fraction(sigma)
    if not 1 < sig <= 16:
        raise SigmaRangeError(f"need 1 < sigma <= 16, got {sigma}")
    sx = (sig.numerator * x) // sig.denominator
    if sx >= len(pi_table):
        raise InvalidRangeError(f"pi table too small for sigma*x={sx}")
    count = int(pi_table[sx] - pi_table[x])
    lhs = _log_binom_fast(sx, x)
    rhs = math.log(x) * count
    slack = lhs - rhs
    if abs(slack) < EXACT_TIER:
        holds = math.comb(sx, x) >= x**count
    else:
        holds = slack >= 0
    cen = sieve.IntervalCensus(x, sx, count)
    return BoundVerdict(x, cen, rhs, slack, holds, f"interval-binomial-sigma={sigma}")


def sweep_lower_binomial(n_max: int, pi_table: Optional[np.ndarray] = None) -> list[BoundVerdict]:
    if pi_table is None:
        pi_table = sieve.prime_pi_table(2 * n_max)
    return [lower_binomial_inequality(n, pi_table) for n in range(1, n_max + 1)]


def sweep_upper_binomial(
    x_max: int,
    sigmas: Iterable,
    pi_table: Optional[np.ndarray] = None,
) -> dict[object, list[BoundVerdict]]:
    sigmas = list(sigmas)
    if pi_table is None:
        top = max(int(math.ceil(Fraction(s) * x_max)) for s in sigmas)
        pi_table = sieve.prime_pi_table(top)
    return {
        s: [upper_binomial_inequality(x, s, pi_table) for x in range(1, x_max + 1)]
        for s in sigmas
    }


# -- window bounds in base 8 --------------------------------------------------

def _pow8_real(x, prec: int = 80) -> float:
    with mpmath.workprec(prec):
        t = 3 * mpmath.mpf(Fraction(x).numerator) / mpmath.mpf(Fraction(x).denominator)
        return float(mpmath.power(2, t))


def window_lower_bound(x, *, budget: int = sieve.DEFAULT_BUDGET, workers: int = 1) -> BoundVerdict:
    """count primes in (8^x, 8^{x+1}] and compare against 8^x / x."""
    if x < 1:
        raise InvalidRangeError(f"need x >= 1, got {x}")
    lo = sieve.floor_pow8(x)
    hi = sieve.floor_pow8(Fraction(x) + 1)
    cen = sieve.census(lo, hi, budget=budget, workers=workers)
    if sieve.pow8_is_integer(x):
        bound_exact = Fraction(sieve.floor_pow8(x)) / Fraction(x)
        holds = Fraction(cen.count) >= bound_exact
        bound = float(bound_exact)
        slack = cen.count - bound
    else:
        bound = _pow8_real(x) / float(x)
        slack = cen.count - bound
        holds = slack >= 0
    return BoundVerdict(x, cen, bound, slack, holds, "window-lower")


def window_upper_bound(
    x,
    eps,
    *,
    budget: int = sieve.DEFAULT_BUDGET,
    workers: int = 1,
) -> BoundVerdict:
    """count primes in (8^x, 8^{x+eps}] and compare against sqrt(eps) 8^x / x."""
    if x < 1:
        raise InvalidRangeError(f"need x >= 1, got {x}")
    if not eps > 0:
        raise InvalidRangeError(f"need eps > 0, got {eps}")
    fx = Fraction(x)
    lo = sieve.floor_pow8(fx)
    hi = sieve.floor_pow8(fx + Fraction(eps))
    if hi <= lo:
        cen = sieve.IntervalCensus(lo, hi if hi > lo else lo + 1, 0)
        count = 0
    else:
        cen = sieve.census(lo, hi, budget=budget, workers=workers)
        count = cen.count
    bound = math.sqrt(float(eps)) * _pow8_real(x) / float(x)
    slack = bound - count
    return BoundVerdict(x, cen, bound, slack, slack >= 0, f"window-upper-eps={eps}")


@dataclass(frozen=True)
class CalibrationReport:
    """Empirical thresholds for the two window bounds on the given grids."""

    lower_verdicts: tuple[BoundVerdict, ...]
    x0_lower: Optional[object]  # least grid x from which the lower bound holds onward
    upper_thresholds: dict  # eps -> least grid x holding onward (None if never)
    upper_verdicts: dict  # eps -> tuple of verdicts


def _least_onward(xs: Sequence, verdicts: Sequence[BoundVerdict]):
    least = None
    for x, v in zip(reversed(xs), reversed(verdicts)):
        if not v.holds:
            break
        least = x
    return least


def calibrate_x0_eps0(
    x_grid: Sequence,
    eps_grid: Sequence,
    *,
    budget: int = sieve.DEFAULT_BUDGET,
    workers: int = 1,
) -> CalibrationReport:
    """Sweep both bounds; report the least grid points from which they hold."""
    xs = list(x_grid)
    lower = tuple(window_lower_bound(x, budget=budget, workers=workers) for x in xs)
    upper_verdicts = {}
    upper_thresholds = {}
    for eps in eps_grid:
        vs = tuple(window_upper_bound(x, eps, budget=budget, workers=workers) for x in xs)
        upper_verdicts[eps] = vs
        upper_thresholds[eps] = _least_onward(xs, vs)
    return CalibrationReport(
        lower_verdicts=lower,
        x0_lower=_least_onward(xs, lower),
        upper_thresholds=upper_thresholds,
        upper_verdicts=upper_verdicts,
    )


# -- Stirling audit -----------------------------------------------------------

@dataclass(frozen=True)
class StirlingAudit:
    m_max: int
    max_abs_deviation: float  # max |log m! - (m log m - m)|
    max_ratio: float  # max over m of deviation / (2 log m + 2)
    holds: bool  # deviation <= 2 log m + 2 everywhere


def stirling_factorial_audit(m_max: int) -> StirlingAudit:
    """Check |log m! - (m log m - m)| <= 2 log m + 2 for 2 <= m <= m_max.

    log m! is the exact cumulative sum of log k (float64 cumsum; its error
    is orders of magnitude below the audited slack).
    """
    if m_max < 2:
        raise InvalidRangeError("need m_max >= 2")
    ms = np.arange(1, m_max + 1, dtype=np.float64)
    logfact = np.cumsum(np.log(ms))
    ms = ms[1:]
    logfact = logfact[1:]
    dev = np.abs(logfact - (ms * np.log(ms) - ms))
    allowance = 2 * np.log(ms) + 2
    ratios = dev / allowance
    return StirlingAudit(
        m_max=m_max,
        max_abs_deviation=float(dev.max()),
        max_ratio=float(ratios.max()),
        holds=bool((dev <= allowance).all()),
    )


def sqrt_eps_dominance(eps_values: Sequence[float]) -> list[tuple[float, float]]:
    """Returns (eps, sqrt(eps)/beta(8^eps)) rows; the ratio grows as eps -> 0."""
    rows = []
    for eps in eps_values:
        rows.append((eps, math.sqrt(eps) / beta(8**eps)))
    return rows


__all__ = [
    "BinomialAudit",
    "BoundVerdict",
    "CalibrationReport",
    "EXACT_TIER",
    "StirlingAudit",
    "audit_central_binomial",
    "beta",
    "calibrate_x0_eps0",
    "is_prime_trial",
    "legendre_multiplicity",
    "log_binom",
    "lower_binomial_inequality",
    "sqrt_eps_dominance",
    "stirling_factorial_audit",
    "sweep_lower_binomial",
    "sweep_upper_binomial",
    "upper_binomial_inequality",
    "window_lower_bound",
    "window_upper_bound",
]
