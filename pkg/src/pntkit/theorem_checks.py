"""Desk-scale empirical checks of the shift-invariance statement and its
corollaries: Liouville mean decay, residue-class densities of Omega,
Weyl sums of Omega along an irrational, the symmetry formula for primes,
and the two transfer audits that mirror the averaging proof chain.

Every trace is a pure function of (table, grid), so reports are
byte-reproducible.  Convergence acceptance is trend-based: the underlying
statements carry no effective rate, so traces are required to decay across
decades rather than meet an asserted rate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
import numpy as np

from pntkit import averages, sieve
from pntkit.errors import InvalidRangeError, PairingError

# 40 significant digits; checked against mpmath in the test suite.
ALPHA_SQRT2 = "1.414213562373095048801688724209698078570"
ALPHA_GOLDEN = "1.618033988749894848204586834365638117720"

TRANSFER_FLOOR_CONSTANT = 3  # c in the sqrt(TK) + c/sqrt(N) bound; see transfer_audit
PAIRING_CONSTANT = 6  # C in the C*eta pairing bound; see pairing_transfer_audit


def _f_alternating(m: int) -> complex:
    return -1.0 if m & 1 else 1.0


def _f_root_of_unity(order: int) -> Callable[[int], complex]:
    def f(m: int) -> complex:
        return cmath.exp(2j * cmath.pi * (m % order) / order)

    return f


def _f_exp_alpha(alpha_str: str) -> Callable[[int], complex]:
    with mpmath.workdps(50):
        alpha = mpmath.mpf(alpha_str)
        table = {}

    def f(m: int) -> complex:
        if m not in table:
            with mpmath.workdps(50):
                z = mpmath.expjpi(2 * alpha * m)
                table[m] = complex(float(mpmath.re(z)), float(mpmath.im(z)))
        return table[m]

    return f


TEST_FUNCTIONS: dict[str, Callable[[int], complex]] = {
    "one": lambda m: 1.0,
    "alternating": _f_alternating,
    "root_of_unity:2": _f_root_of_unity(2),
    "root_of_unity:3": _f_root_of_unity(3),
    "root_of_unity:4": _f_root_of_unity(4),
    "root_of_unity:5": _f_root_of_unity(5),
    "exp_alpha:sqrt2": _f_exp_alpha(ALPHA_SQRT2),
    "exp_alpha:golden": _f_exp_alpha(ALPHA_GOLDEN),
}


def resolve_test_function(f_id: Union[str, Callable[[int], complex]]) -> Callable[[int], complex]:
    if callable(f_id):
        return f_id
    try:
        return TEST_FUNCTIONS[f_id]
    except KeyError as exc:
        raise InvalidRangeError(f"unknown test function id {f_id!r}") from exc


def _require_range(table: sieve.ArithmeticTable, N: int) -> None:
    if table.lo != 1 or table.hi <= N:
        raise InvalidRangeError(f"need a table on [1, {N}], got [{table.lo}, {table.hi})")


def _histogram(table: sieve.ArithmeticTable, N: int) -> np.ndarray:
    return np.bincount(table.omega[:N])


@dataclass(frozen=True)
class ShiftDiscrepancy:
    f_id: str
    N: int
    value: float
    sup_f: float


def shift_discrepancy(
    f_id: Union[str, Callable[[int], complex]],
    N: int,
    table: sieve.ArithmeticTable,
    *,
    sup_f: float = 1.0,
) -> ShiftDiscrepancy:
    """| E_{n<=N} f(Omega(n)+1) - E_{n<=N} f(Omega(n)) | from one table pass.

    For f(m) = (-1)^m the difference telescopes: each n contributes
    f(Omega+1) - f(Omega) = -2 lambda(n), so the value is exactly
    2|L(N)|/N; shift_alternating_exact returns that integer identity.
    """
    _require_range(table, N)
    f = resolve_test_function(f_id)
    counts = _histogram(table, N)
    acc = 0j
    for h, c in enumerate(counts.tolist()):
        if c:
            acc += c * (complex(f(h + 1)) - complex(f(h)))
    return ShiftDiscrepancy(
        f_id=f_id if isinstance(f_id, str) else getattr(f_id, "__name__", "custom"),
        N=N,
        value=abs(acc) / N,
        sup_f=sup_f,
    )


def shift_alternating_exact(table: sieve.ArithmeticTable, N: int) -> Fraction:
    """Exact value of the alternating-shift discrepancy: 2|L(N)|/N."""
    _require_range(table, N)
    counts = _histogram(table, N)
    L = 0
    for h, c in enumerate(counts.tolist()):
        L += c if h % 2 == 0 else -c
    return Fraction(2 * abs(L), N)


def liouville_mean_trace(
    N_grid: Sequence[int], table: sieve.ArithmeticTable
) -> list[dict]:
    """Rows (N, L(N), L(N)/N) along the grid."""
    N_max = max(N_grid)
    _require_range(table, N_max)
    lam = np.where(table.omega[:N_max] & 1, -1, 1).astype(np.int64)
    csum = np.cumsum(lam)
    rows = []
    for N in N_grid:
        L = int(csum[N - 1])
        rows.append({"N": N, "L": L, "mean": L / N, "abs_mean": abs(L) / N})
    return rows


def pillai_selberg_density(
    m: int, N: int, table: sieve.ArithmeticTable
) -> tuple[Fraction, ...]:
    """Exact densities of {n <= N : Omega(n) = r (mod m)}; they sum to 1."""
    if m < 1:
        raise InvalidRangeError(f"need m >= 1, got {m}")
    _require_range(table, N)
    counts = np.bincount(table.omega[:N] % m, minlength=m)
    dens = tuple(Fraction(int(c), N) for c in counts)
    if sum(dens) != 1:
        raise AssertionError("residue classes failed to partition [N]")
    return dens


def erdos_delange_weyl(
    alpha: Union[int, str, Fraction],
    N_grid: Sequence[int],
    table: sieve.ArithmeticTable,
) -> list[dict]:
    """|E_{n<=N} e^{2 pi i alpha Omega(n)}| along the grid.

    alpha must be exact (int, Fraction) or a decimal string with at least
    30 significant digits; binary floats are rejected because the Weyl sum
    magnifies exponent error linearly in Omega.
    """
    if isinstance(alpha, float):
        raise InvalidRangeError("supply alpha as str/Fraction/int, not a binary float")
    N_max = max(N_grid)
    _require_range(table, N_max)
    if isinstance(alpha, str) and len(alpha.strip().lstrip("-0.").replace(".", "")) < 30:
        raise InvalidRangeError("alpha string needs >= 30 significant digits")
    max_omega = int(table.omega[:N_max].max())
    with mpmath.workdps(60):
        a = mpmath.mpf(alpha) if isinstance(alpha, str) else mpmath.mpf(
            alpha.numerator
        ) / alpha.denominator if isinstance(alpha, Fraction) else mpmath.mpf(alpha)
        phases = []
        for h in range(max_omega + 1):
            z = mpmath.expjpi(2 * a * h)
            phases.append(complex(float(mpmath.re(z)), float(mpmath.im(z))))
    rows = []
    for N in N_grid:
        counts = _histogram(table, N)
        acc = sum(int(c) * phases[h] for h, c in enumerate(counts.tolist()) if c)
        rows.append({"N": N, "magnitude": abs(acc) / N})
    return rows


# -- symmetry formula ----------------------------------------------------------

def selberg_formula_trace(
    x_grid: Sequence[int],
    *,
    budget: int = sieve.DEFAULT_BUDGET,
    workers: int = 1,
) -> list[dict]:
    """sum_{p<=x} log^2 p + sum_{pq<=x} log p log q against 2x log x.

    The double sum runs over ordered prime pairs (p, q) with pq <= x, i.e.
    sum_p log p * theta(x/p).  Reported per grid point: the LHS, the ratio
    LHS/(2x log x), and the normalized deficit (LHS - 2x log x)/x whose
    empirical boundedness is the O(x) claim.
    """
    x_max = max(x_grid)
    pi = sieve.prime_pi_table(x_max, budget=budget, workers=workers)
    flags = np.diff(pi, prepend=0).astype(bool)
    primes = np.nonzero(flags)[0].astype(np.int64)
    logs = np.log(primes.astype(np.float64))
    cumlog = np.cumsum(logs)
    rows = []
    for x in sorted(x_grid):
        mask = primes <= x
        t1 = float(np.dot(logs[mask], logs[mask]))
        ps = primes[primes <= x // 2]
        if len(ps):
            idx = np.searchsorted(primes, (x / ps.astype(np.float64)), side="right")
            theta = np.where(idx > 0, cumlog[np.maximum(idx - 1, 0)], 0.0)
            t2 = float(np.dot(logs[: len(ps)], theta))
        else:
            t2 = 0.0
        lhs = t1 + t2
        main = 2 * x * math.log(x)
        rows.append(
            {
                "x": x,
                "lhs": lhs,
                "ratio": lhs / main,
                "normalized_deficit": (lhs - main) / x,
            }
        )
    return rows


# -- transfer audits -------------------------------------------------------------

@dataclass(frozen=True)
class TransferAudit:
    B: tuple[int, ...]
    N: int
    g_id: str
    lhs: complex
    rhs: complex
    difference: float
    bound: float
    tk_averaged: Fraction
    holds: bool


def _avg_g_shifted(
    table: sieve.ArithmeticTable, M: int, g: Callable[[int], complex], shift: int
) -> complex:
    counts = np.bincount(table.omega[:M])
    acc = 0j
    for h, c in enumerate(counts.tolist()):
        if c:
            acc += c * complex(g(h + shift))
    return acc / M


def transfer_audit(
    B: averages.WeightedSet,
    g_id: Union[str, Callable[[int], complex]],
    N: int,
    table: sieve.ArithmeticTable,
) -> TransferAudit:
    """Check |E_{n<=N} g(Omega) - E^log_{q in B} E_{n<=N/q} g(Omega+Omega(q))|.

    The bound is sqrt(averaged second moment) + 3/sqrt(N): Cauchy-Schwarz
    on [N] against the exact averaged deviation (which already contains its
    floor error), plus the replacement of (q/N) sum_{n<=floor(N/q)} by the
    plain average over [floor(N/q)], which costs at most q/N + 1/floor(N/q)
    per element; with N >= max(B)^2 both are <= 1/sqrt(N), and their
    log-average stays below 3/sqrt(N) with room to spare.
    """
    if N < max(B.elements) ** 2:
        raise InvalidRangeError("need N >= max(B)^2 for the floor bookkeeping")
    _require_range(table, N)
    g = resolve_test_function(g_id)
    lhs = _avg_g_shifted(table, N, g, 0)
    weight_total = B.logweight_total
    rhs = 0j
    for q in B.elements:
        omega_q = table.omega_at(q)
        M = N // q
        rhs += float(Fraction(1, q) / weight_total) * _avg_g_shifted(table, M, g, omega_q)
    tk = averages.tk_identity_check(B, N)
    bound = math.sqrt(float(tk.averaged_lhs)) + TRANSFER_FLOOR_CONSTANT / math.sqrt(N)
    diff = abs(lhs - rhs)
    return TransferAudit(
        B=B.elements,
        N=N,
        g_id=g_id if isinstance(g_id, str) else "custom",
        lhs=lhs,
        rhs=rhs,
        difference=diff,
        bound=bound,
        tk_averaged=tk.averaged_lhs,
        holds=diff <= bound,
    )


@dataclass(frozen=True)
class PairingAudit:
    N: int
    g_id: str
    k: int
    eta: Fraction
    lhs_primes: complex
    rhs_almost: complex
    difference: float
    bound: float
    holds: bool


def pairing_transfer_audit(
    pair,
    g_id: Union[str, Callable[[int], complex]],
    N: int,
    table: sieve.ArithmeticTable,
) -> PairingAudit:
    """Compare E^log over the paired sets of A(N/element), A(M) = E g(Omega+k).

    With (1-eta) p_j <= q_j <= (1+eta) p_j and N >= 2 max(B2)/eta, each
    per-index pair satisfies |A(floor(N/p_j)) - A(floor(N/q_j))| <= 3 eta
    (ratio distortion <= 2 eta plus a floor term <= eta), and replacing the
    p-weights by the q-weights in the log-average costs at most
    (1+eta)^2 - 1 <= 3 eta more, so the difference is bounded by 6 eta.
    Identical sets give a difference of exactly zero.
    """
    if not pair.verdicts.cardinality or not pair.verdicts.ratios:
        raise PairingError("pairing audit needs verified cardinality and ratio verdicts")
    eta = pair.eta
    maxq = max(max(pair.B1), max(pair.B2))
    if Fraction(N) < 2 * Fraction(maxq) / eta:
        raise InvalidRangeError(
            f"need N >= 2*max(B2)/eta = {float(2 * Fraction(maxq) / eta):.3g}"
        )
    _require_range(table, N)
    g = resolve_test_function(g_id)
    k = pair.k

    def logavg_A(elems: Sequence[int]) -> complex:
        weight = sum(Fraction(1, p) for p in elems)
        acc = 0j
        for p in elems:
            M = N // p
            if M < 1:
                raise InvalidRangeError(f"N too small: floor(N/{p}) = 0")
            acc += float(Fraction(1, p) / weight) * _avg_g_shifted(table, M, g, k)
        return acc

    lhs = logavg_A(pair.B1)
    rhs = logavg_A(pair.B2)
    diff = abs(lhs - rhs)
    bound = PAIRING_CONSTANT * float(eta)
    return PairingAudit(
        N=N,
        g_id=g_id if isinstance(g_id, str) else "custom",
        k=k,
        eta=eta,
        lhs_primes=lhs,
        rhs_almost=rhs,
        difference=diff,
        bound=bound,
        holds=diff <= bound,
    )


def prime_count_trace(x_grid: Sequence[int], *, budget: int = sieve.DEFAULT_BUDGET) -> list[dict]:
    """Informational pi(N) log N / N rows (no assertion attached)."""
    x_max = max(x_grid)
    pi = sieve.prime_pi_table(x_max, budget=budget)
    return [
        {"N": x, "pi": int(pi[x]), "pi_logN_over_N": int(pi[x]) * math.log(x) / x}
        for x in sorted(x_grid)
    ]


__all__ = [
    "ALPHA_GOLDEN",
    "ALPHA_SQRT2",
    "PAIRING_CONSTANT",
    "PairingAudit",
    "ShiftDiscrepancy",
    "TEST_FUNCTIONS",
    "TRANSFER_FLOOR_CONSTANT",
    "TransferAudit",
    "erdos_delange_weyl",
    "liouville_mean_trace",
    "pairing_transfer_audit",
    "pillai_selberg_density",
    "prime_count_trace",
    "resolve_test_function",
    "selberg_formula_trace",
    "shift_alternating_exact",
    "shift_discrepancy",
    "transfer_audit",
]
