"""Cesaro and logarithmic averages, the gcd-minus-one kernel, and the exact
second-moment identity for divisor indicator sums.

For a finite non-empty B of positive integers with a = sum_{q in B} 1/q, the
identity verified here is

    (1/N) sum_{n<=N} | sum_{q in B} 1_{q|n} - a |^2
        = sum_{q,q' in B} Phi(q,q') / (q q')  +  E,   |E| <= 3|B|^2/N,

with Phi(m, n) = gcd(m, n) - 1.  Every quantity is an exact Fraction; the
error term E is not estimated but computed.

Why 3|B|^2/N works: write S2 = (1/N) sum_q floor(N/q) and
S1 = (1/N) sum_{q,q'} floor(N/lcm(q,q')).  Each floor(N/m) = N/m - theta
with theta in [0, 1), so S2 = a - E2 with 0 <= E2 < |B|/N and
S1 = phi_double_sum + a^2 - E1 with 0 <= E1 < |B|^2/N.  Expanding the
square gives lhs = S1 - 2a*S2 + a^2 = phi_double_sum + 2a*E2 - E1, and
a <= |B| bounds |2a*E2 - E1| by 3|B|^2/N.  When lcm(B) | N every theta
vanishes and the difference is exactly zero.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence, Union

from pntkit.errors import EmptySetError, InvalidRangeError, UndefinedValueError

FuncLike = Union[Callable[[int], complex], Mapping[int, complex]]


def phi(m: int, n: int) -> int:
    """Phi(m, n) = gcd(m, n) - 1; symmetric, zero exactly on coprime pairs."""
    if m < 1 or n < 1:
        raise InvalidRangeError(f"need m, n >= 1, got {m}, {n}")
    return math.gcd(m, n) - 1


def _lookup(f: FuncLike, n: int):
    if isinstance(f, Mapping):
        try:
            return f[n]
        except KeyError as exc:
            raise UndefinedValueError(f"function table undefined at n={n}") from exc
    return f(n)


def cesaro_avg(f: FuncLike, A: Iterable[int]):
    """Plain mean (1/|A|) sum_{n in A} f(n); exact when values are rational."""
    points = list(A)
    if not points:
        raise EmptySetError("cesaro_avg over empty set")
    total = sum(_lookup(f, n) for n in points)
    if isinstance(total, Rational):
        return Fraction(total) / len(points)
    return total / len(points)


def log_avg(f: FuncLike, A: Iterable[int]):
    """Logarithmic mean: (sum f(n)/n) / (sum 1/n).

    Weights are exact rationals; with rational-valued f the result is an
    exact Fraction, otherwise complex.
    """
    points = list(A)
    if not points:
        raise EmptySetError("log_avg over empty set")
    denom = sum(Fraction(1, n) for n in points)
    values = [_lookup(f, n) for n in points]
    if all(isinstance(v, Rational) for v in values):
        num = sum(Fraction(v) / n for v, n in zip(values, points))
        return num / denom
    num = sum(v / n for v, n in zip(values, points))
    return num / float(denom)


@dataclass(frozen=True)
class WeightedSet:
    """A finite set B of positive integers with its exact log-weight sum."""

    elements: tuple[int, ...]
    logweight_total: Fraction

    @classmethod
    def of(cls, items: Iterable[int]) -> "WeightedSet":
        elems = sorted(items)
        if not elems:
            raise EmptySetError("WeightedSet must be non-empty")
        if elems[0] < 1:
            raise InvalidRangeError("WeightedSet elements must be >= 1")
        if any(a == b for a, b in zip(elems, elems[1:])):
            raise InvalidRangeError("WeightedSet elements must be distinct")
        total = sum(Fraction(1, q) for q in elems)
        return cls(tuple(elems), total)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class DeviationReport:
    """Both sides of the second-moment identity plus its explicit error budget.

    All fields are exact rationals.  averaged_* are the same quantities after
    dividing by (sum 1/q)^2, i.e. the log-averaged form.
    """

    N: int
    lhs: Fraction
    phi_double_sum: Fraction
    error_budget: Fraction
    averaged_lhs: Fraction
    averaged_rhs: Fraction

    @property
    def difference(self) -> Fraction:
        return self.lhs - self.phi_double_sum

    def to_json_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "N": self.N,
            "lhs": frac(self.lhs),
            "phi_double_sum": frac(self.phi_double_sum),
            "difference": frac(self.difference),
            "error_budget": frac(self.error_budget),
            "averaged_lhs": frac(self.averaged_lhs),
            "averaged_rhs": frac(self.averaged_rhs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def phi_double_sum(B: WeightedSet) -> Fraction:
    """sum_{q,q' in B} Phi(q,q') / (q q'), exact."""
    total = Fraction(0)
    elems = B.elements
    for i, q in enumerate(elems):
        total += Fraction(q - 1, q * q)
        for qp in elems[i + 1 :]:
            g = math.gcd(q, qp)
            if g > 1:
                total += 2 * Fraction(g - 1, q * qp)
    return total


def tk_identity_check(B: WeightedSet, N: int) -> DeviationReport:
    """Evaluate both sides of the identity exactly and assert the budget.

    The n-sum is evaluated in closed form: sum_n 1_{q|n} = floor(N/q) and
    sum_n 1_{q|n} 1_{q'|n} = floor(N/lcm(q,q')), both exact, so no floating
    point enters.  Arithmetic is arbitrary-precision throughout; there is no
    precision budget to exceed.
    """
    if N < 1:
        raise InvalidRangeError(f"need N >= 1, got {N}")
    a = B.logweight_total
    elems = B.elements
    s2_int = sum(N // q for q in elems)
    s1_int = 0
    for i, q in enumerate(elems):
        s1_int += N // q
        for qp in elems[i + 1 :]:
            s1_int += 2 * (N // (q * qp // math.gcd(q, qp)))
    lhs = Fraction(s1_int, N) - 2 * a * Fraction(s2_int, N) + a * a
    rhs = phi_double_sum(B)
    budget = Fraction(3 * len(elems) ** 2, N)
    if abs(lhs - rhs) > budget:
        raise AssertionError(
            f"identity budget violated: |{lhs - rhs}| > {budget} (B={elems}, N={N})"
        )
    a2 = a * a
    return DeviationReport(
        N=N,
        lhs=lhs,
        phi_double_sum=rhs,
        error_budget=budget,
        averaged_lhs=lhs / a2,
        averaged_rhs=rhs / a2,
    )


@dataclass(frozen=True)
class TKTrialRecord:
    B: tuple[int, ...]
    N: int
    difference: Fraction
    budget: Fraction
    ratio: Fraction  # |difference| / (|B|^2 / N)
    lcm_divides: bool


@dataclass(frozen=True)
class TKAuditReport:
    trials: int
    seed: int
    records: tuple[TKTrialRecord, ...]
    max_ratio: Fraction
    all_within_budget: bool


def _lcm_of(elems: Sequence[int]) -> int:
    out = 1
    for q in elems:
        out = out * q // math.gcd(out, q)
    return out


def tk_error_constant_audit(
    trials: int,
    seed: int,
    *,
    max_element: int = 300,
    max_size: int = 30,
    max_N: int = 10**5,
) -> TKAuditReport:
    """Randomized audit of the explicit 3|B|^2/N budget.

    Every fifth trial forces lcm(B) | N (sampling B from divisors of a smooth
    number), where the difference must vanish identically.  Reports the
    maximal observed |difference| / (|B|^2/N); the constant 3 is never
    approached in practice, but the assertion inside tk_identity_check is
    what the audit certifies.
    """
    if trials < 1:
        raise InvalidRangeError("need trials >= 1")
    rng = random.Random(seed)
    smooth = [d for d in range(1, 73) if 720 % d == 0]  # divisors of 720
    records = []
    max_ratio = Fraction(0)
    ok = True
    for t in range(trials):
        if t % 5 == 4:
            size = rng.randint(1, min(len(smooth), 8))
            elems = rng.sample(smooth, size)
            L = _lcm_of(elems)
            N = L * rng.randint(1, max(1, max_N // L))
        else:
            size = rng.randint(1, max_size)
            elems = rng.sample(range(1, max_element + 1), size)
            N = rng.randint(1, max_N)
        B = WeightedSet.of(elems)
        report = tk_identity_check(B, N)
        diff = report.difference
        lcm_divides = N % _lcm_of(elems) == 0
        if lcm_divides and diff != 0:
            ok = False
        ratio = abs(diff) * N / Fraction(len(B) ** 2)
        if abs(diff) > report.error_budget:
            ok = False
        if ratio > max_ratio:
            max_ratio = ratio
        records.append(
            TKTrialRecord(
                B=B.elements,
                N=N,
                difference=diff,
                budget=report.error_budget,
                ratio=ratio,
                lcm_divides=lcm_divides,
            )
        )
    return TKAuditReport(
        trials=trials,
        seed=seed,
        records=tuple(records),
        max_ratio=max_ratio,
        all_within_budget=ok,
    )


__all__ = [
    "DeviationReport",
    "TKAuditReport",
    "TKTrialRecord",
    "WeightedSet",
    "cesaro_avg",
    "log_avg",
    "phi",
    "phi_double_sum",
    "tk_identity_check",
    "tk_error_constant_audit",
]
