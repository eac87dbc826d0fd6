"""Segmented sieve for Omega(n), the Liouville function, and prime censuses.

Omega(n) is the number of prime factors of n counted with multiplicity;
lambda(n) = (-1)^Omega(n).  Everything here is deterministic: a table is a
pure function of (lo, hi), independent of segment size and worker count,
so parallel runs are bit-identical to serial ones.
"""

from __future__ import annotations

import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import mpmath
import numpy as np

from pntkit._kernel import omega_segment
from pntkit.errors import BudgetExceededError, InvalidRangeError

DEFAULT_BUDGET = 2**40
DEFAULT_SEGMENT_SIZE = 2**22

_CACHE_MAGIC = b"OMGT"
_CACHE_VERSION = 1
CACHE_DIR_ENV = "PNTKIT_CACHE_DIR"


def estimated_work(lo: int, hi: int) -> int:
    """Work model for the budget guard.

    A segmented factor sieve touches each of the hi - lo cells about
    ln ln hi times (one hit per prime power divisor), so we charge
    (hi - lo) * ceil(ln ln hi) units.
    """
    if hi <= 16:
        return hi - lo
    return (hi - lo) * max(1, math.ceil(math.log(math.log(hi))))


def check_budget(lo: int, hi: int, budget: int) -> None:
    needed = estimated_work(lo, hi)
    if needed > budget:
        raise BudgetExceededError(
            f"sieve range [{lo}, {hi}) needs ~{needed} work units, budget is {budget}",
            needed=needed,
            budget=budget,
        )


def base_primes(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (simple bool sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


@dataclass(frozen=True)
class ArithmeticTable:
    """Contiguous table of Omega values on [lo, hi).

    omega[i] = Omega(lo + i).  Immutable once built; safe to share across
    threads.
    """

    lo: int
    hi: int
    omega: np.ndarray

    def __post_init__(self) -> None:
        self.omega.setflags(write=False)

    def _index(self, n: int) -> int:
        if not (self.lo <= n < self.hi):
            raise InvalidRangeError(f"n={n} outside table range [{self.lo}, {self.hi})")
        return n - self.lo

    def omega_at(self, n: int) -> int:
        return int(self.omega[self._index(n)])

    def liouville_at(self, n: int) -> int:
        return -1 if self.omega_at(n) & 1 else 1

    def is_prime(self, n: int) -> bool:
        return self.omega_at(n) == 1


@dataclass(frozen=True)
class IntervalCensus:
    """Count (and optionally the list) of primes in the real interval (a, b]."""

    a: object
    b: object
    count: int
    primes: Optional[tuple] = None

    def __post_init__(self) -> None:
        if self.primes is not None and len(self.primes) != self.count:
            raise InvalidRangeError("materialized prime list does not match count")


def _iter_segments(
    lo: int,
    hi: int,
    primes: np.ndarray,
    segment_size: int,
    workers: int,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (seg_lo, omega array) in ascending segment order.

    Workers only change how segments are computed, never the order in which
    they are delivered, which keeps every consumer deterministic.
    """
    bounds = []
    s = lo
    while s < hi:
        e = min(s + segment_size, hi)
        bounds.append((s, e))
        s = e
    if workers <= 1 or len(bounds) == 1:
        for s, e in bounds:
            yield s, omega_segment(s, e, primes)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(omega_segment, s, e, primes) for s, e in bounds]
        for (s, _e), fut in zip(bounds, futures):
            yield s, fut.result()


def sieve_range(
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    cache_dir: Optional[str] = None,
) -> ArithmeticTable:
    """Exact Omega table on [lo, hi).

    Deterministic for fixed (lo, hi) regardless of segment size or worker
    count.  When ``cache_dir`` (or the PNTKIT_CACHE_DIR environment
    variable) is set, tables are written to / served from disk.
    """
    if not (1 <= lo < hi):
        raise InvalidRangeError(f"need 1 <= lo < hi, got lo={lo} hi={hi}")
    check_budget(lo, hi, budget)

    cache_dir = cache_dir or os.environ.get(CACHE_DIR_ENV)
    cache_path = None
    if cache_dir:
        cache_path = os.path.join(cache_dir, f"omega_{lo}_{hi}.tbl")
        if os.path.exists(cache_path):
            return load_table(cache_path)

    primes = base_primes(math.isqrt(hi - 1))
    out = np.empty(hi - lo, dtype=np.uint8)
    for seg_lo, seg in _iter_segments(lo, hi, primes, segment_size, workers):
        out[seg_lo - lo : seg_lo - lo + len(seg)] = seg
    table = ArithmeticTable(lo, hi, out)

    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        save_table(table, cache_path)
    return table


def liouville(n: int, table: ArithmeticTable) -> int:
    """lambda(n) = (-1)^Omega(n), read from the table."""
    return table.liouville_at(n)


def liouville_summatory(
    N: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """L(N) = sum_{n<=N} lambda(n), streamed segment by segment."""
    if N < 1:
        raise InvalidRangeError(f"need N >= 1, got {N}")
    check_budget(1, N + 1, budget)
    primes = base_primes(math.isqrt(N))
    total = 0
    for _seg_lo, seg in _iter_segments(1, N + 1, primes, segment_size, workers):
        odd = int(np.count_nonzero(seg & 1))
        total += len(seg) - 2 * odd
    return total


def _floor_endpoint(x) -> int:
    """Floor of a real endpoint given as int, Fraction, or float.

    Floats are taken at their exact binary value; endpoints of the form 8^x
    must be resolved with floor_pow8 before calling census.
    """
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    return math.floor(x)


def census(
    a,
    b,
    *,
    materialize: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> IntervalCensus:
    """Exact count of primes in the real interval (a, b].

    The integers involved are floor(a) < n <= floor(b); primality is
    Omega(n) == 1.  With ``materialize`` the sorted prime list is attached.
    """
    if not (1 <= a < b):
        raise InvalidRangeError(f"need 1 <= a < b, got a={a} b={b}")
    lo_int = _floor_endpoint(a) + 1
    hi_int = _floor_endpoint(b) + 1
    if lo_int >= hi_int:
        return IntervalCensus(a, b, 0, () if materialize else None)
    lo_int = max(lo_int, 2)
    check_budget(lo_int, hi_int, budget)
    primes = base_primes(math.isqrt(hi_int - 1))
    count = 0
    found: list[int] = []
    for seg_lo, seg in _iter_segments(lo_int, hi_int, primes, segment_size, workers):
        mask = seg == 1
        count += int(np.count_nonzero(mask))
        if materialize:
            found.extend((np.nonzero(mask)[0] + seg_lo).tolist())
    return IntervalCensus(a, b, count, tuple(found) if materialize else None)


def prime_pi_table(
    limit: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> np.ndarray:
    """pi(0..limit) as an int64 array; pi[n] = number of primes <= n."""
    if limit < 1:
        raise InvalidRangeError(f"need limit >= 1, got {limit}")
    check_budget(1, limit + 1, budget)
    primes = base_primes(math.isqrt(limit))
    pi = np.zeros(limit + 1, dtype=np.int64)
    for seg_lo, seg in _iter_segments(1, limit + 1, primes, segment_size, workers):
        pi[seg_lo : seg_lo + len(seg)] = (seg == 1).astype(np.int64)
    return np.cumsum(pi)


# -- exact powers of 8 -------------------------------------------------------

def pow8_is_integer(x) -> bool:
    """True iff 8^x is an exact integer for this exponent.

    Exponents arrive as ints, binary floats, or Fractions; 8^x = 2^(3x) is
    an integer exactly when 3x is a non-negative integer.
    """
    t = 3 * Fraction(x)
    return t.denominator == 1 and t >= 0


def floor_pow8(x) -> int:
    """floor(8^x), correctly rounded for any real exponent x >= 0.

    Integer-valued 8^x is computed exactly; otherwise 2^(3x) is evaluated
    with mpmath at escalating precision until two consecutive precisions
    agree on the floor, which breaks endpoint ties reproducibly.
    """
    t = 3 * Fraction(x)
    if t < 0:
        raise InvalidRangeError(f"need x >= 0, got {x}")
    if t.denominator == 1:
        return 1 << int(t)
    bits = int(t) + 1
    prev = None
    prec = bits + 64
    for _ in range(6):
        with mpmath.workprec(prec):
            val = mpmath.power(
                2, mpmath.mpf(t.numerator) / mpmath.mpf(t.denominator)
            )
            fl = int(mpmath.floor(val))
        if fl == prev:
            return fl
        prev = fl
        prec *= 2
    raise RuntimeError(f"floor(8^{x}) did not stabilize; exponent too close to a tie")


# -- binary table cache ------------------------------------------------------

def save_table(table: ArithmeticTable, path: str) -> None:
    """Write a table as little-endian header (magic, version, lo, hi) + bytes."""
    header = struct.pack("<4sIQQ", _CACHE_MAGIC, _CACHE_VERSION, table.lo, table.hi)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(table.omega.tobytes())
    os.replace(tmp, path)


def load_table(path: str) -> ArithmeticTable:
    with open(path, "rb") as fh:
        header = fh.read(struct.calcsize("<4sIQQ"))
        magic, version, lo, hi = struct.unpack("<4sIQQ", header)
        if magic != _CACHE_MAGIC or version != _CACHE_VERSION:
            raise InvalidRangeError(f"not a table cache file: {path}")
        data = fh.read(hi - lo)
    if len(data) != hi - lo:
        raise InvalidRangeError(f"truncated table cache: {path}")
    return ArithmeticTable(lo, hi, np.frombuffer(data, dtype=np.uint8).copy())


def omega_histogram(table: ArithmeticTable, upto: Optional[int] = None) -> np.ndarray:
    """Counts of each Omega value over [lo, min(hi, upto + 1))."""
    end = table.hi if upto is None else min(table.hi, upto + 1)
    if end <= table.lo:
        raise InvalidRangeError("histogram range is empty")
    return np.bincount(table.omega[: end - table.lo])


__all__ = [
    "ArithmeticTable",
    "IntervalCensus",
    "DEFAULT_BUDGET",
    "DEFAULT_SEGMENT_SIZE",
    "CACHE_DIR_ENV",
    "base_primes",
    "census",
    "check_budget",
    "estimated_work",
    "floor_pow8",
    "liouville",
    "liouville_summatory",
    "load_table",
    "omega_histogram",
    "pow8_is_integer",
    "prime_pi_table",
    "save_table",
    "sieve_range",
]
