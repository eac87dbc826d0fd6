"""Deterministic primality and prime enumeration for label-scale integers.

Miller-Rabin with fixed base sets is a proven deterministic test below
3.3e24; nothing here is probabilistic.  Intended for the synthetic
construction's labels (<= ~1e13), far inside the proven range.
"""

from __future__ import annotations

from pntkit.errors import InvalidRangeError

_MR_LIMITS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality for n below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_LIMITS[-1][0]:
        raise InvalidRangeError(f"{n} exceeds the proven deterministic range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for limit, bases in _MR_LIMITS:
        if n < limit:
            witnesses = bases
            break
    for a in witnesses:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = n + 1
    if c <= 2:
        return 2
    if c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


def omega_by_trial_division(n: int) -> int:
    """Omega(n) by bare trial division; the sieve's independent oracle."""
    if n < 1:
        raise InvalidRangeError(f"need n >= 1, got {n}")
    count = 0
    rest = n
    d = 2
    while d * d <= rest:
        while rest % d == 0:
            rest //= d
            count += 1
        d += 1 if d == 2 else 2
    if rest > 1:
        count += 1
    return count


__all__ = ["is_prime", "next_prime", "omega_by_trial_division"]
