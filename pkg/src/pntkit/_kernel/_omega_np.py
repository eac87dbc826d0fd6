"""Pure numpy fallback for the hot sieve kernel.

Same contract as the compiled version: given a half-open segment [lo, hi)
and the base primes up to isqrt(hi - 1), fill omega[i] with the number of
prime factors of lo + i counted with multiplicity.
"""

import numpy as np


def omega_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    n = hi - lo
    omega = np.zeros(n, dtype=np.uint8)
    rem = np.arange(lo, hi, dtype=np.int64)
    top = hi - 1
    for p in primes:
        p = int(p)
        q = p
        while True:
            start = ((lo + q - 1) // q) * q
            if start < hi:
                i0 = start - lo
                omega[i0::q] += 1
                rem[i0::q] //= p
            if q > top // p:
                break
            q *= p
    omega[rem > 1] += 1
    return omega
