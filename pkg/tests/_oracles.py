"""Brute-force oracles, kept independent of the package's code paths."""

from fractions import Fraction


def omega_oracle(n: int) -> int:
    count = 0
    rest = n
    d = 2
    while d * d <= rest:
        while rest % d == 0:
            rest //= d
            count += 1
        d += 1
    if rest > 1:
        count += 1
    return count


def is_prime_oracle(n: int) -> bool:
    return n >= 2 and omega_oracle(n) == 1


def pi_oracle(n: int) -> int:
    return sum(1 for m in range(2, n + 1) if is_prime_oracle(m))


def tk_lhs_brute(elements, N: int) -> Fraction:
    """(1/N) sum_{n<=N} (sum_q 1_{q|n} - sum_q 1/q)^2, term by term."""
    a = sum(Fraction(1, q) for q in elements)
    total = Fraction(0)
    for n in range(1, N + 1):
        c = sum(1 for q in elements if n % q == 0)
        total += (c - a) ** 2
    return total / N


def phi_logavg_brute(elements) -> Fraction:
    """Literal double sum of (gcd-1)/(mn) over the normalizing square."""
    import math

    num = Fraction(0)
    den = Fraction(0)
    for m in elements:
        den += Fraction(1, m)
        for n in elements:
            g = math.gcd(m, n)
            if g > 1:
                num += Fraction(g - 1, m * n)
    return num / (den * den)


def selberg_lhs_brute(x: int) -> float:
    """Direct enumeration of log^2 p and ordered pairs log p log q with pq <= x."""
    import math

    primes = [p for p in range(2, x + 1) if is_prime_oracle(p)]
    t1 = sum(math.log(p) ** 2 for p in primes)
    t2 = sum(
        math.log(p) * math.log(q)
        for p in primes
        for q in primes
        if p * q <= x
    )
    return t1 + t2
