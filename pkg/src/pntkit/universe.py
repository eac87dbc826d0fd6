"""Prime universes: the dependency-injection seam for the set-pair construction.

A universe answers window censuses over (8^x, 8^{x+delta}], materializes
window blocks, and fixes the scale constants (x0, eps0, eps1).  Two
implementations:

RealUniverse
    Censuses and blocks come from the sieve.  Faithful but only usable for
    the window machinery at small exponents; the full set-pair pipeline
    needs 8^x at astronomically large x and is reported as infeasible.

SyntheticUniverse
    Window counts are virtual: a counting function Pi(x) = floor(g * 8^x/x)
    with g = 39/250 places pseudo-primes along the exponent axis.  That
    density satisfies both window bounds by construction:
      count(x, x+1]   >= g*(8x/(x+1) - 1) * 8^x/x - 1 >= 8^x/x  for x >= 13,
      count(x, x+eps] <= g*(8^eps - 1) * 8^x/x + 1 <= sqrt(eps) * 8^x/x
                                                     for eps <= 0.95,
    with absolute margins >> 1 at x >= 13, so the floor slop never bites.
    Block members are genuine primes ("labels") handed out by a global
    registry, decoupled from window positions, which keeps Omega, gcd and
    element ratios honest integers while the counting side runs at a
    materializable scale.  Block sizes follow the supermultiplicative law
    floor(2^((n-16)/16)) instead of floor(D*8^n/n): the literal base-8 law
    exceeds 3*10^8 members at the second index level for every D >= 1/1024
    and cannot be materialized (see the block_size docstring).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from pntkit import primeutil, sieve
from pntkit.errors import InvalidRangeError

GRID_DENOM = 1024  # position quantum for chosen points, 1/1024
SYNTH_GAMMA = Fraction(39, 250)
SYNTH_X0 = 13
SYNTH_CAP_SCALE = 16


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for non-negative integer n, exact."""
    if n < 0 or k < 1:
        raise InvalidRangeError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = int(round(n ** (1.0 / k))) + 1
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


class RealUniverse:
    """Windows over the genuine primes, backed by the segmented sieve."""

    kind = "real-primes"

    def __init__(
        self,
        *,
        x0: int = 1,
        eps0: Fraction = Fraction(1, 4),
        eps1: Fraction = Fraction(1, 5),
        budget: int = sieve.DEFAULT_BUDGET,
        workers: int = 1,
    ) -> None:
        # x0/eps0 defaults are calibration outputs of the window-bound
        # sweeps (calibrate_x0_eps0), not assumptions.
        self.x0 = x0
        self.eps0 = Fraction(eps0)
        self.eps1 = Fraction(eps1)
        self.pair_eps_cap = Fraction(eps1)
        self.budget = budget
        self.workers = workers
        self._count_cache: dict = {}

    def value_eps_cap(self, eta: Fraction) -> Fraction:
        """Largest grid eps with 8^(2 eps) <= 1 + eta, i.e. eps <= log(1+eta)/log 64."""
        cap = math.log(1 + float(eta)) / math.log(64)
        return Fraction(int(cap * GRID_DENOM), GRID_DENOM)

    def window_count(self, x: Fraction, delta: Fraction) -> int:
        key = (x, delta)
        if key not in self._count_cache:
            lo = sieve.floor_pow8(x)
            hi = sieve.floor_pow8(x + delta)
            if hi <= lo:
                self._count_cache[key] = 0
            else:
                self._count_cache[key] = sieve.census(
                    lo, hi, budget=self.budget, workers=self.workers
                ).count
        return self._count_cache[key]

    def block_size(self, D: Fraction, n: int) -> int:
        """floor(D * 8^n / n), the literal richness law."""
        return (D.numerator * 8**n) // (D.denominator * n)

    def window_primes(
        self,
        x: Fraction,
        delta: Fraction,
        size: int,
        targets: Optional[Sequence[int]] = None,
    ) -> tuple[int, ...]:
        """The `size` smallest primes of the window (targets are ignored:
        real windows confine values by themselves)."""
        lo = sieve.floor_pow8(x)
        hi = sieve.floor_pow8(x + delta)
        cen = sieve.census(lo, hi, materialize=True, budget=self.budget, workers=self.workers)
        if cen.count < size:
            raise InvalidRangeError(
                f"window (8^{x}, 8^{x + delta}] holds {cen.count} primes, need {size}"
            )
        return cen.primes[:size]

    def is_prime_value(self, p: int) -> bool:
        return primeutil.is_prime(p)


class _LabelRegistry:
    """Hands out globally distinct genuine primes."""

    def __init__(self) -> None:
        self._used: set[int] = set()

    def take_above(self, value: int) -> int:
        p = primeutil.next_prime(value)
        while p in self._used:
            p = primeutil.next_prime(p)
        self._used.add(p)
        return p

    def take_block(self, anchor: int, count: int) -> tuple[int, ...]:
        out = []
        cursor = anchor - 1
        for _ in range(count):
            p = self.take_above(cursor)
            out.append(p)
            cursor = p
        return tuple(out)

    def __contains__(self, p: int) -> bool:
        return p in self._used


class SyntheticUniverse:
    """Virtual window counts at base-8 densities; genuine prime labels.

    label_coeff and label_exp_denom steer where labels live on the integer
    line: a block at position x is anchored near label_coeff * 2^(x/denom).
    Anchors grow slowly enough that a full pipeline run stays within
    deterministic-primality range.
    """

    kind = "synthetic"

    def __init__(
        self,
        *,
        seed: int = 0,
        x0: int = SYNTH_X0,
        gamma: Fraction = SYNTH_GAMMA,
        eps0: Fraction = Fraction(19, 20),
        eps1: Fraction = Fraction(3, 5),
        pair_eps_cap: Fraction = Fraction(19, 20),
        cap_scale: int = SYNTH_CAP_SCALE,
        label_coeff: int = 10,
        label_exp_denom: int = 16,
    ) -> None:
        # the seed shifts where labels live on the integer line; window
        # counting is seed-independent, so every seed satisfies the bounds
        self.seed = seed
        self.x0 = x0
        self.gamma = Fraction(gamma)
        self.eps0 = Fraction(eps0)
        self.eps1 = Fraction(eps1)
        self.pair_eps_cap = Fraction(pair_eps_cap)
        self.cap_scale = cap_scale
        self.label_coeff = label_coeff + (seed % 17)
        self.label_exp_denom = label_exp_denom
        self.registry = _LabelRegistry()
        self._pi_cache: dict = {}

    def value_eps_cap(self, eta: Fraction) -> Optional[Fraction]:
        """No base-8 value confinement: element closeness is arranged by the
        label allocator and then checked directly, so eps is only capped by
        the window-side constants."""
        return None

    # -- virtual counting ----------------------------------------------------

    def _virtual_pi(self, x: Fraction) -> int:
        """floor(gamma * 8^x / x): pseudo-primes at or below position x."""
        x = Fraction(x)
        if x in self._pi_cache:
            return self._pi_cache[x]
        t = 3 * x
        if t.denominator == 1:
            val = Fraction(self.gamma.numerator * (1 << int(t)), self.gamma.denominator) / x
            out = val.numerator // val.denominator
        else:
            bits = int(t) + 1
            prec = bits + 64
            prev = None
            out = None
            for _ in range(6):
                with mpmath.workprec(prec):
                    v = (
                        mpmath.power(2, mpmath.mpf(t.numerator) / t.denominator)
                        * self.gamma.numerator
                        / self.gamma.denominator
                        / (mpmath.mpf(x.numerator) / x.denominator)
                    )
                    fl = int(mpmath.floor(v))
                if fl == prev:
                    out = fl
                    break
                prev = fl
                prec *= 2
            if out is None:
                raise RuntimeError(f"virtual pi({x}) did not stabilize")
        self._pi_cache[x] = out
        return out

    def window_count(self, x: Fraction, delta: Fraction) -> int:
        x = Fraction(x)
        delta = Fraction(delta)
        return self._virtual_pi(x + delta) - self._virtual_pi(x)

    # -- materialization -------------------------------------------------------

    def block_size(self, D: Fraction, n: int) -> int:
        """Materialization law floor(2^((n - 16)/16)).

        The literal law floor(D * 8^n / n) cannot be materialized for any
        admissible D: index levels satisfy s_{i+1} > max(A_1 + ... + A_i),
        so the second level already sits at n >= 14 where
        floor(D * 8^14 / 14) >= 3.07e8 even at the quantization floor
        D = 1/1024.  The replacement law is supermultiplicative in the way
        the product-set argument needs (prod_i cap(n_i) <= cap(floor(z))
        whenever sum n_i <= floor(z) + 1), which build_set_pair asserts per
        tuple.  D still governs window membership; it no longer scales
        block cardinalities.
        """
        s = self.cap_scale
        if n <= s:
            return 0
        return iroot(1 << (n - s), s)

    def label_anchor(self, x: Fraction) -> int:
        """Integer anchor label_coeff * 2^(x/denom) for a block at position x."""
        with mpmath.workprec(96):
            v = self.label_coeff * mpmath.power(
                2, mpmath.mpf(Fraction(x).numerator) / (Fraction(x).denominator * self.label_exp_denom)
            )
            return int(mpmath.ceil(v))

    def window_primes(
        self,
        x: Fraction,
        delta: Fraction,
        size: int,
        targets: Optional[Sequence[int]] = None,
    ) -> tuple[int, ...]:
        """Materialize a block of `size` labels for the window at x.

        Without targets: consecutive unused primes from the position anchor.
        With targets (the z-blocks backing Q): one unused prime just above
        each target, then the remaining labels above the last one, so the
        `len(targets)` smallest block members are the target-adjacent ones.
        """
        count = self.window_count(x, delta)
        if count < size:
            raise InvalidRangeError(
                f"virtual window at {x} holds {count} pseudo-primes, need {size}"
            )
        if targets is None:
            return self.registry.take_block(self.label_anchor(x), size)
        if len(targets) > size:
            raise InvalidRangeError("more targets than block capacity")
        out = [self.registry.take_above(t) for t in sorted(targets)]
        extra = self.registry.take_block(out[-1], size - len(out)) if size > len(out) else ()
        return tuple(out) + tuple(extra)

    def is_prime_value(self, p: int) -> bool:
        return primeutil.is_prime(p)


def synthetic_bound_check(
    universe: SyntheticUniverse,
    xs: Iterable[Fraction],
    eps_values: Iterable[Fraction],
) -> bool:
    """Verify the generator's own window bounds on a grid.

    Both hold by construction with margins >= 1e8 at x >= 13, so the
    96-bit float comparison against the irrational bounds is sound.
    """
    ok = True
    for x in xs:
        x = Fraction(x)
        bound = _pow8_over_x(x)
        if universe.window_count(x, Fraction(1)) < bound:
            ok = False
        for eps in eps_values:
            eps = Fraction(eps)
            if eps > universe.eps0:
                continue
            if universe.window_count(x, eps) > math.sqrt(float(eps)) * bound:
                ok = False
    return ok


def _pow8_over_x(x: Fraction) -> float:
    with mpmath.workprec(96):
        v = mpmath.power(2, 3 * mpmath.mpf(x.numerator) / x.denominator) / (
            mpmath.mpf(x.numerator) / x.denominator
        )
        return float(v)


__all__ = [
    "GRID_DENOM",
    "RealUniverse",
    "SyntheticUniverse",
    "iroot",
    "synthetic_bound_check",
]
