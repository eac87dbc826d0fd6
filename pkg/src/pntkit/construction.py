"""Constructive window, witness, and set-pair machinery.

The pipeline: rich windows on the exponent axis (found by a pigeonhole
replay), a sum-witness lemma that aligns k unit-interval points with a
single target window, a stride-separated index family, and finally the
pair (B1, B2) of a prime set and a k-almost-prime set with paired
enumerations.  Positions are exact Fractions throughout; chosen points sit
on a 1/1024 grid, so reruns are bit-identical.

Where the text behind this construction says "pick any", the smallest
admissible choice is taken: smallest shift t, lexicographically smallest
non-consecutive block pair, smallest z, smallest primes for blocks and
their Q-subsets, smallest multiples for the index sets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from pntkit.errors import (
    BudgetExceededError,
    ConstructionError,
    EmptySetError,
    HypothesisViolationError,
    InfeasibleScaleError,
    InvalidRangeError,
    NoWitnessError,
)
from pntkit.universe import GRID_DENOM

D_QUANTUM = 1024


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def min_k_for(eps: Fraction) -> int:
    """ceil(2 / eps^4), the least admissible witness length."""
    return _ceil_frac(Fraction(2) / Fraction(eps) ** 4)


# -- membership oracles -------------------------------------------------------

class GridPatternX:
    """X given by fixed fractional offsets: members are m + f, f in fracs."""

    def __init__(self, fracs: Sequence[Fraction], x0=1) -> None:
        fs = sorted(Fraction(f) for f in fracs)
        if not fs or fs[0] < 0 or fs[-1] >= 1:
            raise InvalidRangeError("fracs must lie in [0, 1)")
        self.fracs = tuple(fs)
        self.x0 = Fraction(x0)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return x >= self.x0 and (x - _floor_frac(x)) in self.fracs

    def pair_in_unit(self, n: int, eps: Fraction) -> tuple[Fraction, Fraction]:
        eps = Fraction(eps)
        tiny = eps**4
        for fa in self.fracs:
            for fb in self.fracs:
                if fb <= fa:
                    continue
                if tiny < fb - fa < eps:
                    x, y = n + fa, n + fb
                    if x >= self.x0:
                        return x, y
        raise HypothesisViolationError(
            f"no member pair with gap in ({float(tiny):.4f}, {float(eps):.4f}) in [{n}, {n + 1})"
        )

    def smallest_member_in_open(self, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
        lo, hi = Fraction(lo), Fraction(hi)
        m = _floor_frac(lo)
        while Fraction(m) < hi:
            for f in self.fracs:
                c = m + f
                if lo < c < hi and c >= self.x0:
                    return c
            m += 1
        return None


class CensusThresholdX:
    """X = grid points whose delta-window census clears a richness floor.

    Membership uses the most permissive quantized threshold (D = 1/1024);
    the run-level D is computed afterwards from the windows actually used,
    which can only relax membership for those points.
    """

    def __init__(self, universe, delta: Fraction, D: Fraction = Fraction(1, D_QUANTUM)) -> None:
        self.universe = universe
        self.delta = Fraction(delta)
        self.D = Fraction(D)
        self.x0 = Fraction(universe.x0)
        self._member_cache: dict = {}
        self._pair_cache: dict = {}

    def _threshold(self, n: int) -> int:
        return max(1, (self.D.numerator * 8**n) // (self.D.denominator * n))

    def contains(self, x) -> bool:
        x = Fraction(x)
        if x < self.x0 or (x * GRID_DENOM).denominator != 1:
            return False
        if x not in self._member_cache:
            n = _floor_frac(x)
            count = self.universe.window_count(x, self.delta)
            self._member_cache[x] = count >= self._threshold(n)
        return self._member_cache[x]

    def pair_in_unit(self, n: int, eps: Fraction) -> tuple[Fraction, Fraction]:
        eps = Fraction(eps)
        key = (n, eps)
        if key in self._pair_cache:
            return self._pair_cache[key]
        tiny = eps**4
        gmin = Fraction(_floor_frac(tiny * GRID_DENOM) + 1, GRID_DENOM)
        for jx in range(GRID_DENOM):
            x = n + Fraction(jx, GRID_DENOM)
            if x + gmin >= n + 1 or not self.contains(x):
                continue
            jy = 0
            while True:
                y = x + gmin + Fraction(jy, GRID_DENOM)
                if y - x >= eps or y >= n + 1:
                    break
                if self.contains(y):
                    self._pair_cache[key] = (x, y)
                    return x, y
                jy += 1
        raise HypothesisViolationError(
            f"no grid member pair with gap in (eps^4, eps) in [{n}, {n + 1})"
        )

    def smallest_member_in_open(self, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
        lo, hi = Fraction(lo), Fraction(hi)
        j = _floor_frac(lo * GRID_DENOM) + 1
        while Fraction(j, GRID_DENOM) < hi:
            c = Fraction(j, GRID_DENOM)
            if self.contains(c):
                return c
            j += 1
        return None


# -- window finding (pigeonhole replay) ---------------------------------------

@dataclass(frozen=True)
class WindowPick:
    """Result of the two-window search inside [n, n+1)."""

    n: int
    x: Fraction
    y: Fraction
    D: Fraction
    count_x: int
    count_y: int
    t: Fraction
    block_pair: tuple[int, int]


@dataclass(frozen=True)
class WindowFamily:
    """Admissible window starts with a common richness constant D."""

    delta: Fraction
    D: Fraction
    members: tuple[Fraction, ...]

    def __contains__(self, x) -> bool:
        return Fraction(x) in self.members


def quantized_richness(count: int, n: int) -> Fraction:
    """Largest multiple of 1/1024 with floor(D * 8^n / n) <= count."""
    q = (D_QUANTUM * count * n) // (8**n)
    return Fraction(min(q, D_QUANTUM - 1), D_QUANTUM)


def find_windows(universe, n: int, eps, delta) -> WindowPick:
    """Replay of the two-rich-windows search inside [n, n+1).

    Pigeonhole over ceil(1/eps) shifts finds a rich eps-window at t; the
    window is covered by K = ceil(eps^-3) blocks of width eps^4; the best
    admissible non-consecutive block pair is taken (requiring
    (b - a + 1) eps^4 <= eps so that eps^4 < y - x < eps is forced); a
    final pigeonhole over delta-shifts inside each block picks x and y.
    D is the largest quantized constant both windows clear.
    """
    eps = Fraction(eps)
    delta = Fraction(delta)
    if n < universe.x0:
        raise InvalidRangeError(f"n={n} below universe x0={universe.x0}")
    if not 0 < eps <= universe.eps1:
        raise InvalidRangeError(f"need 0 < eps <= eps1={universe.eps1}, got {eps}")
    if eps**3 >= Fraction(1, 2):
        raise InvalidRangeError("eps too large: block subdivision needs eps^3 < 1/2")
    if not 0 < delta < 1:
        raise InvalidRangeError(f"need 0 < delta < 1, got {delta}")

    shifts = _ceil_frac(1 / eps)
    thr_num = Fraction(eps) * 8**n
    t = None
    for j in range(shifts):
        tj = n + j * eps
        if Fraction(universe.window_count(tj, eps)) >= thr_num / (2 * n):
            t = tj
            break
    if t is None:
        raise NoWitnessError(f"no eps-window at level n={n} reaches eps*8^n/(2n)")

    w = eps**4
    K = _ceil_frac(eps**-3)
    counts = [universe.window_count(t + i * w, w) for i in range(K)]
    best = None
    for a in range(K):
        for b in range(a + 2, K):
            if (b - a + 1) * w > eps:
                break
            score = min(counts[a], counts[b])
            if best is None or score > best[0]:
                best = (score, a, b)
    if best is None or best[0] == 0:
        raise NoWitnessError(f"no admissible rich block pair at level n={n}")
    _, a, b = best

    def pick_in_block(i: int) -> tuple[Fraction, int]:
        start = t + i * w
        best_pos, best_count = None, -1
        j = 0
        while True:
            pos = start + j * delta
            if j > 0 and pos >= start + w:
                break
            c = universe.window_count(pos, delta)
            if c > best_count:
                best_pos, best_count = pos, c
            j += 1
        return best_pos, best_count

    x, cx = pick_in_block(a)
    y, cy = pick_in_block(b)
    if not eps**4 < y - x < eps:
        raise NoWitnessError(f"selected pair violates the gap window: y-x={y - x}")
    D = min(quantized_richness(cx, n), quantized_richness(cy, n))
    if D <= 0:
        raise NoWitnessError(f"windows at n={n} fall below the 1/1024 richness floor")
    return WindowPick(n=n, x=x, y=y, D=D, count_x=cx, count_y=cy, t=t, block_pair=(a, b))


def scan_window_family(universe, n_values: Iterable[int], eps, delta) -> tuple[WindowFamily, list[WindowPick]]:
    picks = [find_windows(universe, n, eps, delta) for n in n_values]
    D = min(p.D for p in picks)
    members = tuple(sorted({p.x for p in picks} | {p.y for p in picks}))
    return WindowFamily(delta=Fraction(delta), D=D, members=members), picks


# -- sum witnesses -------------------------------------------------------------

@dataclass(frozen=True)
class SumWitness:
    """Aligned points: z_i in [n_i, n_i+1) with sum z_i in [z, z+eps)."""

    eps: Fraction
    k: int
    ns: tuple[int, ...]
    z: Fraction
    zs: tuple[Fraction, ...]
    u_sequence: tuple[Fraction, ...]
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]


def solve_sums(X, eps, k: int, ns: Sequence[int]) -> SumWitness:
    """Constructive proof replay of the alignment lemma.

    For each level take a member pair x_i < y_i with eps^4 < y_i - x_i < eps;
    the interpolation u_i = x_1+..+x_i+y_{i+1}+..+y_k descends from u_0 to
    u_k in steps < eps with total drop > k*eps^4 >= 2, so some member z lies
    strictly between u_k and u_0, and the largest i0 with u_{i0} >= z lands
    u_{i0} inside [z, z+eps).  (The drop direction is u_0 - u_k: x_i < y_i
    makes the sequence decreasing.)
    """
    eps = Fraction(eps)
    k0 = min_k_for(eps)
    if k < k0:
        raise InvalidRangeError(f"need k >= ceil(2/eps^4) = {k0}, got {k}")
    if len(ns) != k:
        raise InvalidRangeError(f"need exactly k={k} levels, got {len(ns)}")
    x0 = getattr(X, "x0", Fraction(1))
    for n in ns:
        if n < x0:
            raise InvalidRangeError(f"level {n} below x0={x0}")

    pairs = [X.pair_in_unit(n, eps) for n in ns]
    xs = tuple(p[0] for p in pairs)
    ys = tuple(p[1] for p in pairs)
    for n, (x, y) in zip(ns, pairs):
        if not (n <= x < y < n + 1 and eps**4 < y - x < eps):
            raise HypothesisViolationError(f"oracle pair ({x}, {y}) inadmissible at level {n}")

    u = []
    head = Fraction(0)
    tail = sum(ys)
    u.append(head + tail)
    for i in range(k):
        head += xs[i]
        tail -= ys[i]
        u.append(head + tail)
    u0, uk = u[0], u[k]
    if u0 - uk < 2:
        raise HypothesisViolationError(f"total drop {u0 - uk} below 2; gaps too small")

    z = X.smallest_member_in_open(uk, u0)
    if z is None:
        raise NoWitnessError(f"no member strictly inside ({uk}, {u0})")
    i0 = None
    for i in range(k, -1, -1):
        if u[i] >= z:
            i0 = i
            break
    if i0 is None or not z <= u[i0] < z + eps:
        raise NoWitnessError("no interpolation step lands inside [z, z+eps)")
    zs = tuple(xs[j] if j < i0 else ys[j] for j in range(k))
    return SumWitness(
        eps=eps, k=k, ns=tuple(ns), z=z, zs=zs, u_sequence=tuple(u), xs=xs, ys=ys
    )


def validate_sum_witness(w: SumWitness, X) -> list[str]:
    """Independent checker for a witness; returns human-readable failures.

    Recomputes everything from (ns, z, zs) alone: the per-level containment,
    the sum alignment, and X-membership of every output point.
    """
    failures = []
    if len(w.zs) != w.k:
        failures.append("zs length != k")
    for n, zi in zip(w.ns, w.zs):
        if not n <= zi < n + 1:
            failures.append(f"z_i={zi} outside [{n}, {n + 1})")
        if not X.contains(zi):
            failures.append(f"z_i={zi} not a member of X")
    total = sum(w.zs)
    if not w.z <= total < w.z + w.eps:
        failures.append(f"sum {total} outside [{w.z}, {w.z + w.eps})")
    if not X.contains(w.z):
        failures.append(f"z={w.z} not a member of X")
    return failures


# -- index families ------------------------------------------------------------

@dataclass(frozen=True)
class IndexFamily:
    """Stride-separated level sets A_1..A_k with per-set harmonic mass.

    Strides are chosen as s_1 = max(x0, 2k) + 5 and
    s_{i+1} = max(A_1 + ... + A_i) + 2k + 5.  The +5 over the bare
    "> max(...)" requirement pins the sum separation at >= 2k + 5, which
    both yields property (A) (distance >= 2k between distinct tuple sums)
    and keeps distinct tuples' target windows disjoint (the witness z sits
    within k+1 of the tuple sum, so z-values differ by >= 3 > 2 eps).
    """

    k: int
    strides: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    N_target: Fraction
    achieved: tuple[object, ...]  # Fraction when exact, float otherwise
    separation_check: str  # "pairwise" or "stride-argument"

    def tuples(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*self.A)

    def tuple_count(self) -> int:
        out = 1
        for a in self.A:
            out *= len(a)
        return out


def _harmonic_fill(stride: int, target: Fraction, max_elements: int) -> tuple[list[int], object]:
    """Smallest multiples of stride with sum of reciprocals >= target.

    Exact Fractions while the set is small; 128-bit floats beyond, with a
    2^-80 margin guard at the threshold crossing (harmonic partial sums are
    never that close to a rational target unless chosen adversarially).
    """
    elems: list[int] = []
    acc = Fraction(0)
    j = 0
    while len(elems) < 64:
        if elems and acc >= target:
            return elems, acc
        j += 1
        if len(elems) >= max_elements:
            raise BudgetExceededError(
                f"harmonic fill for stride {stride} exceeded {max_elements} elements",
                partial=(elems, acc),
            )
        elems.append(stride * j)
        acc += Fraction(1, stride * j)
    with mpmath.workprec(128):
        facc = mpmath.mpf(acc.numerator) / acc.denominator
        tgt = mpmath.mpf(target.numerator) / target.denominator
        while facc < tgt:
            if len(elems) >= max_elements:
                raise BudgetExceededError(
                    f"harmonic fill for stride {stride} exceeded {max_elements} elements",
                    partial=(elems, float(facc)),
                )
            j += 1
            elems.append(stride * j)
            facc += mpmath.mpf(1) / (stride * j)
        if abs(facc - tgt) < mpmath.mpf(2) ** -80:
            raise RuntimeError("harmonic threshold decision within float guard; use exact target")
        return elems, float(facc)


def build_index_family(
    k: int,
    x0,
    N_target,
    budget: int,
    *,
    strides: Optional[Sequence[int]] = None,
) -> IndexFamily:
    """Greedy index family construction with verified separation."""
    if k < 1:
        raise InvalidRangeError("need k >= 1")
    target = Fraction(N_target)
    if target < 0:
        raise InvalidRangeError("need N_target >= 0")
    x0_int = _floor_frac(Fraction(x0))
    s_list: list[int] = []
    sets: list[tuple[int, ...]] = []
    achieved: list[object] = []
    maxsum = 0
    remaining = budget
    for i in range(k):
        if strides is not None:
            s = strides[i]
            min_s = max(x0_int, 2 * k) + 1 if i == 0 else maxsum + 1
            if s < min_s:
                raise InvalidRangeError(f"stride {s} below admissible minimum {min_s}")
        else:
            s = max(x0_int, 2 * k) + 5 if i == 0 else maxsum + 2 * k + 5
        elems, acc = _harmonic_fill(s, target, remaining)
        remaining -= len(elems)
        s_list.append(s)
        sets.append(tuple(elems))
        achieved.append(acc)
        maxsum += elems[-1] if elems else 0
    fam = IndexFamily(
        k=k,
        strides=tuple(s_list),
        A=tuple(sets),
        N_target=target,
        achieved=tuple(achieved),
        separation_check="pairwise",
    )
    return _verify_separation(fam)


def _verify_separation(fam: IndexFamily) -> IndexFamily:
    k = fam.k
    if fam.tuple_count() <= 2048:
        sums = sorted(sum(t) for t in fam.tuples())
        for a, b in zip(sums, sums[1:]):
            if b - a < 2 * k:
                raise ConstructionError(f"tuple sums {a} and {b} closer than 2k={2 * k}")
        return fam
    # stride argument: differences at the highest differing level dominate
    maxsum = 0
    for i, (s, A) in enumerate(zip(fam.strides, fam.A)):
        lower = max(2 * k, maxsum + 2 * k) if i > 0 else 2 * k
        if s < lower:
            raise ConstructionError(
                f"stride s_{i + 1}={s} too small for guaranteed 2k-separation"
            )
        maxsum += max(A)
    return IndexFamily(
        k=fam.k,
        strides=fam.strides,
        A=fam.A,
        N_target=fam.N_target,
        achieved=fam.achieved,
        separation_check="stride-argument",
    )


# -- the exact Phi log-average -------------------------------------------------

def check_phi_logavg(B: Sequence[int], eta) -> tuple[Fraction, bool]:
    """Exact E^log_{m in B} E^log_{n in B} (gcd(m,n) - 1) and its verdict.

    Quadratic in |B|; intended for sets up to a few thousand elements.
    Arithmetic is exact rationals, so there is no precision budget.
    """
    elems = sorted(B)
    if not elems:
        raise EmptySetError("check_phi_logavg over empty set")
    if elems[0] < 1:
        raise InvalidRangeError("elements must be positive")
    if any(a == b for a, b in zip(elems, elems[1:])):
        raise InvalidRangeError("elements must be distinct")
    denom = Fraction(0)
    num = Fraction(0)
    for i, q in enumerate(elems):
        denom += Fraction(1, q)
        row = Fraction(q - 1, q * q)
        for qp in elems[i + 1 :]:
            g = math.gcd(q, qp)
            if g > 1:
                row += 2 * Fraction(g - 1, q * qp)
        num += row
    value = num / (denom * denom)
    return value, value <= Fraction(eta)


# -- the full pipeline -----------------------------------------------------------

@dataclass(frozen=True)
class PrimeBlock:
    """Materialized window block: `size` primes tied to a window start x."""

    x: Fraction
    delta: Fraction
    size: int
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.primes) != self.size:
            raise ConstructionError(f"block at {self.x}: {len(self.primes)} primes != size {self.size}")
        if any(a >= b for a, b in zip(self.primes, self.primes[1:])):
            raise ConstructionError(f"block at {self.x}: primes not strictly increasing")


@dataclass(frozen=True)
class TupleArtifact:
    ns: tuple[int, ...]
    witness: SumWitness
    component_blocks: tuple[PrimeBlock, ...]
    products: tuple[int, ...]
    z_block: PrimeBlock
    q_primes: tuple[int, ...]


@dataclass(frozen=True)
class SetPairVerdicts:
    omega_b1: bool
    omega_b2: bool
    cardinality: bool
    ratios: bool
    phi_b1: bool
    phi_b2: bool
    b1_weight_bound: bool

    def all_pass(self) -> bool:
        return all(
            (
                self.omega_b1,
                self.omega_b2,
                self.cardinality,
                self.ratios,
                self.phi_b1,
                self.phi_b2,
                self.b1_weight_bound,
            )
        )


@dataclass(frozen=True)
class SetPair:
    """The constructed pair with exact audit values attached."""

    eta: Fraction
    k: int
    B1: tuple[int, ...]
    B2: tuple[int, ...]
    pair_ratio_bounds: tuple[Fraction, ...]
    phi_logavg_B1: Fraction
    phi_logavg_B2: Fraction
    verdicts: SetPairVerdicts
    eps: Fraction
    delta: Fraction
    D: Fraction
    N_target: Fraction
    index_family: IndexFamily
    artifacts: tuple[TupleArtifact, ...]
    b1_logweight: Fraction
    b1_weight_bound_value: Fraction


def default_n_target(eta: Fraction, k: int, D: Fraction) -> Fraction:
    """Harmonic mass per level sufficient for both exact tail conditions.

    Solves D^k N^k / 8^(2k+1) >= 1/eta (the prime-side weight bound) and
    sum_{F nonempty} 8^(6k) (D N)^(-|F|) <= eta (the almost-prime side),
    and returns the larger requirement.  These targets are astronomically
    infeasible to fill for realistic k; callers pass an explicit N_target
    for desk-scale runs.
    """
    eta_f, d_f = float(eta), float(D)
    log_n1 = (math.log(8) * (2 * k + 1) - math.log(eta_f)) / k - math.log(d_f)
    # sum_F <= ((1 + 1/(DN))^k - 1) * 8^(6k); require <= eta
    log_n2 = math.log(k) + 6 * k * math.log(8) - math.log(eta_f) - math.log(d_f)
    log_n = max(log_n1, log_n2)
    if log_n > 700:
        return Fraction(10) ** (int(log_n / math.log(10)) + 1)
    return Fraction(math.ceil(math.exp(log_n)))


def _phi_logavg_primes(primes: Sequence[int]) -> tuple[Fraction, Fraction]:
    weight = Fraction(0)
    num = Fraction(0)
    for p in primes:
        weight += Fraction(1, p)
        num += Fraction(p - 1, p * p)
    return num / (weight * weight), weight


def _phi_logavg_structured(artifacts: Sequence[TupleArtifact]) -> Fraction:
    """Exact Phi log-average over B2 via the block structure.

    For tuples T, T' the double sum over their product sets factors level
    by level: shared blocks contribute sigma + sigma^2 - sigma_2 (diagonal
    prime pairs plus distinct coprime pairs), disjoint blocks contribute
    sigma_T * sigma_T'.  Non-coprime cross-tuple pairs can only arise at
    levels where both the index entry and the chosen window coincide; this
    footnote condition is asserted, not assumed.
    """
    sigma: list[list[Fraction]] = []
    sigma2: list[list[Fraction]] = []
    for art in artifacts:
        sigma.append(
            [sum(Fraction(1, v) for v in blk.primes) for blk in art.component_blocks]
        )
        sigma2.append(
            [sum(Fraction(1, v * v) for v in blk.primes) for blk in art.component_blocks]
        )
    total_weight = Fraction(0)
    for s_row in sigma:
        w = Fraction(1)
        for s in s_row:
            w *= s
        total_weight += w
    gcd_sum = Fraction(0)
    n_t = len(artifacts)
    for a in range(n_t):
        for b in range(n_t):
            art_a, art_b = artifacts[a], artifacts[b]
            term = Fraction(1)
            for i in range(len(art_a.component_blocks)):
                blk_a = art_a.component_blocks[i]
                blk_b = art_b.component_blocks[i]
                if blk_a.x == blk_b.x:
                    if art_a.ns[i] != art_b.ns[i]:
                        raise ConstructionError(
                            "shared block at differing index entries (footnote violation)"
                        )
                    s, s2 = sigma[a][i], sigma2[a][i]
                    term *= s + s * s - s2
                else:
                    if a != b and set(blk_a.primes) & set(blk_b.primes):
                        raise ConstructionError(
                            "distinct blocks share primes (footnote violation)"
                        )
                    term *= sigma[a][i] * sigma[b][i]
            gcd_sum += term
    phi_num = gcd_sum - total_weight * total_weight
    return phi_num / (total_weight * total_weight)


def build_set_pair(
    universe,
    eta,
    *,
    k: Optional[int] = None,
    N_target=None,
    budget: int = 4096,
    element_budget: int = 200_000,
) -> SetPair:
    """Run the full construction and attach exact verdicts.

    Structural failures (separation, block feasibility, footnote, product
    counts) raise ConstructionError: they mean the pipeline itself is
    broken.  The target properties -- element ratios and the two exact Phi
    log-averages against eta -- are attached as verdicts so a run whose
    parameters cannot meet eta still yields a fully auditable artifact.
    """
    eta = Fraction(eta)
    if not 0 < eta < 1:
        raise InvalidRangeError(f"need eta in (0,1), got {eta}")

    caps = [Fraction(universe.eps0), Fraction(universe.pair_eps_cap)]
    vcap = universe.value_eps_cap(eta)
    if vcap is not None:
        caps.append(Fraction(vcap))
    cap = min(caps)
    m = _floor_frac(cap * GRID_DENOM)
    eps = Fraction(m, GRID_DENOM)
    if eps >= cap:
        eps = Fraction(m - 1, GRID_DENOM)
    if eps <= 0:
        raise InfeasibleScaleError(
            "admissible eps collapses to zero at the 1/1024 grid",
            diagnosis={"eps_cap": cap},
        )
    k0 = min_k_for(eps)
    if k is None:
        k = k0
    if k < k0:
        raise InvalidRangeError(f"need k >= {k0} for eps={eps}, got {k}")
    delta = eps / k

    if N_target is None:
        N_target = default_n_target(eta, k, Fraction(1, 2))
    N_target = Fraction(N_target)

    try:
        fam = build_index_family(k, universe.x0, N_target, budget)
    except BudgetExceededError as exc:
        raise InfeasibleScaleError(
            f"index family needs more than {budget} elements "
            f"(eps={eps}, k={k}, N_target~{float(N_target):.3g})",
            diagnosis={"eps": eps, "k": k, "N_target": N_target, "stage": "index-family"},
        ) from exc

    X = CensusThresholdX(universe, delta)
    witnesses = []
    for ns in fam.tuples():
        witnesses.append(solve_sums(X, eps, k, ns))

    # run-level richness constant from the windows actually used
    used_positions = sorted({zi for w in witnesses for zi in w.zs} | {w.z for w in witnesses})
    D_run = Fraction(D_QUANTUM - 1, D_QUANTUM)
    for pos in used_positions:
        n = _floor_frac(pos)
        c = universe.window_count(pos, delta)
        D_run = min(D_run, quantized_richness(c, n))
    if D_run <= 0:
        raise NoWitnessError("a used window falls below the 1/1024 richness floor")

    # feasibility of block materialization before touching any primes
    total_elements = 0
    for w in witnesses:
        q_size = 1
        for zi in w.zs:
            size = universe.block_size(D_run, _floor_frac(zi))
            if size < 1:
                raise InfeasibleScaleError(
                    f"block law gives empty block at level {_floor_frac(zi)}",
                    diagnosis={"position": zi, "D": D_run},
                )
            q_size *= size
            total_elements += size
        z_size = universe.block_size(D_run, _floor_frac(w.z))
        if q_size > z_size:
            raise ConstructionError(
                f"product count {q_size} exceeds target block size {z_size} at z={w.z}"
            )
        total_elements += z_size
        if total_elements > element_budget:
            raise InfeasibleScaleError(
                f"materialization needs > {element_budget} primes "
                f"(level sizes up to {z_size})",
                diagnosis={
                    "stage": "blocks",
                    "elements_needed": total_elements,
                    "k": k,
                    "eps": eps,
                },
            )

    block_cache: dict[Fraction, PrimeBlock] = {}

    def component_block(pos: Fraction) -> PrimeBlock:
        if pos not in block_cache:
            size = universe.block_size(D_run, _floor_frac(pos))
            primes = universe.window_primes(pos, delta, size)
            block_cache[pos] = PrimeBlock(x=pos, delta=delta, size=size, primes=primes)
        return block_cache[pos]

    artifacts = []
    for ns, w in zip(fam.tuples(), witnesses):
        blocks = tuple(component_block(zi) for zi in w.zs)
        prods = sorted(
            math.prod(combo) for combo in itertools.product(*(b.primes for b in blocks))
        )
        expected = math.prod(b.size for b in blocks)
        if len(set(prods)) != expected:
            raise ConstructionError(f"product collisions in tuple {ns}")
        z_size = universe.block_size(D_run, _floor_frac(w.z))
        z_primes = universe.window_primes(w.z, delta, z_size, targets=prods)
        z_block = PrimeBlock(x=w.z, delta=delta, size=z_size, primes=tuple(sorted(z_primes)))
        q_primes = tuple(sorted(z_primes[: len(prods)]))
        artifacts.append(
            TupleArtifact(
                ns=tuple(ns),
                witness=w,
                component_blocks=blocks,
                products=tuple(prods),
                z_block=z_block,
                q_primes=q_primes,
            )
        )

    b1, b2 = [], []
    for art in artifacts:
        b1.extend(art.q_primes)
        b2.extend(art.products)
    if len(set(b1)) != len(b1) or len(set(b2)) != len(b2):
        raise ConstructionError("per-tuple contributions are not disjoint")
    B1 = tuple(sorted(b1))
    B2 = tuple(sorted(b2))

    # (a) -- recomputed from scratch
    omega_b1 = all(universe.is_prime_value(p) for p in B1)
    omega_b2 = all(
        _factors_exactly_k(q, art.component_blocks, len(art.component_blocks))
        for art in artifacts
        for q in art.products
    )

    # (b)
    cardinality = len(B1) == len(B2)
    ratios = tuple(Fraction(q, p) for p, q in zip(B1, B2))
    lo_ok = Fraction(1) / (1 + eta)
    hi_ok = 1 + eta
    ratios_ok = cardinality and all(lo_ok <= r <= hi_ok for r in ratios)

    # (c)
    phi_b1, b1_weight = _phi_logavg_primes(B1)
    phi_b2 = _phi_logavg_structured(artifacts)

    bound_value = D_run**k * N_target**k / Fraction(8) ** (2 * k + 1)
    verdicts = SetPairVerdicts(
        omega_b1=omega_b1,
        omega_b2=omega_b2,
        cardinality=cardinality,
        ratios=ratios_ok,
        phi_b1=phi_b1 <= eta,
        phi_b2=phi_b2 <= eta,
        b1_weight_bound=b1_weight >= bound_value,
    )
    if not (omega_b1 and omega_b2 and cardinality):
        raise ConstructionError("structural verdicts failed; see artifacts")
    return SetPair(
        eta=eta,
        k=k,
        B1=B1,
        B2=B2,
        pair_ratio_bounds=ratios,
        phi_logavg_B1=phi_b1,
        phi_logavg_B2=phi_b2,
        verdicts=verdicts,
        eps=eps,
        delta=delta,
        D=D_run,
        N_target=N_target,
        index_family=fam,
        artifacts=tuple(artifacts),
        b1_logweight=b1_weight,
        b1_weight_bound_value=bound_value,
    )


def _factors_exactly_k(q: int, blocks: Sequence[PrimeBlock], k: int) -> bool:
    """Trial-divide q against its tuple's block primes; exactly k factors."""
    count = 0
    rest = q
    for blk in blocks:
        for p in blk.primes:
            while rest % p == 0:
                rest //= p
                count += 1
    return rest == 1 and count == k


__all__ = [
    "CensusThresholdX",
    "GridPatternX",
    "IndexFamily",
    "PrimeBlock",
    "SetPair",
    "SetPairVerdicts",
    "SumWitness",
    "TupleArtifact",
    "WindowFamily",
    "WindowPick",
    "build_index_family",
    "build_set_pair",
    "check_phi_logavg",
    "default_n_target",
    "find_windows",
    "min_k_for",
    "quantized_richness",
    "scan_window_family",
    "solve_sums",
    "validate_sum_witness",
]
