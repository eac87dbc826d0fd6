"""Command-line entry point: every verification suite behind one binary.

Reports are written per suite (CSV or JSON) plus an aggregating
summary.json.  Files contain no timestamps or timings, so the same
(config, seed) produces byte-identical reports at any worker count;
timings are printed to stdout only.

Exit codes: 0 all assertions passed, 1 assertion failure, 2 bad
configuration, 3 budget/infeasibility stop.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from pntkit import averages, chebyshev, construction, primeutil, reports, sieve, theorem_checks
from pntkit.errors import (
    BudgetExceededError,
    ConfigError,
    InfeasibleScaleError,
    PntkitError,
)
from pntkit.universe import RealUniverse, SyntheticUniverse

EXIT_PASS = 0
EXIT_ASSERT = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

SUITES = ("sieve", "tk", "chebyshev", "windows", "sums", "build-sets", "theorem", "selberg")


def parse_number(text: str) -> int:
    """Integer with ^ / e notation: 10^12, 1e6, 2^22, 4096."""
    s = str(text).strip().replace("_", "")
    try:
        if "^" in s:
            base, exp = s.split("^", 1)
            return int(base) ** int(exp)
        if "e" in s.lower():
            v = float(s)
            if v != int(v):
                raise ValueError
            return int(v)
        return int(s)
    except ValueError as exc:
        raise ConfigError(f"cannot parse integer {text!r}") from exc


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse fraction {text!r}") from exc


def parse_grid(text: str) -> list[int]:
    return [parse_number(part) for part in str(text).split(",") if part.strip()]


def parse_fraction_grid(text: str) -> list[Fraction]:
    return [parse_fraction(part) for part in str(text).split(",") if part.strip()]


def read_config_file(path: str) -> dict[str, str]:
    """Plain key=value lines; # starts a comment; CLI flags win."""
    out: dict[str, str] = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
                key, value = line.split("=", 1)
                out[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return out


@dataclass
class RunConfig:
    subcommand: str
    budget: int = sieve.DEFAULT_BUDGET
    seed: int = 0
    universe: str = "synthetic"
    output_dir: str = "reports"
    format: str = "csv"
    workers: int = 1
    profile: str = "full"
    cache_dir: Optional[str] = None
    options: dict = field(default_factory=dict)

    def opt(self, key: str, fallback):
        return self.options.get(key, fallback)


@dataclass
class SuiteResult:
    name: str
    passed: Optional[bool]  # None marks an infeasibility stop, not a failure
    fieldnames: Sequence[str]
    rows: list[dict]
    failures: list[str]
    payload: Optional[dict] = None


def _quick(cfg: RunConfig) -> bool:
    return cfg.profile == "quick"


def make_universe(cfg: RunConfig):
    if cfg.universe == "synthetic":
        return SyntheticUniverse(seed=cfg.seed)
    if cfg.universe == "real":
        return RealUniverse(budget=cfg.budget, workers=cfg.workers)
    raise ConfigError(f"unknown universe {cfg.universe!r}")


# -- suites -------------------------------------------------------------------

def suite_sieve(cfg: RunConfig) -> SuiteResult:
    lo = cfg.opt("lo", 1)
    hi = cfg.opt("hi", 2**16 if _quick(cfg) else 2**20)
    rows: list[dict] = []
    failures: list[str] = []

    table1 = sieve.sieve_range(lo, hi, workers=1, budget=cfg.budget, cache_dir=cfg.cache_dir)
    identical = True
    for wk in (2, 8):
        other = sieve.sieve_range(lo, hi, workers=wk, budget=cfg.budget)
        if not np.array_equal(table1.omega, other.omega):
            identical = False
    small = sieve.sieve_range(lo, hi, segment_size=2**12, budget=cfg.budget)
    identical = identical and np.array_equal(table1.omega, small.omega)
    rows.append({"check": "determinism-workers-and-segments", "detail": "1/2/8, 2^12", "pass": identical})
    if not identical:
        failures.append("sieve output varied with workers or segment size")

    rng = random.Random(cfg.seed)
    samples = 200 if _quick(cfg) else 2000
    bad = 0
    for _ in range(samples):
        n = rng.randint(lo, hi - 1)
        if table1.omega_at(n) != primeutil.omega_by_trial_division(n):
            bad += 1
    rows.append({"check": "trial-division-oracle", "detail": f"{samples} samples", "pass": bad == 0})
    if bad:
        failures.append(f"{bad} omega values disagree with trial division")

    add_bad = 0
    pairs = 200 if _quick(cfg) else 1000
    for _ in range(pairs):
        m = rng.randint(2, 1000)
        n = rng.randint(2, (hi - 1) // m) if (hi - 1) // m >= 2 else 2
        if m * n < hi:
            if table1.omega_at(m * n) != table1.omega_at(m) + table1.omega_at(n):
                add_bad += 1
    rows.append({"check": "complete-additivity", "detail": f"{pairs} pairs", "pass": add_bad == 0})
    if add_bad:
        failures.append(f"{add_bad} additivity failures")

    N = hi - 1
    cen = sieve.census(1, N, budget=cfg.budget)
    direct = int(np.count_nonzero(table1.omega[: N - lo + 1] == 1)) if lo == 1 else None
    consistent = direct is None or cen.count == direct
    rows.append({"check": "census-consistency", "detail": f"N={N}", "pass": consistent})
    if not consistent:
        failures.append("census count != number of omega==1 entries")

    L1 = sieve.liouville_summatory(N, segment_size=2**14, budget=cfg.budget)
    L2 = sieve.liouville_summatory(N, segment_size=2**17, workers=4, budget=cfg.budget)
    rows.append({"check": "summatory-dual-run", "detail": f"L({N})={L1}", "pass": L1 == L2})
    if L1 != L2:
        failures.append("liouville summatory differs across segment sizes")

    return SuiteResult("sieve", not failures, ("check", "detail", "pass"), rows, failures)


def suite_tk(cfg: RunConfig) -> SuiteResult:
    trials = cfg.opt("trials", 25 if _quick(cfg) else 200)
    audit = averages.tk_error_constant_audit(trials, cfg.seed)
    rows = [
        {
            "B_size": len(r.B),
            "N": r.N,
            "difference": r.difference,
            "budget": r.budget,
            "ratio": r.ratio,
            "lcm_divides": r.lcm_divides,
            "pass": abs(r.difference) <= r.budget and (not r.lcm_divides or r.difference == 0),
        }
        for r in audit.records
    ]
    failures = [] if audit.all_within_budget else ["a trial exceeded the 3|B|^2/N budget"]
    worked = averages.tk_identity_check(averages.WeightedSet.of([2, 3]), 6)
    if worked.lhs != Fraction(17, 36) or worked.difference != 0:
        failures.append("worked example B={2,3}, N=6 mismatch")
    payload = {"max_ratio": audit.max_ratio, "trials": trials, "seed": cfg.seed}
    return SuiteResult("tk", not failures, tuple(rows[0].keys()), rows, failures, payload)


def suite_chebyshev(cfg: RunConfig) -> SuiteResult:
    n_max = cfg.opt("n_max", 2000 if _quick(cfg) else 10**5)
    x_max = cfg.opt("x_max", 2000 if _quick(cfg) else 10**5)
    sigmas = cfg.opt("sigmas", [Fraction(3, 2), Fraction(2)] if _quick(cfg) else
                     [Fraction(3, 2), Fraction(2), Fraction(4), Fraction(8)])
    recon_max = cfg.opt("reconstruct_max", 200 if _quick(cfg) else 2000)
    wx = cfg.opt("window_x_max", 4 if _quick(cfg) else 8)
    eps_grid = cfg.opt("eps_grid", [Fraction(1, 10)] if _quick(cfg) else [Fraction(1, 20), Fraction(1, 10)])

    rows: list[dict] = []
    failures: list[str] = []

    primes_list = sieve.base_primes(2 * recon_max).tolist()
    recon_ok = all(
        chebyshev.audit_central_binomial(n, primes_list).reconstructs_exactly()
        for n in range(1, recon_max + 1)
    )
    rows.append({"x": "reconstruction", "eps_or_sigma": "", "count": recon_max,
                 "bound": "", "slack": "", "holds": recon_ok})
    if not recon_ok:
        failures.append("multiplicity product failed to reconstruct C(2n,n)")

    top = max(int(math.ceil(Fraction(s) * x_max)) for s in sigmas + [Fraction(2)])
    pi_table = sieve.prime_pi_table(max(top, 2 * n_max), workers=cfg.workers, budget=cfg.budget)

    lower_bad = [v for v in chebyshev.sweep_lower_binomial(n_max, pi_table) if not v.holds]
    rows.append({"x": f"n<={n_max}", "eps_or_sigma": "lower", "count": len(lower_bad),
                 "bound": "", "slack": "", "holds": not lower_bad})
    if lower_bad:
        failures.append(f"{len(lower_bad)} lower binomial violations")

    upper = chebyshev.sweep_upper_binomial(x_max, sigmas, pi_table)
    for s, verdicts in upper.items():
        bad = [v for v in verdicts if not v.holds]
        first = bad[0].x if bad else ""
        rows.append({"x": f"x<={x_max}", "eps_or_sigma": str(s), "count": len(bad),
                     "bound": f"first_violation={first}", "slack": "", "holds": not bad})
        if bad:
            failures.append(f"{len(bad)} upper binomial violations at sigma={s} (first x={first})")

    for x in range(1, wx + 1):
        v = chebyshev.window_lower_bound(x, budget=cfg.budget, workers=cfg.workers)
        rows.append({"x": x, "eps_or_sigma": "window-lower", "count": v.interval.count,
                     "bound": v.bound_value, "slack": v.slack, "holds": v.holds})
        if not v.holds:
            failures.append(f"window lower bound failed at x={x}")

    xq = [Fraction(n, 4) for n in range(4 * 4, 4 * wx + 1)]
    for eps in eps_grid:
        for x in xq:
            v = chebyshev.window_upper_bound(x, eps, budget=cfg.budget, workers=cfg.workers)
            rows.append({"x": str(x), "eps_or_sigma": str(eps), "count": v.interval.count,
                         "bound": v.bound_value, "slack": v.slack, "holds": v.holds})
            if not v.holds:
                failures.append(f"window upper bound failed at x={x}, eps={eps}")

    st = chebyshev.stirling_factorial_audit(10**4 if _quick(cfg) else 10**6)
    rows.append({"x": "stirling", "eps_or_sigma": "", "count": st.m_max,
                 "bound": "2 log m + 2", "slack": st.max_ratio, "holds": st.holds})
    if not st.holds:
        failures.append("stirling deviation exceeded 2 log m + 2")

    return SuiteResult(
        "chebyshev", not failures,
        ("x", "eps_or_sigma", "count", "bound", "slack", "holds"), rows, failures,
    )


def suite_windows(cfg: RunConfig) -> SuiteResult:
    uni = make_universe(cfg)
    if cfg.universe == "real":
        n_lo = cfg.opt("n_lo", 6)
        n_hi = cfg.opt("n_hi", 6)
        eps = cfg.opt("eps", Fraction(1, 5))
        delta = cfg.opt("delta", Fraction(1, 20))
    else:
        n_lo = cfg.opt("n_lo", uni.x0)
        n_hi = cfg.opt("n_hi", uni.x0 + (2 if _quick(cfg) else 20))
        eps = cfg.opt("eps", Fraction(1, 2))
        delta = cfg.opt("delta", Fraction(1, 10))
    rows = []
    failures = []
    for n in range(n_lo, n_hi + 1):
        try:
            pick = construction.find_windows(uni, n, eps, delta)
            threshold = (pick.D.numerator * 8**n) // (pick.D.denominator * n)
            ok = pick.count_x >= threshold and pick.count_y >= threshold
            rows.append({"n": n, "x": str(pick.x), "y": str(pick.y), "D": pick.D,
                         "count_x": pick.count_x, "count_y": pick.count_y, "pass": ok})
            if not ok:
                failures.append(f"window counts below floor(D*8^n/n) at n={n}")
        except PntkitError as exc:
            rows.append({"n": n, "x": "", "y": "", "D": "", "count_x": "", "count_y": "",
                         "pass": False})
            failures.append(f"n={n}: {exc}")
    return SuiteResult("windows", not failures,
                       ("n", "x", "y", "D", "count_x", "count_y", "pass"), rows, failures)


def suite_sums(cfg: RunConfig) -> SuiteResult:
    instances = cfg.opt("instances", 50 if _quick(cfg) else 1000)
    rng = random.Random(cfg.seed)
    rows = []
    failures = []
    hand_x = construction.GridPatternX([Fraction(1, 5), Fraction(9, 10)], x0=1)
    hand = construction.solve_sums(hand_x, Fraction(9, 10), 4, (1, 1, 1, 1))
    hand_ok = (
        hand.z == Fraction(49, 10)
        and hand.zs == (Fraction(6, 5),) * 3 + (Fraction(19, 10),)
        and sum(hand.zs) == Fraction(11, 2)
        and not construction.validate_sum_witness(hand, hand_x)
    )
    rows.append({"instance": "hand-example", "eps": "9/10", "k": 4, "pass": hand_ok})
    if not hand_ok:
        failures.append("hand example did not reproduce")
    for i in range(instances):
        eps = Fraction(rng.randint(60, 95), 100)
        tiny = eps**4
        lo_gap = int(tiny * 1000) + 1
        hi_gap = int(eps * 1000)
        gap = Fraction(rng.randint(lo_gap, max(lo_gap, hi_gap - 1)), 1000)
        f0 = Fraction(rng.randint(0, int((1 - gap) * 1000) - 1), 1000)
        X = construction.GridPatternX([f0, f0 + gap], x0=1)
        k0 = construction.min_k_for(eps)
        k = k0 + rng.randint(0, 3)
        ns = tuple(rng.randint(1, 40) for _ in range(k))
        try:
            w = construction.solve_sums(X, eps, k, ns)
            errs = construction.validate_sum_witness(w, X)
            ok = not errs
        except PntkitError as exc:
            ok = False
            errs = [str(exc)]
        rows.append({"instance": i, "eps": eps, "k": k, "pass": ok})
        if not ok:
            failures.append(f"instance {i}: {errs[:2]}")
    return SuiteResult("sums", not failures, ("instance", "eps", "k", "pass"), rows, failures)


def suite_build_sets(cfg: RunConfig) -> SuiteResult:
    uni = make_universe(cfg)
    eta = cfg.opt("eta", Fraction(1, 2))
    n_target = cfg.opt("n_target", Fraction(1, 50))
    k = cfg.opt("k", None)
    rows = []
    failures = []
    try:
        pair = construction.build_set_pair(uni, eta, k=k, N_target=n_target)
    except InfeasibleScaleError as exc:
        rows.append({"field": "infeasible-scale", "value": str(exc), "pass": False})
        return SuiteResult("build-sets", None, ("field", "value", "pass"), rows,
                           [f"infeasible: {exc}"], payload={"diagnosis": exc.diagnosis})
    v = pair.verdicts
    checks = [
        ("omega_B1_all_one", v.omega_b1),
        ("omega_B2_all_k", v.omega_b2),
        ("equal_cardinality", v.cardinality),
        ("paired_ratios_within_eta", v.ratios),
        ("phi_logavg_B1_leq_eta", v.phi_b1),
        ("phi_logavg_B2_leq_eta", v.phi_b2),
        ("b1_weight_lower_bound", v.b1_weight_bound),
    ]
    for name, ok in checks:
        rows.append({"field": name, "value": ok, "pass": ok})
        if not ok:
            failures.append(f"{name} failed")
    rows.append({"field": "size", "value": len(pair.B1), "pass": True})
    rows.append({"field": "k", "value": pair.k, "pass": True})
    rows.append({"field": "eps", "value": pair.eps, "pass": True})
    rows.append({"field": "D", "value": pair.D, "pass": True})
    rows.append({"field": "phi_logavg_B1", "value": pair.phi_logavg_B1, "pass": v.phi_b1})
    rows.append({"field": "phi_logavg_B2", "value": pair.phi_logavg_B2, "pass": v.phi_b2})
    payload = {
        "eta": pair.eta,
        "k": pair.k,
        "eps": pair.eps,
        "delta": pair.delta,
        "D": pair.D,
        "N_target": pair.N_target,
        "B1": list(pair.B1),
        "B2": list(pair.B2),
        "ratios": list(pair.pair_ratio_bounds),
        "phi_logavg_B1": pair.phi_logavg_B1,
        "phi_logavg_B2": pair.phi_logavg_B2,
        "verdicts": {name: ok for name, ok in checks},
        "index_family": {
            "strides": list(pair.index_family.strides),
            "A": [list(a) for a in pair.index_family.A],
            "separation_check": pair.index_family.separation_check,
        },
        "tuples": [
            {
                "ns": list(a.ns),
                "witness": {
                    "z": str(a.witness.z),
                    "zs": [str(z) for z in a.witness.zs],
                    "u_sequence": [str(u) for u in a.witness.u_sequence],
                },
                "blocks": [
                    {"x": str(b.x), "size": b.size, "primes": list(b.primes)}
                    for b in a.component_blocks
                ],
                "z_block": {
                    "x": str(a.z_block.x),
                    "size": a.z_block.size,
                    "primes": list(a.z_block.primes),
                },
                "products": list(a.products),
                "q_primes": list(a.q_primes),
            }
            for a in pair.artifacts
        ],
        "b1_logweight": pair.b1_logweight,
        "b1_weight_bound_value": pair.b1_weight_bound_value,
    }
    return SuiteResult("build-sets", not failures, ("field", "value", "pass"),
                       rows, failures, payload)


def suite_theorem(cfg: RunConfig) -> SuiteResult:
    grid = cfg.opt("n_grid", [10**4] if _quick(cfg) else [10**4, 10**5, 10**6])
    moduli = cfg.opt("moduli", [2, 3, 5])
    N_max = max(grid)
    table = sieve.sieve_range(1, N_max + 1, workers=cfg.workers, budget=cfg.budget)
    rows = []
    failures = []

    sd = theorem_checks.shift_discrepancy("alternating", N_max, table)
    exact = theorem_checks.shift_alternating_exact(table, N_max)
    ok = abs(sd.value - float(exact)) < 1e-15
    rows.append({"N_or_x": N_max, "value": sd.value, "bound": str(exact), "pass": ok})
    if not ok:
        failures.append("alternating shift discrepancy != 2|L|/N")

    lrows = theorem_checks.liouville_mean_trace(grid, table)
    decays = all(
        b["abs_mean"] <= 2 * a["abs_mean"] for a, b in zip(lrows, lrows[1:])
    )
    final_ok = lrows[-1]["abs_mean"] <= 2e-3 or _quick(cfg)
    for r in lrows:
        rows.append({"N_or_x": r["N"], "value": r["mean"], "bound": "2e-3@max", "pass": True})
    if not decays:
        failures.append("liouville |mean| grew by more than 2x across decades")
    if not final_ok:
        failures.append(f"liouville |mean| at {N_max} above 2e-3")

    for m in moduli:
        dens = theorem_checks.pillai_selberg_density(m, N_max, table)
        dev = max(abs(float(d) - 1.0 / m) for d in dens)
        ok = dev <= 0.02
        rows.append({"N_or_x": N_max, "value": dev, "bound": f"0.02 (m={m})", "pass": ok})
        if not ok:
            failures.append(f"pillai m={m}: max density deviation {dev:.4f} > 0.02")

    wrows = theorem_checks.erdos_delange_weyl(theorem_checks.ALPHA_SQRT2, grid, table)
    mags = [r["magnitude"] for r in wrows]
    weyl_ok = all(b < a for a, b in zip(mags, mags[1:])) and (mags[-1] <= 0.1)
    for r in wrows:
        rows.append({"N_or_x": r["N"], "value": r["magnitude"], "bound": "decreasing, <=0.1", "pass": weyl_ok})
    if not weyl_ok:
        failures.append("weyl sqrt2 magnitudes not decreasing below 0.1")
    half = theorem_checks.erdos_delange_weyl(Fraction(1, 2), [N_max], table)
    Labs = abs(sieve.liouville_summatory(N_max, budget=cfg.budget))
    half_ok = abs(half[0]["magnitude"] - Labs / N_max) < 1e-12
    rows.append({"N_or_x": N_max, "value": half[0]["magnitude"], "bound": f"|L|/N={Labs}/{N_max}", "pass": half_ok})
    if not half_ok:
        failures.append("alpha=1/2 weyl magnitude != |L(N)|/N")

    for Bset in ([2], None):
        if Bset is None:
            cen = sieve.census(100, 200, materialize=True, budget=cfg.budget)
            Bset = list(cen.primes)
        B = averages.WeightedSet.of(Bset)
        if N_max < max(B.elements) ** 2:
            continue
        for g_id in ("alternating", "root_of_unity:3", "one"):
            ta = theorem_checks.transfer_audit(B, g_id, N_max, table)
            rows.append({"N_or_x": N_max, "value": ta.difference, "bound": ta.bound, "pass": ta.holds})
            if not ta.holds:
                failures.append(f"transfer audit failed for |B|={len(B)}, g={g_id}")

    # informational only: the prime-count form of the limit statement
    for r in theorem_checks.prime_count_trace(grid, budget=cfg.budget):
        rows.append({"N_or_x": r["N"], "value": r["pi_logN_over_N"],
                     "bound": "informational", "pass": True})

    return SuiteResult("theorem", not failures, ("N_or_x", "value", "bound", "pass"),
                       rows, failures)


def suite_selberg(cfg: RunConfig) -> SuiteResult:
    grid = cfg.opt("x_grid", [10**3, 10**4] if _quick(cfg) else [10**3, 10**4, 10**5, 10**6])
    rows = []
    failures = []
    trace = theorem_checks.selberg_formula_trace(grid, budget=cfg.budget, workers=cfg.workers)
    deficits = [abs(r["normalized_deficit"]) for r in trace]
    for r in trace:
        rows.append({"N_or_x": r["x"], "value": r["ratio"], "bound": "[0.9,1.1]@max",
                     "pass": True})
    final = trace[-1]
    if not 0.9 <= final["ratio"] <= 1.1:
        failures.append(
            f"symmetry-formula ratio at x={final['x']} is {final['ratio']:.4f}, outside [0.9, 1.1]"
        )
    rows.append({"N_or_x": "empirical-O(x)-constant", "value": max(deficits),
                 "bound": "reported-not-asserted", "pass": True})
    return SuiteResult("selberg", not failures, ("N_or_x", "value", "bound", "pass"),
                       rows, failures)


SUITE_RUNNERS: dict[str, Callable[[RunConfig], SuiteResult]] = {
    "sieve": suite_sieve,
    "tk": suite_tk,
    "chebyshev": suite_chebyshev,
    "windows": suite_windows,
    "sums": suite_sums,
    "build-sets": suite_build_sets,
    "theorem": suite_theorem,
    "selberg": suite_selberg,
}


# -- driver ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pntkit", description=__doc__)
    p.add_argument("subcommand", choices=SUITES + ("all",))
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--budget", type=str, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--universe", choices=("synthetic", "real"), default=None)
    p.add_argument("--output-dir", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--profile", choices=("full", "quick"), default=None)
    p.add_argument("--cache-dir", default=None)
    # per-suite knobs
    p.add_argument("--lo", type=str, default=None)
    p.add_argument("--hi", type=str, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--n-max", type=str, default=None)
    p.add_argument("--x-max", type=str, default=None)
    p.add_argument("--sigmas", type=str, default=None)
    p.add_argument("--eps", type=str, default=None)
    p.add_argument("--delta", type=str, default=None)
    p.add_argument("--n-lo", type=int, default=None)
    p.add_argument("--n-hi", type=int, default=None)
    p.add_argument("--instances", type=int, default=None)
    p.add_argument("--eta", type=str, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n-target", type=str, default=None)
    p.add_argument("--n-grid", type=str, default=None)
    p.add_argument("--x-grid", type=str, default=None)
    p.add_argument("--moduli", type=str, default=None)
    return p


_OPTION_PARSERS = {
    "lo": parse_number,
    "hi": parse_number,
    "trials": int,
    "n_max": parse_number,
    "x_max": parse_number,
    "sigmas": parse_fraction_grid,
    "eps": parse_fraction,
    "delta": parse_fraction,
    "n_lo": int,
    "n_hi": int,
    "instances": int,
    "eta": parse_fraction,
    "k": int,
    "n_target": parse_fraction,
    "n_grid": parse_grid,
    "x_grid": parse_grid,
    "moduli": parse_grid,
}


def make_config(args: argparse.Namespace) -> RunConfig:
    filecfg = read_config_file(args.config) if args.config else {}

    def pick(name: str, fallback):
        cli = getattr(args, name, None)
        if cli is not None:
            return cli
        if name in filecfg:
            return filecfg[name]
        return fallback

    budget = pick("budget", sieve.DEFAULT_BUDGET)
    cfg = RunConfig(
        subcommand=args.subcommand,
        budget=parse_number(budget) if not isinstance(budget, int) else budget,
        seed=int(pick("seed", 0)),
        universe=str(pick("universe", "synthetic")),
        output_dir=str(pick("output_dir", "reports")),
        format=str(pick("format", "csv")),
        workers=int(pick("workers", 1)),
        profile=str(pick("profile", "full")),
        cache_dir=pick("cache_dir", None),
    )
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    if cfg.universe not in ("synthetic", "real"):
        raise ConfigError(f"unknown universe {cfg.universe!r}")
    if cfg.profile not in ("full", "quick"):
        raise ConfigError(f"unknown profile {cfg.profile!r}")
    for key, parser in _OPTION_PARSERS.items():
        value = pick(key, None)
        if value is not None:
            cfg.options[key] = parser(value) if isinstance(value, str) else value
    return cfg


def write_suite_report(cfg: RunConfig, result: SuiteResult) -> str:
    base = os.path.join(cfg.output_dir, result.name.replace("-", "_"))
    if cfg.format == "csv":
        path = base + ".csv"
        reports.write_csv(path, result.fieldnames, result.rows)
    else:
        path = base + ".json"
        reports.write_json(path, {"rows": result.rows, "payload": result.payload})
    if result.payload is not None and cfg.format == "csv":
        reports.write_json(base + "_payload.json", result.payload)
    return path


def run(cfg: RunConfig) -> int:
    names = list(SUITES) if cfg.subcommand == "all" else [cfg.subcommand]
    results = []
    exit_code = EXIT_PASS
    for name in names:
        t0 = time.time()
        try:
            result = SUITE_RUNNERS[name](cfg)
        except (BudgetExceededError, InfeasibleScaleError) as exc:
            print(f"[{name}] budget stop: {exc}")
            result = SuiteResult(name, None, ("check", "detail", "pass"),
                                 [{"check": "budget", "detail": str(exc), "pass": False}],
                                 [str(exc)])
        except PntkitError as exc:
            result = SuiteResult(name, False, ("check", "detail", "pass"),
                                 [{"check": "error", "detail": str(exc), "pass": False}],
                                 [f"{type(exc).__name__}: {exc}"])
        elapsed = time.time() - t0
        path = write_suite_report(cfg, result)
        status = "PASS" if result.passed else ("STOP" if result.passed is None else "FAIL")
        print(f"[{name}] {status} ({elapsed:.1f}s) -> {path}")
        for f in result.failures:
            print(f"    - {f}")
        results.append(result)
        if result.passed is None:
            exit_code = max(exit_code, EXIT_BUDGET)
        elif not result.passed:
            exit_code = max(exit_code, EXIT_ASSERT)
    summary = {
        "config": {
            "subcommand": cfg.subcommand,
            "seed": cfg.seed,
            "universe": cfg.universe,
            "profile": cfg.profile,
            "format": cfg.format,
            "budget": cfg.budget,
        },
        "suites": {
            r.name: {
                "passed": r.passed,
                "rows": len(r.rows),
                "failures": r.failures,
            }
            for r in results
        },
    }
    reports.write_json(os.path.join(cfg.output_dir, "summary.json"), summary)
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BudgetExceededError, InfeasibleScaleError) as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
