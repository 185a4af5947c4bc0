"""Acceptance suite: each criterion returns a pass/fail line with details.

Criteria tagged ``quick`` run in well under a minute together; ``full``
criteria sweep 10^5 random instances per configuration and take minutes.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.polynomial import polyval

from .analysis import approx_ratio, char_poly, graham_bound, max_positive_root, poly_sum, rho
from .certify import CONSISTENT, certify, normalized_evidence
from .exact import opt_bnb, opt_enumerate
from .lpt import lpt_schedule
from .model import Instance, parse_instance, scale, serialize_instance
from .worstcase import (
    SearchConfig, generate_gis_instance, random_instance, ratio_above, ratio_ceiling_check, search_worst,
)

ROUNDED_RHO = {2: 1.28, 3: 1.38, 4: 1.43, 5: 1.46}


@dataclass(frozen=True)
class CriterionResult:
    key: int
    name: str
    level: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} [{self.key:>2}] {self.name} ({self.level}, {self.seconds:.1f}s): {self.detail}"


@dataclass(frozen=True)
class Criterion:
    key: int
    name: str
    level: str
    check: Callable[[int], tuple[bool, str]]

    def run(self, seed: int = 0) -> CriterionResult:
        start = time.perf_counter()
        passed, detail = self.check(seed)
        return CriterionResult(self.key, self.name, self.level, passed, detail, time.perf_counter() - start)


CRITERIA: list[Criterion] = []


def criterion(key: int, name: str, level: str = "quick"):
    def register(fn):
        CRITERIA.append(Criterion(key, name, level, fn))
        return fn
    return register


def _time_uncached_rho(m: int, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        rho.__wrapped__(m)
        best = min(best, time.perf_counter() - start)
    return best


@criterion(1, "rho table")
def rho_table(seed: int) -> tuple[bool, str]:
    ok, parts = True, []
    for m, printed in ROUNDED_RHO.items():
        value = rho(m)
        residual = abs(char_poly(m)(value))
        elapsed = _time_uncached_rho(m)
        good = round(value, 2) == printed and residual <= 1e-9 and elapsed < 1e-3
        ok &= good
        parts.append(f"rho_{m}={value:.6f} |P|={residual:.1e} {elapsed * 1e6:.0f}us")
    return ok, "; ".join(parts)


@criterion(2, "tight family ratio")
def tight_family(seed: int) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, parts = True, []
    for m in range(2, 6):
        inst = generate_gis_instance(m, verify=False)
        opt = opt_bnb(inst).makespan
        ratio = lpt_schedule(inst).makespan / opt
        good = abs(opt - 1) <= 1e-9 and abs(ratio - rho(m)) <= 1e-6
        ok &= good
        parts.append(f"m={m} OPT-1={opt - 1:.1e} ratio-rho={ratio - rho(m):.1e}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 1.0, "; ".join(parts) + f"; {elapsed:.3f}s"


@criterion(3, "workload bound equality on tight family")
def workload_equality(seed: int) -> tuple[bool, str]:
    worst = 0.0
    for m in range(2, 6):
        ev = normalized_evidence(generate_gis_instance(m))
        unit = ev.instance.sizes[-1]
        for w, s in zip(ev.truncation.loads, ev.instance.speeds):
            worst = max(worst, abs((w + unit) / s - rho(m)))
    return worst <= 1e-6, f"max |(w'(p)+1)/s(p) - rho_m| = {worst:.2e}"


@criterion(4, "task-count bound tight on tight family")
def task_count_tight(seed: int) -> tuple[bool, str]:
    ok, parts = True, []
    for m in range(2, 6):
        inst = generate_gis_instance(m)
        total = sum(inst.sizes)
        gap = total - (m - 1) / (rho(m) - 1)
        ok &= abs(gap) <= 1e-6 and m + 1 <= total
        parts.append(f"m={m} sum t={total:.6f} gap={gap:.1e}")
    return ok, "; ".join(parts)


@criterion(5, "identical-speed bound")
def graham(seed: int, samples: int = 10_000) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    ok, parts = True, []
    for m in range(2, 6):
        best = 0.0
        for _ in range(samples):
            inst = random_instance(rng, m, int(rng.integers(1, 9)), identical=True)
            r = ratio_above(inst, best)
            if r is not None:
                best = max(best, r)
        ok &= best <= graham_bound(m) + 1e-9
        parts.append(f"m={m} max={best:.6f} bound={graham_bound(m):.6f}")
    example = approx_ratio(Instance((1.0, 1.0), (3.0, 3.0, 2.0, 2.0, 2.0))).ratio
    ok &= example == 7 / 6
    parts.append(f"(1,1)|(3,3,2,2,2) ratio={example!r}")
    return ok, "; ".join(parts)


@criterion(6, "ratio ceiling at rho_m", level="full")
def ceiling(seed: int, samples: int = 100_000, restarts: int = 1_000, steps: int = 100) -> tuple[bool, str]:
    ok, parts = True, []
    for m in (3, 4, 5):
        bound = rho(m)
        for n in (m + 1, m + 2, m + 3):
            sampled = ratio_ceiling_check(m, n, samples, seed=seed + 1000 * m + n)
            searched = search_worst(SearchConfig(
                m=m, n_max=n, n_min=n, restarts=restarts, steps_per_restart=steps,
                seed=seed + 1000 * m + n, seed_gis=True,
            ))
            best = max(sampled.max_ratio, searched.best_ratio)
            good = best <= bound + 1e-9 and not searched.exceeded
            if n == m + 1:
                good &= best >= bound - 1e-6
            ok &= good
            parts.append(f"m={m} n={n} max={best:.7f} (rho={bound:.7f})")
    return ok, "; ".join(parts)


@criterion(7, "no certified-consistent instance near rho_m at n = m + 2", level="full")
def no_consistent_near_rho(seed: int, samples: int = 10_000, restarts: int = 100) -> tuple[bool, str]:
    ok, parts = True, []
    for m in (3, 4, 5):
        bound, n = rho(m), m + 2
        rng = np.random.default_rng(seed + m)
        pool = [random_instance(rng, m, n) for _ in range(samples)]
        result = search_worst(SearchConfig(m=m, n_max=n, n_min=n, restarts=restarts, seed=seed + m, seed_gis=True))
        pool.append(result.best_instance)
        near = consistent = 0
        for inst in pool:
            # ratio_above may return an exact ratio below the threshold
            r = ratio_above(inst, bound - 1e-6)
            if r is None or r < bound - 1e-6:
                continue
            near += 1
            if certify(inst).verdict == CONSISTENT:
                consistent += 1
        best_report = certify(result.best_instance)
        ok &= consistent == 0
        parts.append(
            f"m={m}: {near} of {len(pool)} within 1e-6 of rho_m, {consistent} consistent; "
            f"search best {result.best_ratio:.6f} -> {best_report.verdict}"
        )
    return ok, "; ".join(parts)


@criterion(8, "exact solver oracle equivalence")
def oracle_equivalence(seed: int, samples: int = 10_000) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(samples):
        inst = random_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 9)))
        if opt_bnb(inst).makespan != opt_enumerate(inst).makespan:
            mismatches += 1
    return mismatches == 0, f"{mismatches} mismatches in {samples} instances"


@criterion(9, "polynomial-sum root facts")
def polynomial_sums(seed: int, points: int = 10_000) -> tuple[bool, str]:
    ok, checked, worst_gap = True, 0, -np.inf
    for m in range(1, 7):
        bound = rho(m)
        grid = np.linspace(bound + 1e-6, 1.5 - 1e-6, points)
        for k in range(1, m + 1):
            for subset in itertools.combinations(range(1, m + 1), k):
                poly = poly_sum(subset)
                root = max_positive_root(poly)
                worst_gap = max(worst_gap, root - bound)
                ok &= root <= bound + 1e-9
                if bound + 1e-6 < 1.5 - 1e-6:
                    shifted = polyval(grid, poly.coefficients) + 3 - 2 * grid
                    ok &= bool(np.all(shifted > 0))
                checked += 1
    return ok, f"{checked} subsets, max(root - rho_m) = {worst_gap:.2e}"


@criterion(10, "invariants")
def invariants(seed: int, samples: int = 2_000) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    problems = []
    for _ in range(samples):
        inst = random_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 9)))
        report = approx_ratio(inst)
        if report.lpt < report.opt:
            problems.append("LPT < OPT")
        c = float(rng.uniform(0.1, 10.0))
        for scaled in (scale(inst, size_factor=c), scale(inst, speed_factor=c)):
            if abs(approx_ratio(scaled).ratio - report.ratio) > 1e-12:
                problems.append("ratio not scale invariant")
        if lpt_schedule(inst) != lpt_schedule(inst):
            problems.append("LPT not deterministic")
        if parse_instance(serialize_instance(inst)) != inst:
            problems.append("round trip changed instance")
    config = SearchConfig(m=3, n_max=5, restarts=5, steps_per_restart=30, seed=seed)
    if search_worst(config) != search_worst(config):
        problems.append("search not deterministic")
    gis = generate_gis_instance(3)
    if certify(gis) != certify(gis):
        problems.append("certify not deterministic")
    return not problems, f"{samples} instances; " + (", ".join(sorted(set(problems))) or "no violations")


def select(level: str) -> list[Criterion]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    return sorted((c for c in CRITERIA if level == "full" or c.level == "quick"), key=lambda c: c.key)


def run_acceptance(level: str = "quick", seed: int = 0, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for crit in select(level):
        result = crit.run(seed)
        if echo is not None:
            echo(result.line())
        results.append(result)
    return results
