"""The tight Gonzalez-Ibarra-Sahni family and adversarial instance search."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import approx_ratio, rho
from .exact import DEFAULT_NODE_BUDGET, SolverRefusal, opt_bnb
from .lpt import lpt_makespan
from .model import Instance, normalize_sizes

EXCEED_TOL = 1e-9
GIS_RANGE = range(2, 9)


class ConstructionError(RuntimeError):
    """A generated instance failed its own self-check."""


def generate_gis_instance(m: int, verify: bool = True) -> Instance:
    """m processors, m + 1 tasks, LPT/OPT = rho_m.

    Speeds follow s(1) = 2, s(p + 1) = rho_m * s(p) - 1; the first m - 1
    tasks have sizes s(2), ..., s(m) and the last two have size 1. The optimum
    puts both unit tasks on processor 1 and task p on processor p + 1 (all
    finish at time 1); LPT keeps task p on processor p and the last unit task
    lands at time rho_m wherever it goes.
    """
    if m not in GIS_RANGE:
        raise ValueError(f"m must be in [{GIS_RANGE.start}, {GIS_RANGE.stop - 1}], got {m}")
    r = rho(m)
    speeds = [2.0]
    for _ in range(m - 1):
        speeds.append(r * speeds[-1] - 1)
    instance = Instance(tuple(speeds), tuple(speeds[1:]) + (1.0, 1.0), name=f"gis-m{m}")
    if verify:
        if any(a <= b for a, b in zip(speeds, speeds[1:])) or instance.sizes[-2] < 1:
            raise ConstructionError(f"GIS chain for m={m} is not strictly decreasing above 1")
        report = approx_ratio(instance)
        if abs(report.ratio - r) > 1e-6 or abs(report.opt - 1) > 1e-9:
            raise ConstructionError(f"GIS m={m}: ratio {report.ratio!r}, opt {report.opt!r}")
    return instance


def pad_unit_tasks(instance: Instance, n: int) -> Instance:
    """Append unit tasks until there are n tasks."""
    extra = n - instance.n
    if extra < 0:
        raise ValueError("instance already has more than n tasks")
    return Instance(instance.speeds, instance.sizes + (1.0,) * extra, instance.name)


def random_instance(rng: np.random.Generator, m: int, n: int, low: float = 1.0, high: float = 4.0,
                    identical: bool = False) -> Instance:
    speeds = np.ones(m) if identical else rng.uniform(low, high, m)
    sizes = rng.uniform(low, high, n)
    return Instance.from_unsorted(speeds.tolist(), sizes.tolist())


def opt_lower_bound(instance: Instance) -> float:
    """max over k of (k largest sizes) / (k fastest speeds), and total/total.

    The k largest tasks sit on at most k processors, whose joint speed is at
    most that of the k fastest.
    """
    s, t = instance.speeds, instance.sizes
    best = sum(t) / sum(s)
    work = speed = 0.0
    for k in range(min(len(s), len(t))):
        work += t[k]
        speed += s[k]
        best = max(best, work / speed)
    return best


def ratio_above(instance: Instance, threshold: float, node_budget: int = DEFAULT_NODE_BUDGET) -> float | None:
    """Exact LPT/OPT if it may exceed ``threshold``, else None.

    Instances whose LPT makespan over a lower bound on OPT is already at most
    the threshold are settled without running the exact solver.
    """
    lpt = lpt_makespan(instance)
    if lpt / opt_lower_bound(instance) * (1 + 1e-12) <= threshold:
        return None
    result = opt_bnb(instance, node_budget)
    if not result.proven:
        raise SolverRefusal("node budget exhausted")
    return lpt / result.makespan


# -- hill climbing ----------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    m: int
    n_max: int
    restarts: int = 200
    steps_per_restart: int = 200
    step_scale: float = 0.2
    step_decay: float = 0.97
    seed: int = 0
    solver_node_budget: int = 200_000
    n_min: int | None = None
    seed_gis: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        for name in ("m", "n_max", "restarts", "steps_per_restart", "solver_node_budget", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.step_scale <= 1:
            raise ValueError("step_scale must lie in (0, 1]")
        if not 0 < self.step_decay <= 1:
            raise ValueError("step_decay must lie in (0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.n_min is not None and not 1 <= self.n_min <= self.n_max:
            raise ValueError("n_min must lie in [1, n_max]")

    @property
    def n_low(self) -> int:
        if self.n_min is not None:
            return self.n_min
        return min(self.m + 1, self.n_max)


@dataclass(frozen=True)
class SearchResult:
    best_instance: Instance
    best_ratio: float
    ratio_bound: float
    exceeded: bool
    instances_evaluated: int
    skipped: int = 0
    best_restart: int = 0

    def as_dict(self) -> dict:
        return {
            "best_ratio": self.best_ratio,
            "ratio_bound": self.ratio_bound,
            "exceeded": self.exceeded,
            "instances_evaluated": self.instances_evaluated,
            "skipped": self.skipped,
            "best_restart": self.best_restart,
            "best_instance": {"speeds": list(self.best_instance.speeds), "tasks": list(self.best_instance.sizes)},
        }


@dataclass
class _Climb:
    restart: int
    instance: Instance | None = None
    ratio: float = 0.0
    evaluated: int = 0
    skipped: int = 0


def _perturb(instance: Instance, rng: np.random.Generator, step_scale: float) -> Instance:
    speeds, sizes = list(instance.speeds), list(instance.sizes)
    k = int(rng.integers(len(speeds) + len(sizes)))
    target, idx = (speeds, k) if k < len(speeds) else (sizes, k - len(speeds))
    value = target[idx]
    target[idx] = max(value + rng.uniform(-step_scale, step_scale) * value, 1e-3 * value)
    return normalize_sizes(Instance.from_unsorted(speeds, sizes))


def _climb(config: SearchConfig, restart: int) -> _Climb:
    rng = np.random.default_rng(config.seed ^ restart)
    n = int(rng.integers(config.n_low, config.n_max + 1))
    if config.seed_gis and restart == 0 and config.m in GIS_RANGE and config.m < config.n_max:
        start = pad_unit_tasks(generate_gis_instance(config.m), max(config.m + 1, config.n_low))
    else:
        start = normalize_sizes(random_instance(rng, config.m, n))
    state = _Climb(restart)
    try:
        state.ratio = approx_ratio(start, config.solver_node_budget).ratio
    except SolverRefusal:
        state.skipped += 1
        return state
    state.instance = start
    state.evaluated = 1
    # shrink the step after every rejected move so climbs can settle on ridges
    scale = config.step_scale
    for _ in range(config.steps_per_restart):
        cand = _perturb(state.instance, rng, scale)
        state.evaluated += 1
        try:
            r = ratio_above(cand, state.ratio, config.solver_node_budget)
        except SolverRefusal:
            state.skipped += 1
            continue
        if r is not None and r > state.ratio:
            state.instance, state.ratio = cand, r
        else:
            scale = max(scale * config.step_decay, 1e-4 * config.step_scale)
    return state


def _climb_args(args):
    return _climb(*args)


def search_worst(config: SearchConfig) -> SearchResult:
    """Multi-restart hill climbing on LPT/OPT.

    Restart r draws its own generator from seed ^ r, so results do not depend
    on how restarts are distributed over workers. Ties in the final ratio go
    to the lowest restart index.
    """
    jobs = [(config, r) for r in range(config.restarts)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            climbs = list(pool.map(_climb_args, jobs))
    else:
        climbs = [_climb(*job) for job in jobs]
    done = [c for c in climbs if c.instance is not None]
    if not done:
        raise SolverRefusal("every restart exhausted the solver budget")
    best = max(done, key=lambda c: (c.ratio, -c.restart))
    bound = rho(config.m)
    return SearchResult(
        best_instance=best.instance,
        best_ratio=best.ratio,
        ratio_bound=bound,
        exceeded=best.ratio > bound + EXCEED_TOL,
        instances_evaluated=sum(c.evaluated for c in climbs),
        skipped=sum(c.skipped for c in climbs),
        best_restart=best.restart,
    )


# -- sampling ---------------------------------------------------------------

@dataclass(frozen=True)
class CeilingReport:
    m: int
    n: int
    samples: int
    max_ratio: float
    bound: float
    worst: Instance
    solved: int
    skipped: int

    @property
    def ok(self) -> bool:
        return self.max_ratio <= self.bound + EXCEED_TOL

    def as_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "samples": self.samples, "max_ratio": self.max_ratio,
            "bound": self.bound, "ok": self.ok, "solved": self.solved, "skipped": self.skipped,
            "worst": {"speeds": list(self.worst.speeds), "tasks": list(self.worst.sizes)},
        }


def ratio_ceiling_check(m: int, n: int, samples: int, seed: int = 0, identical: bool = False,
                        bound: float | None = None, node_budget: int = DEFAULT_NODE_BUDGET) -> CeilingReport:
    """Largest LPT/OPT over ``samples`` random instances, against rho_m.

    The reported maximum is exact: a sample is only skipped by the screen in
    :func:`ratio_above` when it provably cannot beat the running maximum.
    """
    rng = np.random.default_rng(seed)
    if bound is None:
        bound = rho(m)
    max_ratio, worst = 0.0, None
    solved = skipped = 0
    for _ in range(samples):
        inst = random_instance(rng, m, n, identical=identical)
        try:
            r = ratio_above(inst, max_ratio, node_budget)
        except SolverRefusal:
            skipped += 1
            continue
        if r is None:
            continue
        solved += 1
        if worst is None or r > max_ratio:
            max_ratio, worst = r, inst
    return CeilingReport(m, n, samples, max_ratio, bound, worst, solved, skipped)
