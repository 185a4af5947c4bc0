"""Necessary conditions for minimality, checked on concrete instances.

An instance is *minimal* when every instance with no more processors and no
more tasks (and not both equal) has a strictly smaller LPT ratio. Each check
below is a consequence of minimality; a failing check therefore certifies
that the instance is not minimal. Passing every check proves nothing beyond
consistency.

All checks work on an instance scaled so that the smallest task has size 1
and the optimal makespan is 1. ``T'(p)`` is the LPT task set of processor p
with the last task removed; ``T*(p)`` is the task set in an optimal witness
whose loads are non-increasing in p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .exact import DEFAULT_NODE_BUDGET, OptResult, SolverRefusal, opt_bnb
from .lpt import lpt_schedule
from .model import EPS, Instance, Schedule, dumps, normalize_opt, normalize_sizes

HOLDS, FAILS, INAPPLICABLE = "holds", "fails", "inapplicable"
NON_MINIMAL = "certified-non-minimal"
CONSISTENT = "consistent-with-minimality"
MAPPING_CAP = 10**6


class NotNormalized(ValueError):
    pass


class MappingCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Condition:
    name: str
    status: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class Truncation:
    """LPT task sets and workloads without the final task."""

    sets: tuple[tuple[int, ...], ...]
    loads: tuple[float, ...]


@dataclass(frozen=True)
class Evidence:
    instance: Instance
    lpt: Schedule
    truncation: Truncation
    opt: OptResult | None
    rho_I: float

    @property
    def opt_sets(self) -> tuple[tuple[int, ...], ...]:
        if self.opt is None:
            raise ValueError("no optimal witness available")
        return tuple(self.opt.tasks_on(p) for p in range(self.instance.m))

    @property
    def normalized(self) -> bool:
        opt = 1.0 if self.opt is None else self.opt.makespan
        return abs(self.instance.sizes[-1] - 1) <= EPS and abs(opt - 1) <= EPS


def _truncate(instance: Instance, assignment) -> Truncation:
    m, n = instance.m, instance.n
    sets = tuple(tuple(i for i in range(n - 1) if assignment[i] == p) for p in range(m))
    loads = [0.0] * m
    for i in range(n - 1):
        loads[assignment[i]] += instance.sizes[i]
    return Truncation(sets, tuple(loads))


def lpt_minus_last(instance: Instance) -> Truncation:
    """Run LPT and drop the last (smallest) task from its processor."""
    return _truncate(instance, lpt_schedule(instance).assignment)


def gather(instance: Instance, solve: bool = True, node_budget: int = DEFAULT_NODE_BUDGET) -> Evidence:
    """Evidence on the instance as given. Without ``solve`` the optimum is taken to be 1."""
    sched = lpt_schedule(instance)
    opt = None
    if solve:
        opt = opt_bnb(instance, node_budget)
        if not opt.proven:
            raise SolverRefusal(f"node budget {node_budget} exhausted; optimum unproven")
    rho_I = sched.makespan / (1.0 if opt is None else opt.makespan)
    return Evidence(instance, sched, _truncate(instance, sched.assignment), opt, rho_I)


def normalized_evidence(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> Evidence:
    """Scale sizes so t(n) = 1 and speeds so OPT = 1, then gather evidence.

    The LPT assignment, its ratio and the witness come from the size-scaled
    instance; scaling speeds by OPT changes neither.
    """
    sized = normalize_sizes(instance)
    ev = gather(sized, node_budget=node_budget)
    scaled = normalize_opt(sized, ev.opt.makespan)
    witness = OptResult(1.0, ev.opt.assignment, ev.opt.loads, ev.opt.nodes_explored, ev.opt.proven)
    lpt = Schedule(
        ev.lpt.assignment,
        ev.lpt.loads,
        tuple(w / s for w, s in zip(ev.lpt.loads, scaled.speeds)),
        ev.rho_I,
    )
    return Evidence(scaled, lpt, ev.truncation, witness, ev.rho_I)


def _evidence(instance: Instance, evidence: Evidence | None, normalized: bool = True,
              solve: bool = True) -> Evidence:
    if evidence is not None:
        return evidence
    ev = gather(instance, solve=solve)
    if normalized and not ev.normalized:
        raise NotNormalized("instance must have t(n) = 1 and OPT = 1; normalize first")
    return ev


# -- individual conditions --------------------------------------------------

def check_workload_bound(instance: Instance, opt_normalized: bool = False,
                         evidence: Evidence | None = None) -> Condition:
    """(w'(p) + 1) / s(p) >= rho_I on every processor.

    With ``opt_normalized`` the caller vouches that OPT = 1 and the exact
    solver is not run.
    """
    ev = _evidence(instance, evidence, solve=not opt_normalized)
    inst = ev.instance
    unit = inst.sizes[-1]
    bad = []
    for p, (w, s) in enumerate(zip(ev.truncation.loads, inst.speeds)):
        value = (w + unit) / s
        if value < ev.rho_I - EPS:
            bad.append(f"p{p + 1}: {value:.6f} < {ev.rho_I:.6f}")
    if bad:
        return Condition("workload_bound", FAILS, "; ".join(bad))
    return Condition("workload_bound", HOLDS, f"all (w'(p)+1)/s(p) >= {ev.rho_I:.6f}")


def dominates(instance: Instance, p: int, q: int, evidence: Evidence | None = None,
              cap: int = MAPPING_CAP) -> bool:
    """Whether processor p dominates processor q (0-based indices).

    p must be no faster than q, and the optimal tasks of q must map into the
    truncated LPT tasks of p with no target overfilled beyond its own size.
    Mappings are enumerated exhaustively.
    """
    ev = _evidence(instance, evidence, normalized=False)
    inst = ev.instance
    # raw comparisons: any slack here would let float noise manufacture a
    # domination, and a domination is a non-minimality certificate
    if inst.speeds[p] > inst.speeds[q]:
        return False
    sources = ev.opt_sets[q]
    targets = ev.truncation.sets[p]
    if not sources:
        return True
    if not targets:
        return False
    if len(targets) ** len(sources) > cap:
        raise MappingCapExceeded(f"{len(targets)}^{len(sources)} mappings exceed cap {cap}")
    t = inst.sizes
    for mapping in itertools.product(range(len(targets)), repeat=len(sources)):
        fill = [[] for _ in targets]
        for j, k in zip(sources, mapping):
            fill[k].append(t[j])
        if all(math.fsum(f) <= t[i] for f, i in zip(fill, targets)):
            return True
    return False


def check_no_domination(instance: Instance, evidence: Evidence | None = None) -> Condition:
    ev = _evidence(instance, evidence, normalized=False)
    m = ev.instance.m
    try:
        pairs = [(p, q) for p in range(m) for q in range(m) if dominates(ev.instance, p, q, ev)]
    except MappingCapExceeded as exc:
        return Condition("no_domination", INAPPLICABLE, str(exc))
    if pairs:
        listed = ", ".join(f"p{p + 1}>p{q + 1}" for p, q in pairs)
        return Condition("no_domination", FAILS, f"dominating pairs: {listed}")
    return Condition("no_domination", HOLDS, "no processor dominates any processor")


def check_structural(instance: Instance, evidence: Evidence | None = None) -> list[Condition]:
    ev = _evidence(instance, evidence, normalized=False)
    opt_sets = ev.opt_sets
    out = []

    empty = [p + 1 for p, tasks in enumerate(opt_sets) if not tasks]
    if empty:
        out.append(Condition("empty_processor", FAILS, f"optimal witness leaves processors {empty} empty"))
    else:
        out.append(Condition("empty_processor", HOLDS,
                             "no empty processor in the examined witness (other optima not examined)"))

    if ev.rho_I <= 1 + EPS:
        out.append(Condition("truncated_nonempty", INAPPLICABLE, "rho_I = 1"))
    else:
        bare = [p + 1 for p, tasks in enumerate(ev.truncation.sets) if not tasks]
        if bare:
            out.append(Condition("truncated_nonempty", FAILS, f"T'(p) empty for p in {bare}"))
        else:
            out.append(Condition("truncated_nonempty", HOLDS, "every T'(p) is non-empty"))

    if ev.instance.m < 2:
        out.append(Condition("fastest_two_tasks", INAPPLICABLE, "m < 2"))
    elif len(opt_sets[0]) <= 1:
        out.append(Condition("fastest_two_tasks", FAILS, f"|T*(1)| = {len(opt_sets[0])}"))
    else:
        out.append(Condition("fastest_two_tasks", HOLDS, f"|T*(1)| = {len(opt_sets[0])}"))
    return out


def check_task_count(instance: Instance, evidence: Evidence | None = None) -> Condition:
    """n <= sum of sizes <= (m - 1) / (rho_I - 1)."""
    ev = _evidence(instance, evidence)
    inst = ev.instance
    if ev.rho_I <= 1 + EPS:
        return Condition("task_count", INAPPLICABLE, "rho_I = 1")
    total = math.fsum(inst.sizes)
    bound = (inst.m - 1) / (ev.rho_I - 1)
    detail = f"n = {inst.n}, sum t = {total:.6f}, (m-1)/(rho_I-1) = {bound:.6f}"
    if inst.n <= total + EPS and total <= bound + EPS:
        return Condition("task_count", HOLDS, detail)
    return Condition("task_count", FAILS, detail)


def check_ratio_regime(instance: Instance, evidence: Evidence | None = None) -> list[Condition]:
    ev = _evidence(instance, evidence)
    inst = ev.instance
    out = []
    if ev.rho_I <= 1 + EPS:
        out.append(Condition("speed_workload", INAPPLICABLE, "rho_I = 1"))
    else:
        threshold = 1 / (ev.rho_I - 1)
        bad = [
            f"p{p + 1}: w'={w:.6f} <= s={s:.6f}"
            for p, (w, s) in enumerate(zip(ev.truncation.loads, inst.speeds))
            if s > threshold + EPS and w < s - EPS
        ]
        if bad:
            out.append(Condition("speed_workload", FAILS, "; ".join(bad)))
        else:
            out.append(Condition("speed_workload", HOLDS, f"w'(p) > s(p) wherever s(p) > {threshold:.6f}"))

    if inst.n != inst.m + 2 or inst.m < 3:
        out.append(Condition("ratio_below_1_5", INAPPLICABLE, "needs n = m + 2 and m >= 3"))
    elif ev.rho_I >= 1.5 + EPS:
        out.append(Condition("ratio_below_1_5", FAILS, f"rho_I = {ev.rho_I:.6f} >= 1.5"))
    else:
        out.append(Condition("ratio_below_1_5", HOLDS, f"rho_I = {ev.rho_I:.6f} < 1.5"))
    return out


# -- aggregate --------------------------------------------------------------

CONDITION_NAMES = (
    "workload_bound", "no_domination", "empty_processor", "truncated_nonempty",
    "fastest_two_tasks", "task_count", "speed_workload", "ratio_below_1_5",
)


@dataclass(frozen=True)
class CertificationReport:
    conditions: tuple[Condition, ...]
    rho_I: float | None

    @property
    def verdict(self) -> str:
        return NON_MINIMAL if any(c.status == FAILS for c in self.conditions) else CONSISTENT

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.conditions if c.status == FAILS)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "rho_I": self.rho_I,
            "conditions": [c.as_dict() for c in self.conditions],
        }

    def to_json(self) -> str:
        return dumps(self.as_dict(), indent=2)


def certify(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> CertificationReport:
    """Normalize, run every condition in a fixed order, and report."""
    try:
        ev = normalized_evidence(instance, node_budget)
    except SolverRefusal as exc:
        return CertificationReport(tuple(Condition(name, INAPPLICABLE, str(exc)) for name in CONDITION_NAMES), None)
    conditions = [
        check_workload_bound(ev.instance, evidence=ev),
        check_no_domination(ev.instance, evidence=ev),
        *check_structural(ev.instance, evidence=ev),
        check_task_count(ev.instance, evidence=ev),
        *check_ratio_regime(ev.instance, evidence=ev),
    ]
    return CertificationReport(tuple(conditions), ev.rho_I)
