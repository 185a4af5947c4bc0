"""Exact optimal makespan for small instances.

Two independent routes: brute-force enumeration of all m**n assignments
(vectorized with numpy) and a depth-first branch-and-bound. Both sum loads in
task-index order, so on the same instance they agree to the last bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .lpt import lpt_assignment
from .model import Instance, InstanceError, schedule_from_assignment, validate

ENUMERATION_CAP = 10**8
DEFAULT_NODE_BUDGET = 5_000_000
_BLOCK = 1 << 20


class SolverRefusal(RuntimeError):
    """The exact solver declined or failed to prove optimality."""


@dataclass(frozen=True)
class OptResult:
    makespan: float
    assignment: tuple[int, ...]
    loads: tuple[float, ...]
    nodes_explored: int
    proven: bool = True

    def tasks_on(self, p: int) -> tuple[int, ...]:
        return tuple(i for i, q in enumerate(self.assignment) if q == p)


def sorted_witness(instance: Instance, assignment) -> tuple[int, ...]:
    """Relabel an assignment so loads are non-increasing in processor index.

    Handing the k-th heaviest task set to the k-th fastest processor never
    increases any finish time, so an optimal assignment stays optimal.
    """
    loads = [0.0] * instance.m
    for size, p in zip(instance.sizes, assignment):
        loads[p] += size
    order = sorted(range(instance.m), key=lambda p: (-loads[p], p))
    relabel = {old: new for new, old in enumerate(order)}
    return tuple(relabel[p] for p in assignment)


def _result(instance: Instance, assignment, makespan: float, nodes: int, proven: bool) -> OptResult:
    witness = sorted_witness(instance, assignment)
    sched = schedule_from_assignment(instance, witness)
    if sched.makespan != makespan:
        raise AssertionError(f"witness makespan {sched.makespan!r} != {makespan!r}")
    return OptResult(makespan, witness, sched.loads, nodes, proven)


def _check(instance: Instance) -> None:
    errors = validate(instance)
    if errors:
        raise InstanceError("; ".join(errors))


def _expand(base: np.ndarray, sizes, m: int) -> np.ndarray:
    """Loads of every assignment of ``sizes`` on top of ``base``.

    Row r corresponds to the base-m code of r with the first task most
    significant; additions happen in task order.
    """
    loads = base[None, :]
    eye = np.eye(m)
    for size in sizes:
        # x + 0.0 == x, so only the chosen column changes
        loads = (loads[:, None, :] + size * eye).reshape(-1, m)
    return loads


def opt_enumerate(instance: Instance, cap: int = ENUMERATION_CAP) -> OptResult:
    _check(instance)
    m, n = instance.m, instance.n
    total = m**n
    if total > cap:
        raise SolverRefusal(f"{m}^{n} = {total} assignments exceeds enumeration cap {cap}; use opt_bnb")
    speeds = np.asarray(instance.speeds)
    inner = 0
    while inner < n and m ** (inner + 1) <= _BLOCK:
        inner += 1
    head, tail = instance.sizes[: n - inner], instance.sizes[n - inner:]
    best, best_assign = np.inf, None
    for prefix in itertools.product(range(m), repeat=len(head)):
        base = np.zeros(m)
        for size, p in zip(head, prefix):
            base[p] += size
        spans = (_expand(base, tail, m) / speeds).max(axis=1)
        k = int(np.argmin(spans))
        if spans[k] < best:
            best = float(spans[k])
            best_assign = list(prefix) + [(k // m**j) % m for j in range(inner - 1, -1, -1)]
    return _result(instance, best_assign, best, total, True)


def opt_bnb(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> OptResult:
    """Branch-and-bound over tasks in index order, processors in index order.

    The LPT schedule is the initial incumbent. A child is dropped when its
    finish time cannot beat the incumbent; a node is dropped when the idle
    capacity below the incumbent cannot absorb the remaining work. Among
    equal-speed processors with equal current load only the first is tried.
    When the budget runs out the incumbent is returned with ``proven=False``.
    """
    _check(instance)
    sizes, speeds = instance.sizes, instance.speeds
    m, n = instance.m, instance.n

    incumbent = schedule_from_assignment(instance, lpt_assignment(instance))
    best = incumbent.makespan
    best_assign = list(incumbent.assignment)
    # any assignment puts task 0 somewhere, so this is a rigorous floor
    floor = sizes[0] / speeds[0]

    suffix = [0.0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    group = [0] * m
    for p in range(1, m):
        group[p] = group[p - 1] if speeds[p] == speeds[p - 1] else p

    loads = [0.0] * m
    assign = [0] * n
    nodes = 0

    class _Stop(Exception):
        pass

    def descend(i: int, span: float) -> None:
        nonlocal best, best_assign, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Stop
        if span >= best:
            return
        if i == n:
            if span < best:
                best, best_assign = span, assign[:]
                if best <= floor:
                    raise _Stop
            return
        room = 0.0
        for p in range(m):
            gap = best * speeds[p] - loads[p]
            if gap > 0:
                room += gap
        if room < suffix[i] * (1 - 1e-10):
            return
        size = sizes[i]
        for p in range(m):
            old = loads[p]
            if any(loads[q] == old for q in range(group[p], p)):
                continue
            new = old + size
            finish = new / speeds[p]
            if finish >= best:
                continue
            loads[p] = new
            assign[i] = p
            descend(i + 1, span if span >= finish else finish)
            loads[p] = old

    proven = True
    if best > floor:
        try:
            descend(0, 0.0)
        except _Stop:
            proven = nodes <= node_budget
    return _result(instance, best_assign, best, nodes, proven)


def lower_bound(instance: Instance) -> float:
    """max(t(1)/s(1), total work / total speed); never exceeds OPT."""
    return max(instance.sizes[0] / instance.speeds[0], sum(instance.sizes) / sum(instance.speeds))
