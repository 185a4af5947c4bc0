"""Longest Processing Time list scheduling on uniform processors."""

from __future__ import annotations

from .model import Instance, InstanceError, Schedule, schedule_from_assignment, validate


def lpt_assignment(instance: Instance) -> tuple[int, ...]:
    """Assign tasks in the given (non-increasing) order, each to the processor
    minimizing its resulting finish time.

    Ties go to the lowest processor index. The running per-processor state is
    the finish time, not the load.
    """
    speeds = instance.speeds
    m = len(speeds)
    clock = [0.0] * m
    assignment = []
    for size in instance.sizes:
        best = 0
        best_time = clock[0] + size / speeds[0]
        for p in range(1, m):
            finish = clock[p] + size / speeds[p]
            if finish < best_time:
                best, best_time = p, finish
        clock[best] = best_time
        assignment.append(best)
    return tuple(assignment)


def lpt_schedule(instance: Instance) -> Schedule:
    errors = validate(instance)
    if errors:
        raise InstanceError("; ".join(errors))
    return schedule_from_assignment(instance, lpt_assignment(instance))


def lpt_makespan(instance: Instance) -> float:
    return lpt_schedule(instance).makespan
