"""Instances, schedules, normalization and the JSON instance format."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EPS = 1e-9


class InstanceError(ValueError):
    """Raised when an instance violates its invariants or cannot be parsed."""


class DegenerateInstance(InstanceError):
    """Raised for instances whose smallest task has size zero."""


@dataclass(frozen=True)
class Instance:
    """An instance (m, n, s, t) of makespan scheduling on uniform processors.

    Speeds and sizes are stored as tuples of floats. Construction does not
    check sortedness; use :func:`validate` or :meth:`check`.
    """

    speeds: tuple[float, ...]
    sizes: tuple[float, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "speeds", tuple(float(s) for s in self.speeds))
        object.__setattr__(self, "sizes", tuple(float(t) for t in self.sizes))

    @property
    def m(self) -> int:
        return len(self.speeds)

    @property
    def n(self) -> int:
        return len(self.sizes)

    def check(self) -> "Instance":
        errors = validate(self)
        if errors:
            raise InstanceError("; ".join(errors))
        return self

    @classmethod
    def from_unsorted(cls, speeds: Iterable[float], sizes: Iterable[float], name: str | None = None) -> "Instance":
        return cls(tuple(sorted(speeds, reverse=True)), tuple(sorted(sizes, reverse=True)), name)


@dataclass(frozen=True)
class Schedule:
    assignment: tuple[int, ...]
    loads: tuple[float, ...]
    finish_times: tuple[float, ...]
    makespan: float

    def tasks_on(self, p: int) -> tuple[int, ...]:
        return tuple(i for i, q in enumerate(self.assignment) if q == p)


def validate(instance: Instance) -> list[str]:
    """Return a list of invariant violations (empty when the instance is valid)."""
    errors = []
    s, t = instance.speeds, instance.sizes
    if instance.m < 1:
        errors.append("m must be >= 1")
    if instance.n < 1:
        errors.append("n must be >= 1")
    if not all(math.isfinite(x) for x in s + t):
        errors.append("values must be finite")
    if any(x <= 0 for x in s):
        errors.append("speeds must be positive")
    if any(x < 0 for x in t):
        errors.append("sizes must be non-negative")
    if any(a < b for a, b in zip(s, s[1:])):
        errors.append("speeds not non-increasing")
    if any(a < b for a, b in zip(t, t[1:])):
        errors.append("sizes not non-increasing")
    return errors


def schedule_from_assignment(instance: Instance, assignment: Sequence[int]) -> Schedule:
    """Build a Schedule, summing loads in task-index order."""
    if len(assignment) != instance.n:
        raise InstanceError("assignment length does not match n")
    loads = [0.0] * instance.m
    for size, p in zip(instance.sizes, assignment):
        loads[p] += size
    finish = tuple(w / s for w, s in zip(loads, instance.speeds))
    return Schedule(tuple(int(p) for p in assignment), tuple(loads), finish, max(finish))


def normalize_sizes(instance: Instance) -> Instance:
    """Divide every size by the smallest one so that t(n) = 1."""
    smallest = instance.sizes[-1]
    if smallest <= 0:
        raise DegenerateInstance("smallest task has size 0; cannot normalize")
    return Instance(instance.speeds, tuple(t / smallest for t in instance.sizes), instance.name)


def normalize_opt(instance: Instance, opt: float) -> Instance:
    """Multiply speeds by ``opt`` so the rescaled instance has optimum 1."""
    if not opt > 0:
        raise InstanceError(f"opt must be positive, got {opt!r}")
    return Instance(tuple(s * opt for s in instance.speeds), instance.sizes, instance.name)


def scale(instance: Instance, size_factor: float = 1.0, speed_factor: float = 1.0) -> Instance:
    return Instance(
        tuple(s * speed_factor for s in instance.speeds),
        tuple(t * size_factor for t in instance.sizes),
        instance.name,
    )


# -- file format ------------------------------------------------------------

def dumps(obj, indent: int | None = None, _level: int = 0) -> str:
    """JSON encoding with floats written to 17 significant digits."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite float is not valid JSON")
        text = format(obj, ".17g")
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # numeric arrays stay on one line
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize_instance(instance: Instance) -> str:
    data: dict = {}
    if instance.name is not None:
        data["name"] = instance.name
    data["speeds"] = list(instance.speeds)
    data["tasks"] = list(instance.sizes)
    return dumps(data, indent=2) + "\n"


def parse_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed instance file: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("instance file must hold a JSON object")
    for key in ("speeds", "tasks"):
        if key not in data:
            raise InstanceError(f"missing field {key!r}")
        if not isinstance(data[key], list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in data[key]
        ):
            raise InstanceError(f"field {key!r} must be an array of numbers")
    for key in ("m", "n"):
        declared = data.get(key)
        actual = len(data["speeds"] if key == "m" else data["tasks"])
        if declared is not None and declared != actual:
            raise InstanceError(f"declared {key}={declared} but array has length {actual}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InstanceError("field 'name' must be a string")
    instance = Instance(tuple(data["speeds"]), tuple(data["tasks"]), name)
    errors = validate(instance)
    if errors:
        raise InstanceError("; ".join(errors))
    return instance


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
