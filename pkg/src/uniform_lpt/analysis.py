"""Characteristic polynomials, the tight ratios rho_m, and ratio reports."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from .exact import DEFAULT_NODE_BUDGET, SolverRefusal, opt_bnb
from .lpt import lpt_makespan
from .model import DegenerateInstance, Instance

TIGHT_RANGE = range(1, 6)


class NoPositiveRoot(ArithmeticError):
    pass


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Coefficients in ascending order: coefficients[k] multiplies x**k."""

    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = [float(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = (float(other),)
        else:
            other = other.coefficients
        size = max(len(self.coefficients), len(other))
        a = self.coefficients + (0.0,) * (size - len(self.coefficients))
        b = tuple(other) + (0.0,) * (size - len(other))
        return CharacteristicPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__


def char_poly(m: int) -> CharacteristicPolynomial:
    """2x^m - x^(m-1) - ... - x - 2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return CharacteristicPolynomial((-2.0,) + (-1.0,) * (m - 1) + (2.0,))


def poly_sum(indices: Iterable[int]) -> CharacteristicPolynomial:
    indices = list(indices)
    if not indices:
        raise ValueError("empty index set")
    return sum((char_poly(i) for i in indices[1:]), char_poly(indices[0]))


def _bisect(poly: CharacteristicPolynomial, lo: float, hi: float, tol: float) -> float:
    # invariant: poly(lo) <= 0 < poly(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if poly(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo if abs(poly(lo)) <= abs(poly(hi)) else hi


def max_positive_root(poly: CharacteristicPolynomial, tol: float = 1e-12, grid: int = 4096) -> float:
    """Largest positive root at which ``poly`` changes sign.

    The upper bracket doubles from x = 2 until it clears the Cauchy root
    bound, beyond which the polynomial has the sign of its leading term. A
    grid march downward finds the rightmost grid point where that sign is
    lost and bisection closes the cell. Pairs of roots inside one grid cell
    and roots of even multiplicity are not detected.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if poly.coefficients[-1] < 0:
        poly = CharacteristicPolynomial(tuple(-c for c in poly.coefficients))
    coeffs = poly.coefficients
    cauchy = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    hi = 2.0
    while hi <= cauchy:
        hi *= 2
    step = hi / grid
    for k in range(grid - 1, -1, -1):
        x = k * step
        if poly(x) <= 0:
            break
    else:
        raise NoPositiveRoot("no sign change on [0, upper bracket]")
    if x == 0 and poly(0.0) == 0:
        raise NoPositiveRoot("no positive root found (root at x = 0)")
    return _bisect(poly, x, x + step, tol)


@functools.lru_cache(maxsize=None)
def rho(m: int) -> float:
    """Unique positive root of 2x^m - x^(m-1) - ... - x - 2, to full precision."""
    if m < 1:
        raise ValueError("m must be >= 1")
    # P_m(1) = -(m - 1) <= 0 < 2^m = P_m(2)
    return _bisect(char_poly(m), 1.0, 2.0, 0.0)


def gis_bound(m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return 2 * m / (m + 1)


def graham_bound(m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return 4 / 3 - 1 / (3 * m)


@dataclass(frozen=True)
class RatioReport:
    lpt: float
    opt: float
    ratio: float
    rho_m: float | None
    gis_bound: float
    graham_bound: float
    m: int
    n: int

    def as_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "lpt": self.lpt, "opt": self.opt, "ratio": self.ratio,
            "rho_m": self.rho_m, "gis_bound": self.gis_bound, "graham_bound": self.graham_bound,
        }


def approx_ratio(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> RatioReport:
    if instance.sizes[-1] <= 0:
        raise DegenerateInstance("smallest task has size 0")
    lpt = lpt_makespan(instance)
    result = opt_bnb(instance, node_budget)
    if not result.proven:
        raise SolverRefusal(f"node budget {node_budget} exhausted; optimum unproven")
    m = instance.m
    return RatioReport(
        lpt=lpt,
        opt=result.makespan,
        ratio=lpt / result.makespan,
        rho_m=rho(m) if m in TIGHT_RANGE else None,
        gis_bound=gis_bound(m),
        graham_bound=graham_bound(m),
        m=m,
        n=instance.n,
    )
