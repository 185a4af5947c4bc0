import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import instances, scale_factors
from uniform_lpt.analysis import (
    CharacteristicPolynomial, NoPositiveRoot, approx_ratio, char_poly, gis_bound, graham_bound,
    max_positive_root, poly_sum, rho,
)
from uniform_lpt.exact import SolverRefusal
from uniform_lpt.model import DegenerateInstance, Instance, scale
from uniform_lpt.worstcase import generate_gis_instance, random_instance

# bisection values, cross-checked against numpy.roots below
RHO = {2: 1.2807764064044151, 3: 1.3836728704309829, 4: 1.4326672112021803, 5: 1.459107397639808}


@pytest.mark.parametrize("m, coeffs", [
    (1, (-2.0, 2.0)),
    (2, (-2.0, -1.0, 2.0)),
    (5, (-2.0, -1.0, -1.0, -1.0, -1.0, 2.0)),
])
def test_char_poly(m, coeffs):
    assert char_poly(m).coefficients == coeffs


def test_char_poly_rejects_m0():
    with pytest.raises(ValueError):
        char_poly(0)


def test_rho_1_and_closed_form_rho_2():
    assert max_positive_root(char_poly(1)) == pytest.approx(1.0, abs=1e-12)
    assert rho(1) == 1.0
    assert rho(2) == pytest.approx((1 + math.sqrt(17)) / 4, abs=1e-15)


@pytest.mark.parametrize("m", sorted(RHO))
def test_rho_values(m):
    assert rho(m) == pytest.approx(RHO[m], abs=1e-15)
    assert f"{rho(m):.2f}" == {2: "1.28", 3: "1.38", 4: "1.43", 5: "1.46"}[m]
    roots = np.roots(char_poly(m).coefficients[::-1])
    real = max(r.real for r in roots if abs(r.imag) < 1e-12 and r.real > 0)
    assert rho(m) == pytest.approx(real, abs=1e-12)


def test_rho_increasing_and_residual():
    values = [rho(m) for m in range(1, 12)]
    assert all(a < b for a, b in zip(values, values[1:]))
    for m in range(1, 11):
        assert abs(char_poly(m)(rho(m))) <= 1e-9


@pytest.mark.parametrize("m", range(2, 6))
def test_sandwich(m):
    assert graham_bound(m) <= rho(m) <= gis_bound(m)


def test_max_positive_root_agrees_with_rho():
    for m in range(1, 9):
        assert max_positive_root(char_poly(m)) == pytest.approx(rho(m), abs=1e-11)


def test_max_positive_root_general():
    # (x - 1)(x - 3) with leading coefficient negative
    poly = CharacteristicPolynomial((-3.0, 4.0, -1.0))
    assert max_positive_root(poly) == pytest.approx(3.0, abs=1e-11)
    with pytest.raises(NoPositiveRoot):
        max_positive_root(CharacteristicPolynomial((1.0, 1.0)))
    with pytest.raises(ValueError):
        max_positive_root(char_poly(2), tol=0)


def test_pair_sum_root_below_rho3():
    assert max_positive_root(poly_sum([2, 3])) <= rho(3) + 1e-9


@pytest.mark.parametrize("m", range(1, 7))
def test_subset_roots(m):
    grid = np.linspace(rho(m) + 1e-6, 1.5 - 1e-6, 2001)
    for k in range(1, m + 1):
        for subset in itertools.combinations(range(1, m + 1), k):
            poly = poly_sum(subset)
            assert max_positive_root(poly) <= rho(m) + 1e-9
            if rho(m) + 1e-6 < 1.5 - 1e-6:
                shifted = np.array([poly(x) for x in grid]) + 3 - 2 * grid
                assert np.all(shifted > 0), subset


def test_polynomial_addition():
    total = char_poly(1) + char_poly(2)
    assert total.coefficients == (-4.0, 1.0, 2.0)
    assert (char_poly(2) + 3).coefficients == (1.0, -1.0, 2.0)
    assert sum([char_poly(1)], 0).coefficients == char_poly(1).coefficients
    with pytest.raises(ValueError):
        char_poly(1) + CharacteristicPolynomial((0.0, -2.0))


def test_graham_ratio_is_seven_sixths(graham):
    rep = approx_ratio(graham)
    assert (rep.lpt, rep.opt) == (7.0, 6.0)
    assert rep.ratio == 7 / 6
    assert rep.rho_m == rho(2)


@given(st.lists(st.floats(0.5, 4.0), min_size=1, max_size=6), st.floats(0.5, 4.0))
def test_single_processor_ratio_one(sizes, speed):
    assert approx_ratio(Instance.from_unsorted([speed], sizes)).ratio == 1.0


def test_gis_m3_ratio():
    rep = approx_ratio(generate_gis_instance(3))
    assert abs(rep.ratio - rho(3)) <= 1e-6
    assert rep.gis_bound == 1.5


def test_rho_m_only_for_tight_range():
    inst = Instance((1.0,) * 6, (1.0,) * 6)
    assert approx_ratio(inst).rho_m is None


def test_degenerate_and_refusal():
    with pytest.raises(DegenerateInstance):
        approx_ratio(Instance((1.0,), (1.0, 0.0)))
    inst = random_instance(np.random.default_rng(3), 5, 12)
    with pytest.raises(SolverRefusal):
        approx_ratio(inst, node_budget=10)


@given(instances(max_m=4, max_n=6), st.floats(0.1, 10.0))
def test_ratio_scale_invariant(inst, c):
    base = approx_ratio(inst).ratio
    assert approx_ratio(scale(inst, size_factor=c)).ratio == pytest.approx(base, abs=1e-12)
    assert approx_ratio(scale(inst, speed_factor=c)).ratio == pytest.approx(base, abs=1e-12)


@given(instances(max_m=5, max_n=6))
def test_ratio_at_least_one(inst):
    rep = approx_ratio(inst)
    assert rep.ratio >= 1.0
    if inst.m <= 5:
        assert rep.ratio <= rho(inst.m) + 1e-9
