import numpy as np
import pytest

from uniform_lpt.analysis import approx_ratio, rho
from uniform_lpt.certify import normalized_evidence
from uniform_lpt.lpt import lpt_makespan
from uniform_lpt.model import Instance
from uniform_lpt.worstcase import (
    GIS_RANGE, SearchConfig, generate_gis_instance, opt_lower_bound, pad_unit_tasks, random_instance,
    ratio_above, ratio_ceiling_check, search_worst,
)
from uniform_lpt.exact import opt_bnb


def test_gis_m2():
    inst = generate_gis_instance(2)
    assert inst.speeds == pytest.approx((2.0, 2 * rho(2) - 1), abs=1e-15)
    assert inst.speeds[1] == pytest.approx(1.561553, abs=1e-6)
    assert inst.sizes == (inst.speeds[1], 1.0, 1.0)
    assert approx_ratio(inst).ratio == pytest.approx(rho(2), abs=1e-12)


def test_gis_m3_values():
    inst = generate_gis_instance(3)
    assert inst.speeds == pytest.approx((2.0, 1.7673457408619657, 1.445428354302448), abs=1e-12)
    assert rho(3) * inst.speeds[2] == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("m", GIS_RANGE)
def test_gis_family(m):
    inst = generate_gis_instance(m)
    assert all(a > b for a, b in zip(inst.speeds, inst.speeds[1:]))
    assert list(inst.sizes) == sorted(inst.sizes, reverse=True) and inst.sizes[-1] == 1.0
    assert max(inst.speeds) < 1 / (rho(m) - 1)
    rep = approx_ratio(inst)
    assert abs(rep.ratio - rho(m)) <= 1e-6
    assert abs(rep.opt - 1) <= 1e-9
    ev = normalized_evidence(inst)
    for w, s in zip(ev.truncation.loads, ev.instance.speeds):
        assert (w + 1) / s == pytest.approx(rho(m), abs=1e-6)


@pytest.mark.parametrize("m", [1, 9])
def test_gis_range_enforced(m):
    with pytest.raises(ValueError):
        generate_gis_instance(m)


def test_pad_unit_tasks():
    inst = pad_unit_tasks(generate_gis_instance(3), 6)
    assert inst.n == 6 and inst.sizes[-3:] == (1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        pad_unit_tasks(inst, 5)


def test_lower_bound_and_screen():
    rng = np.random.default_rng(0)
    for _ in range(300):
        inst = random_instance(rng, int(rng.integers(1, 5)), int(rng.integers(1, 7)))
        opt = opt_bnb(inst).makespan
        assert opt_lower_bound(inst) <= opt * (1 + 1e-12)
        exact = lpt_makespan(inst) / opt
        screened = ratio_above(inst, exact - 1e-9)
        assert screened is not None and screened == exact


def test_random_instance_identical():
    inst = random_instance(np.random.default_rng(1), 3, 4, identical=True)
    assert inst.speeds == (1.0, 1.0, 1.0)


@pytest.mark.parametrize("kwargs", [
    dict(m=0, n_max=3), dict(m=2, n_max=3, restarts=0), dict(m=2, n_max=3, step_scale=0.0),
    dict(m=2, n_max=3, step_decay=1.5), dict(m=2, n_max=3, seed=-1), dict(m=2, n_max=3, n_min=4),
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


def test_search_m2_approaches_rho2():
    res = search_worst(SearchConfig(m=2, n_max=3, restarts=200, seed=0))
    assert rho(2) - 1e-3 <= res.best_ratio <= rho(2) + 1e-9
    assert not res.exceeded


@pytest.mark.parametrize("m", [2, 3, 4])
def test_search_seeded_with_gis(m):
    res = search_worst(SearchConfig(m=m, n_max=m + 1, restarts=2, steps_per_restart=5, seed_gis=True))
    assert res.best_ratio >= rho(m) - 1e-9


def test_search_m3_never_exceeds():
    res = search_worst(SearchConfig(m=3, n_max=5, restarts=30, steps_per_restart=60, seed=5))
    assert not res.exceeded


def test_search_reproducible_and_worker_independent():
    config = SearchConfig(m=3, n_max=5, restarts=6, steps_per_restart=20, seed=7)
    first = search_worst(config)
    assert search_worst(config) == first
    parallel = search_worst(SearchConfig(m=3, n_max=5, restarts=6, steps_per_restart=20, seed=7, workers=2))
    assert parallel == first


def test_ceiling_m1_is_one():
    rep = ratio_ceiling_check(1, 5, 200)
    assert rep.max_ratio == 1.0 and rep.ok


def test_ceiling_small_runs():
    rep = ratio_ceiling_check(3, 4, 2_000, seed=1)
    assert rep.ok and rep.max_ratio < rho(3)
    rep = ratio_ceiling_check(4, 6, 1_000, seed=2)
    assert rep.ok and rep.max_ratio < rho(4)
    assert rep.solved + rep.skipped <= rep.samples


def test_ceiling_identical_uses_given_bound():
    rep = ratio_ceiling_check(2, 5, 500, identical=True, bound=7 / 6)
    assert rep.bound == 7 / 6 and rep.ok
