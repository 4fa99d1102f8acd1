import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_cfg, synthetic_table
from uavfronthaul.channel import compute_link_table, sample_fading
from uavfronthaul.ga import Landscape
from uavfronthaul.oracle import (
    check_constraints, exhaustive_association, grid_axes, grid_search_positions, trace_association,
)
from uavfronthaul.association import associate
from uavfronthaul.scenario import MHZ, ScenarioConfig

ONE = dict(num_uavs=1, ga_genes_mutated=3)


def test_exhaustive_worked_example():
    cfg = make_cfg(bandwidth_cap=30 * MHZ, **ONE)
    t = synthetic_table([1.0, 1.0], [20e6, 40e6])
    a, f = exhaustive_association(t, cfg)
    assert a[:, 0].tolist() == [1, 0] and f == 20e6
    assert associate(t, cfg)[1] == f


def test_exhaustive_no_feasible_links(cfg):
    t = synthetic_table(np.full((3, 2), 0.01), np.full(3, 20e6))
    a, f = exhaustive_association(t, cfg.replace(num_uavs=2))
    assert a.sum() == 0 and f == 0.0


def test_exhaustive_slack(loose_cfg):
    t = synthetic_table(np.full((4, 2), 1.0), [20e6, 40e6, 60e6, 80e6])
    a, f = exhaustive_association(t, loose_cfg.replace(num_uavs=2))
    assert f == 200e6 and a.sum(axis=1).tolist() == [1, 1, 1, 1]


def test_exhaustive_beats_greedy_when_greedy_is_myopic():
    # greedy admits the efficient small link first and then cannot fit the big one
    cfg = make_cfg(bandwidth_cap=60 * MHZ, **ONE)
    t = synthetic_table([3.0, 1.0], [20e6, 60e6])
    assert associate(t, cfg)[1] == 20e6
    assert exhaustive_association(t, cfg)[1] == 60e6


def test_exhaustive_bounds(cfg):
    with pytest.raises(ValueError):
        exhaustive_association(synthetic_table(np.ones((13, 1)), np.ones(13)), cfg)


def random_instance(seed, t_max=6, u_max=2):
    rng = np.random.default_rng(seed)
    T = int(rng.integers(1, t_max + 1))
    U = int(rng.integers(1, u_max + 1))
    side = float(rng.choice([800.0, 2000.0, 4000.0]))
    cfg = make_cfg(
        num_uavs=U, area_side=side, ga_genes_mutated=min(3, 3 * U),
        bandwidth_cap=float(rng.choice([20e6, 60e6, 200e6])), link_cap=int(rng.integers(0, 4)),
        backhaul_cap=float(rng.choice([40e6, 150e6, 1.66e9])),
        power_mode=str(rng.choice(["broadcast", "per_link"])),
    )
    tsbs = rng.uniform(0, side, (T, 2))
    demand = rng.choice(cfg.demand_menu, T)
    uavs = np.column_stack([rng.uniform(0, side, (U, 2)), rng.uniform(cfg.h_min, cfg.h_max, U)])
    fad = sample_fading(T, U, cfg, rng)
    return cfg, tsbs, demand, uavs, fad


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_oracle_results_pass_checker(seed):
    cfg, tsbs, demand, uavs, fad = random_instance(seed)
    table = compute_link_table(tsbs, demand, uavs, fad, cfg)
    a, f = exhaustive_association(table, cfg)
    assert check_constraints(a, tsbs, demand, uavs, fad, cfg) == []
    assert associate(table, cfg)[1] <= f


def test_checker_flags_violations(cfg):
    c = cfg.replace(num_uavs=2, link_cap=1, backhaul_cap=30e6)
    tsbs = np.array([[100.0, 100.0], [120.0, 100.0]])
    uavs = np.array([[100.0, 100.0, 900.0], [130.0, 100.0, 400.0]])
    fad = sample_fading(2, 2, c, np.random.default_rng(0))
    problems = check_constraints(np.array([[1, 1], [1, 0]]), tsbs, np.array([20e6, 20e6]), uavs, fad, c)
    text = " ".join(problems)
    for tag in ("height", "single connection", "links", "backhaul"):
        assert tag in text


def test_trace_matches_pipeline_on_examples():
    cfg = make_cfg(bandwidth_cap=30 * MHZ, **ONE)
    t = synthetic_table([1.0, 1.0], [20e6, 40e6])
    a, f = trace_association(t, cfg)
    assert a[:, 0].tolist() == [1, 0] and f == 20e6


def test_grid_axes(cfg):
    xs, ys, hs = grid_axes(cfg)
    assert xs.tolist() == [400, 1200, 2000, 2800, 3600] and hs.tolist() == [300, 550, 800]


def test_grid_single_point_equals_fitness(cfg):
    c = cfg.replace(**ONE)
    rng = np.random.default_rng(3)
    tsbs = rng.uniform(0, 4000, (4, 2))
    land = Landscape(tsbs, np.full(4, 40e6), sample_fading(4, 1, c, rng), c)
    pos, f = grid_search_positions(land, c, (1, 1, 1))
    assert pos.tolist() == [[2000.0, 2000.0, 550.0]]
    assert f == land.fitness(pos.reshape(1, -1))[0]
    pos5, f5 = grid_search_positions(land, c, (5, 5, 3))
    assert f5 >= f


def test_grid_rejects_large(cfg):
    land = Landscape(np.zeros((1, 2)), np.ones(1), sample_fading(1, 4, cfg, np.random.default_rng(0)), cfg)
    with pytest.raises(ValueError):
        grid_search_positions(land, cfg)
    c2 = cfg.replace(num_uavs=2)
    with pytest.raises(ValueError):
        grid_search_positions(land, c2, (10, 10, 2))
