import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uavfronthaul.scenario import (
    GaConfig, ScenarioConfig, average_tsbs_count, config_keys, deploy_tsbss, dump_config,
    init_uavs, load_config, matern_type1,
)


def test_average_count_table_values(cfg):
    # direct hand evaluation: exp(-2e-6 * pi * 250^2) = exp(-0.3926990817)
    expected = 2e-6 * math.exp(-0.3926990817) * 16e6
    assert average_tsbs_count(cfg) == pytest.approx(expected, rel=1e-9)
    assert average_tsbs_count(cfg) == pytest.approx(21.61, abs=0.005)


def test_average_count_degenerate():
    assert average_tsbs_count(ScenarioConfig(d_min=0.0, delta=3e-6)) == pytest.approx(3e-6 * 16e6)
    assert average_tsbs_count(ScenarioConfig(delta=0.0)) == 0.0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d_min=st.floats(0, 600))
def test_matern_hard_core(seed, d_min):
    cfg = ScenarioConfig(d_min=d_min, delta=4e-6)
    tsbss = deploy_tsbss(cfg, np.random.default_rng(seed))
    pos = np.array([t.pos for t in tsbss]).reshape(-1, 2)
    if len(pos) > 1:
        d = np.linalg.norm(pos[:, None] - pos[None], axis=2)
        np.fill_diagonal(d, np.inf)
        assert d.min() >= d_min
    assert np.all((pos >= 0) & (pos <= cfg.area_side))
    assert all(t.demand in cfg.demand_menu for t in tsbss)


def test_zero_density_is_empty():
    assert deploy_tsbss(ScenarioConfig(delta=0.0), np.random.default_rng(1)) == []


def test_matern_mean_within_three_sigma(cfg):
    rng = np.random.default_rng(2024)
    counts = np.array([len(matern_type1(cfg.delta, cfg.d_min, cfg.area_side, rng)) for _ in range(10_000)])
    se = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - average_tsbs_count(cfg)) < 3 * se


def test_deployment_reproducible(cfg):
    a = deploy_tsbss(cfg, np.random.default_rng(7))
    b = deploy_tsbss(cfg, np.random.default_rng(7))
    assert a == b


def test_init_uavs_bounds_and_determinism(cfg):
    uavs = init_uavs(cfg, np.random.default_rng(3))
    assert len(uavs) == 4
    for u in uavs:
        x, y, h = u.pos
        assert 0 <= x <= cfg.area_side and 0 <= y <= cfg.area_side
        assert cfg.h_min <= h <= cfg.h_max
    assert init_uavs(cfg, np.random.default_rng(3)) == uavs


def test_init_uavs_degenerate_height():
    cfg = ScenarioConfig(h_min=500, h_max=500)
    assert all(u.pos[2] == 500 for u in init_uavs(cfg, np.random.default_rng(0)))


@pytest.mark.parametrize("bad", [
    dict(h_min=0.0), dict(h_min=900.0), dict(psi_min=2.0), dict(delta=-1.0), dict(d_min=-1.0),
    dict(bandwidth_cap=-1.0), dict(demand_menu=()), dict(demand_menu=(0.0,)), dict(power_mode="x"),
])
def test_config_rejects_invalid(bad):
    with pytest.raises(ValueError):
        ScenarioConfig(**bad)


@pytest.mark.parametrize("bad", [dict(elite_frac=1.0), dict(elite_frac=0.0), dict(pop_size=1)])
def test_ga_config_rejects_invalid(bad):
    with pytest.raises(ValueError):
        GaConfig(**bad)


def test_genes_mutated_bounded_by_chromosome():
    with pytest.raises(ValueError):
        ScenarioConfig(num_uavs=1)  # 4 mutated genes > 3
    ScenarioConfig(num_uavs=1, ga=GaConfig(genes_mutated=3))


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "scenario.yaml"
    path.write_text("bandwidth_cap: 3.0e8\nlink_cap: 9\nga_pop_size: 12\ndemand_menu: [1.0e7, 2.0e7]\nseed: 5\n")
    cfg = load_config(path)
    assert cfg.bandwidth_cap == 3e8 and cfg.link_cap == 9 and cfg.seed == 5
    assert cfg.ga.pop_size == 12 and cfg.ga.elite_frac == 0.4
    assert cfg.demand_menu == (1e7, 2e7)
    assert set(dump_config(cfg)) == set(config_keys())


def test_load_config_unknown_key(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("bandwith_cap: 1\n")
    with pytest.raises(KeyError):
        load_config(path)
