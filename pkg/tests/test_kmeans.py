import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_cfg
from uavfronthaul.kmeans import kmeans_placement, lloyd
from uavfronthaul.scenario import Tsbs


def test_two_clusters():
    pts = np.array([(0, 0), (0, 2), (10, 0), (10, 2)], float)
    for seed in range(10):
        centers, _ = lloyd(pts, 2, np.random.default_rng(seed))
        assert sorted(map(tuple, centers)) == [(0.0, 1.0), (10.0, 1.0)]


def test_k_equals_t_and_single_cluster():
    pts = np.random.default_rng(0).uniform(0, 100, (6, 2))
    centers, _ = lloyd(pts, 6, np.random.default_rng(1))
    assert sorted(map(tuple, centers)) == sorted(map(tuple, pts))
    centers, labels = lloyd(pts, 1, np.random.default_rng(1))
    assert np.allclose(centers[0], pts.mean(axis=0)) and set(labels) == {0}


def test_rejects_too_few_points():
    with pytest.raises(ValueError):
        lloyd(np.zeros((2, 2)), 3, np.random.default_rng(0))
    with pytest.raises(ValueError):
        kmeans_placement([Tsbs(0, (1.0, 1.0), 2e7)], make_cfg(), np.random.default_rng(0))


def test_duplicate_points_reseed():
    pts = np.array([(0, 0), (0, 0), (0, 0), (5, 5)], float)
    centers, labels = lloyd(pts, 3, np.random.default_rng(0))
    assert np.all(np.isfinite(centers)) and len(labels) == 4


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(4, 40), k=st.integers(1, 4))
def test_objective_non_increasing(seed, n, k):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0, 4000, (n, 2))
    trace = []
    lloyd(pts, k, rng, trace=trace)
    assert np.all(np.diff(trace) <= 1e-6 * max(trace[0], 1.0))


def test_placement_heights():
    rng = np.random.default_rng(3)
    tsbss = [Tsbs(i, tuple(rng.uniform(0, 4000, 2)), 2e7) for i in range(10)]
    uavs = kmeans_placement(tsbss, make_cfg(), np.random.default_rng(0))
    assert len(uavs) == 4 and all(u.pos[2] == 550 for u in uavs)
    uavs = kmeans_placement(tsbss, make_cfg(baseline_height=700.0), np.random.default_rng(0))
    assert all(u.pos[2] == 700 for u in uavs)
