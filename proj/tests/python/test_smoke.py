import json
import math
from pathlib import Path

import numpy as np
import pytest

import gridmob

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def small_env(obstacles=()):
    return gridmob.parse_environment(json.dumps({
        "width_m": 50, "height_m": 50, "cell_size_m": 10, "radio_range_m": 20,
        "station_count": 36, "obstacles": list(obstacles),
    }))


def test_environment_shape():
    env = small_env([{"x_m": 15, "y_m": 15, "w_m": 10, "h_m": 10}])
    assert (env.cols, env.rows) == (6, 6)
    assert env.node_count == 35
    assert not env.is_free((2, 2))
    assert env.position((3, 1)) == (30.0, 10.0)


def test_path_count_is_exact_and_large():
    env = gridmob.load_environment(str(CONFIGS / "layout_460.json"))
    assert gridmob.path_count(small_env(), (0, 0), (5, 5)) == math.comb(10, 5)
    assert gridmob.path_count(env, (0, 0), (46, 0)) == 1
    tags = gridmob.through_counts(small_env(), (0, 0), (1, 1))
    assert sorted(tags, reverse=True)[:4] == [2, 2, 1, 1]


def test_distribution_modes_agree_with_reference():
    env = small_env([{"x_m": 15, "y_m": 15, "w_m": 10, "h_m": 10}])
    for mode in ("per-trip", "time-weighted"):
        fast = gridmob.distribution(env, mode)
        ref = gridmob.distribution(env, mode, reference=True)
        assert fast.sum() == pytest.approx(1.0)
        assert np.max(np.abs(fast - ref)) <= 1e-12


def test_coverage_and_degree():
    assert gridmob.coverage_zone6(0.0, 20.0, 20.0) == pytest.approx(200 * math.pi)
    env = small_env()
    cov = gridmob.coverage(env, rays=512)
    assert cov.max() <= math.pi * 400 * 1.001
    deg, mean = gridmob.degree(env, rays=512)
    grid = env.to_grid(deg)
    assert grid.shape == (6, 6)
    assert mean > 0


def test_simulation_is_reproducible():
    env = small_env()
    a, se = gridmob.simulate(env, trips=40000, seed=3)
    b, _ = gridmob.simulate(env, trips=40000, seed=3, threads=2)
    assert np.array_equal(a, b)
    assert gridmob.total_variation(a, gridmob.distribution(env)) < 0.02
    assert se.shape == a.shape


def test_errors_carry_their_code():
    with pytest.raises(gridmob.GridmobError, match="ObstacleOutOfBounds"):
        gridmob.load_environment(str(CONFIGS / "bad_out_of_bounds.json"))
