import numpy as np
import pytest

from hdbsel import ParameterError, PointSet, RunConfig, generate_synthetic, run_pipeline

SIX = PointSet([0.0, 1.0, 2.2, 10.0, 11.4, 13.0])


@pytest.mark.parametrize("method, eps", [("eom", 0.0), ("leaf", 0.0), ("dbscan_star", 5.0),
                                         ("epsilon", 5.0), ("eom_epsilon", 5.0)])
def test_six_point_methods(method, eps):
    result = run_pipeline(SIX, RunConfig(2, method, eps))
    np.testing.assert_array_equal(result.labels, [0, 0, 0, 1, 1, 1])


def test_zero_threshold_equals_leaf():
    data = generate_synthetic("variable_density", 3, 300)
    a = run_pipeline(data.points, RunConfig(4, "leaf")).labels
    b = run_pipeline(data.points, RunConfig(4, "epsilon", 0.0)).labels
    np.testing.assert_array_equal(a, b)


def test_report_only_with_truth():
    data = generate_synthetic("variable_density", 3, 200)
    assert run_pipeline(data.points, RunConfig(4)).report is None
    assert run_pipeline(data.points, RunConfig(4), data.truth).report.ari is not None


def test_dbscan_star_has_no_tree():
    result = run_pipeline(SIX, RunConfig(2, "dbscan_star", 5.0))
    assert result.tree is None and result.selection is None


def test_errors_carry_stage():
    with pytest.raises(ParameterError, match="core distances"):
        run_pipeline(SIX, RunConfig(6))
    with pytest.raises(ParameterError, match="condense"):
        run_pipeline(SIX, RunConfig(1, "eom"))


@pytest.mark.parametrize("kwargs", [{"method": "optics"}, {"min_pts": 0}, {"method": "epsilon", "epsilon": -1.0}])
def test_bad_config(kwargs):
    with pytest.raises(ParameterError):
        RunConfig(**kwargs)


def test_haversine_pipeline():
    # two street corners 1 km apart, each with a tight group of points
    rng = np.random.default_rng(0)
    base = np.radians([[48.0, 11.0], [48.009, 11.0]])
    jitter = np.radians(rng.normal(scale=1e-5, size=(20, 2)))
    pts = np.repeat(base, 10, axis=0) + jitter
    result = run_pipeline(PointSet(pts, "haversine"), RunConfig(4, "epsilon", 5.0))
    assert len(set(result.labels[:10].tolist())) == 1
    assert result.labels[0] != result.labels[10]
