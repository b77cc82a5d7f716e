import numpy as np
import pytest

from hdbsel import ParameterError, generate_synthetic
from hdbsel import synthetic
from hdbsel.io import write_points_csv


@pytest.mark.parametrize("kind", synthetic.KINDS)
def test_deterministic_csv(kind, tmp_path):
    paths = []
    for i in range(2):
        data = generate_synthetic(kind, seed=1, n=500)
        path = tmp_path / f"{i}.csv"
        write_points_csv(path, data.points.points, data.truth)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]
    other = generate_synthetic(kind, seed=2, n=500)
    assert not np.array_equal(other.points.points, data.points.points)


@pytest.mark.parametrize("seed", range(10))
def test_satellite_layout(seed):
    data = generate_synthetic("dense_core_sparse_satellites", seed, 1000)
    truth = data.truth
    assert len(truth) == data.points.n == 1000
    assert np.mean(truth == 0) >= 0.4
    sat = [k for k in np.unique(truth) if k > 0]
    assert synthetic.SATELLITE_COUNTS[0] <= len(sat) <= synthetic.SATELLITE_COUNTS[1]
    for k in sat:
        assert 4 <= np.sum(truth == k) <= 10
    assert np.sum(truth == -1) > 0


@pytest.mark.parametrize("kind", synthetic.KINDS)
@pytest.mark.parametrize("seed", range(10))
def test_blob_separation(kind, seed):
    params = generate_synthetic(kind, seed, 400).params
    centers = np.array(params["centers"])
    if kind == "variable_density":
        stds = np.array(params["stds"])
    else:
        stds = np.array([params["core_std"]] + [params["satellite_std"]] * (len(centers) - 1))
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            assert np.linalg.norm(centers[i] - centers[j]) >= 10 * max(stds[i], stds[j])


@pytest.mark.parametrize("seed", range(10))
def test_variable_density_cluster_count(seed):
    data = generate_synthetic("variable_density", seed, 300)
    k = len([x for x in np.unique(data.truth) if x >= 0])
    assert 3 <= k <= 6 and k == data.params["n_blobs"]


def test_core_std_is_documented_value():
    data = generate_synthetic("dense_core_sparse_satellites", 1, 1000)
    core = data.points.points[data.truth == 0]
    assert core.std(axis=0).mean() == pytest.approx(synthetic.CORE_STD, rel=0.15)


@pytest.mark.parametrize("kwargs", [{"kind": "rings", "seed": 0, "n": 100}, {"kind": "variable_density", "seed": 0, "n": 10}])
def test_bad_arguments(kwargs):
    with pytest.raises(ParameterError):
        generate_synthetic(**kwargs)
