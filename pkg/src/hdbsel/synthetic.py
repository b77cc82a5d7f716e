"""Seeded 2-D test datasets with ground truth.

``variable_density``
    3 to 6 Gaussian blobs whose standard deviations span an order of
    magnitude, plus 8% uniform background noise.
``dense_core_sparse_satellites``
    A dense core (about 85% of the points) built from many tiny clumps
    scattered with an overall standard deviation of ``CORE_STD``, 4 to 8
    satellites of 6 to 10 points each with std ``SATELLITE_STD``, and 10%
    uniform background noise. The clumps inside the core are what drives
    HDBSCAN(eom) towards micro-clusters.

Both live in a ``[0, 100] x [0, 100]`` box. Truth labels number the blobs
from 0 (the core is always 0); background noise is labeled -1. Any pair of
blob centroids is at least ``10 x`` the larger of the two blob stds apart
(and ``SATELLITE_GAP`` apart in the satellite layout); center draws are
repeated until that holds.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .metrics import PointSet

BOX = 100.0
CORE_STD = 2.0
CLUMP_STD = 0.05
CLUMP_SIZE = 12
SATELLITE_STD = 0.2
SATELLITE_SIZES = (6, 10)
SATELLITE_COUNTS = (4, 8)
SEPARATION = 10.0
SATELLITE_GAP = 15.0
KINDS = ("variable_density", "dense_core_sparse_satellites")


@dataclass(frozen=True)
class SyntheticData:
    points: PointSet
    truth: np.ndarray
    params: dict = field(default_factory=dict)


def _place_centers(rng, stds, margin, min_gap=0.0, max_tries=10_000):
    for _ in range(max_tries):
        centers = rng.uniform(margin, BOX - margin, size=(len(stds), 2))
        gaps = np.linalg.norm(centers[:, None] - centers[None, :], axis=-1)
        need = np.maximum(SEPARATION * np.maximum.outer(stds, stds), min_gap)
        np.fill_diagonal(gaps, np.inf)
        if np.all(gaps >= need):
            return centers
    raise RuntimeError("could not place blob centers with the required separation")


def _variable_density(rng, n):
    k = int(rng.integers(3, 7))
    stds = np.exp(rng.uniform(np.log(0.3), np.log(3.0), size=k))
    n_noise = int(round(0.08 * n))
    weights = rng.dirichlet(np.full(k, 2.0))
    sizes = np.maximum(10, np.floor(weights * (n - n_noise)).astype(int))
    sizes[0] += (n - n_noise) - sizes.sum()
    if sizes[0] < 10:
        raise ParameterError(f"n={n} too small for {k} blobs")
    centers = _place_centers(rng, stds, margin=10.0)
    pts = [rng.normal(centers[i], stds[i], size=(sizes[i], 2)) for i in range(k)]
    truth = [np.full(sizes[i], i) for i in range(k)]
    pts.append(rng.uniform(0, BOX, size=(n_noise, 2)))
    truth.append(np.full(n_noise, -1))
    params = {"n_blobs": k, "stds": stds.tolist(), "sizes": sizes.tolist(),
              "centers": centers.tolist(), "n_noise": n_noise}
    return np.vstack(pts), np.concatenate(truth), params


def _satellites(rng, n):
    n_sat = int(rng.integers(SATELLITE_COUNTS[0], SATELLITE_COUNTS[1] + 1))
    sat_sizes = rng.integers(SATELLITE_SIZES[0], SATELLITE_SIZES[1] + 1, size=n_sat)
    n_noise = int(round(0.10 * n))
    n_core = n - n_noise - int(sat_sizes.sum())
    if n_core < 0.4 * n:
        raise ParameterError(f"n={n} too small for a core holding 40% of the points")

    stds = np.concatenate([[CORE_STD], np.full(n_sat, SATELLITE_STD)])
    centers = _place_centers(rng, stds, margin=10.0, min_gap=SATELLITE_GAP)

    n_clumps = max(1, n_core // CLUMP_SIZE)
    spread = np.sqrt(CORE_STD**2 - CLUMP_STD**2)
    clump_centers = rng.normal(centers[0], spread, size=(n_clumps, 2))
    which = rng.integers(0, n_clumps, size=n_core)
    core = clump_centers[which] + rng.normal(0.0, CLUMP_STD, size=(n_core, 2))

    pts = [core]
    truth = [np.zeros(n_core, dtype=int)]
    for i in range(n_sat):
        pts.append(rng.normal(centers[i + 1], SATELLITE_STD, size=(sat_sizes[i], 2)))
        truth.append(np.full(sat_sizes[i], i + 1))
    pts.append(rng.uniform(0, BOX, size=(n_noise, 2)))
    truth.append(np.full(n_noise, -1))
    params = {"core_std": CORE_STD, "clump_std": CLUMP_STD, "n_clumps": int(n_clumps),
              "n_core": int(n_core), "satellite_std": SATELLITE_STD,
              "satellite_sizes": sat_sizes.tolist(), "centers": centers.tolist(),
              "n_noise": n_noise}
    return np.vstack(pts), np.concatenate(truth), params


def generate_synthetic(kind: str, seed: int, n: int) -> SyntheticData:
    """Draw a reproducible dataset of ``n >= 50`` points."""
    if kind not in KINDS:
        raise ParameterError(f"unknown dataset kind {kind!r}; choose from {KINDS}")
    if n < 50:
        raise ParameterError(f"n must be >= 50, got {n}")
    rng = np.random.default_rng(seed)
    if kind == "variable_density":
        pts, truth, params = _variable_density(rng, n)
    else:
        pts, truth, params = _satellites(rng, n)
    params = {"kind": kind, "seed": int(seed), "n": int(n), **params}
    return SyntheticData(PointSet(pts), truth.astype(np.intp), params)
