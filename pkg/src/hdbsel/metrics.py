"""Pairwise distances, core distances and the mutual reachability transform.

Everything here works on dense ``n x n`` matrices. That is fine for the few
thousand points this library targets and keeps every later stage exact.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DimensionError, InputError, ParameterError

EARTH_RADIUS_M = 6_371_000.0
METRICS = ("euclidean", "haversine")


@dataclass(frozen=True)
class PointSet:
    """``n`` points in ``d`` dimensions tagged with the metric to use.

    For ``metric="haversine"`` the two columns are latitude and longitude in
    radians.
    """

    points: np.ndarray
    metric: str = "euclidean"

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InputError(f"expected an n x d array with n, d >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            bad = np.argwhere(~np.isfinite(pts))[0]
            raise InputError(f"non-finite coordinate at row {bad[0]}, column {bad[1]}")
        if self.metric not in METRICS:
            raise ParameterError(f"unknown metric {self.metric!r}; choose from {METRICS}")
        if self.metric == "haversine":
            if pts.shape[1] != 2:
                raise DimensionError(
                    f"haversine needs (latitude, longitude) pairs, got d={pts.shape[1]}")
            if np.any(np.abs(pts[:, 0]) > np.pi / 2):
                raise InputError("latitude outside [-pi/2, pi/2]; haversine inputs are radians")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def _haversine(points: np.ndarray) -> np.ndarray:
    lat = points[:, 0]
    lon = points[:, 1]
    dlat = lat[:, None] - lat[None, :]
    dlon = lon[:, None] - lon[None, :]
    h = np.sin(dlat / 2.0) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))


def pairwise_distances(ps: PointSet) -> np.ndarray:
    """Dense symmetric distance matrix for ``ps``.

    Haversine distances are returned in meters.
    """
    if ps.metric == "haversine":
        dm = _haversine(ps.points)
    else:
        dm = cdist(ps.points, ps.points, metric="euclidean")
    np.fill_diagonal(dm, 0.0)
    return dm


def _check_square(dm: np.ndarray) -> np.ndarray:
    dm = np.asarray(dm, dtype=np.float64)
    if dm.ndim != 2 or dm.shape[0] != dm.shape[1]:
        raise InputError(f"distance matrix must be square, got shape {dm.shape}")
    return dm


def core_distances(dm: np.ndarray, min_pts: int) -> np.ndarray:
    """Distance from each point to its ``min_pts``-th nearest *other* point.

    The point itself is not counted as one of its own neighbors.

    Parameters
    ----------
    dm : ndarray, shape (n, n)
        Distance matrix with zero diagonal.
    min_pts : int
        Neighbor rank, ``1 <= min_pts < n``.

    Returns
    -------
    ndarray, shape (n,)
    """
    dm = _check_square(dm)
    n = dm.shape[0]
    if int(min_pts) != min_pts or min_pts < 1:
        raise ParameterError(f"min_pts must be a positive integer, got {min_pts}")
    if min_pts >= n:
        raise ParameterError(f"min_pts={min_pts} needs at least {min_pts + 1} points, got {n}")
    # The zero self-distance always sorts first, so rank k of the full row is
    # rank k among the other points.
    return np.partition(dm, int(min_pts), axis=1)[:, int(min_pts)].copy()


def mutual_reachability(dm: np.ndarray, cd: np.ndarray) -> np.ndarray:
    """``max(core[p], core[q], d(p, q))`` for every pair, zero on the diagonal."""
    dm = _check_square(dm)
    cd = np.asarray(cd, dtype=np.float64)
    if cd.shape != (dm.shape[0],):
        raise InputError(
            f"core distances have shape {cd.shape}, distance matrix has {dm.shape[0]} points")
    mrd = np.maximum(dm, np.maximum.outer(cd, cd))
    np.fill_diagonal(mrd, 0.0)
    return mrd
