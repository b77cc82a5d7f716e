"""Adjusted Rand Index with noise exclusion and the clustered fraction."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import InputError, UndefinedScoreError
from .hierarchy import NOISE


@dataclass(frozen=True)
class EvalReport:
    ari: float | None
    clustered_fraction: float
    n_clusters: int
    n_noise: int

    def to_dict(self) -> dict:
        return asdict(self)


def _pairs(counts: np.ndarray) -> int:
    counts = counts.astype(np.int64)
    return int(np.sum(counts * (counts - 1) // 2))


def adjusted_rand_index(predicted, truth) -> float:
    """ARI over the points that neither labeling marks as noise (-1).

    Raises
    ------
    InputError
        If the labelings differ in length.
    UndefinedScoreError
        If fewer than two points remain after dropping noise.
    """
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape or predicted.ndim != 1:
        raise InputError(f"labelings must be 1-D with equal length, got {predicted.shape} and {truth.shape}")
    keep = (predicted != NOISE) & (truth != NOISE)
    n = int(keep.sum())
    if n < 2:
        raise UndefinedScoreError(f"ARI needs at least 2 non-noise points, got {n}")
    _, p = np.unique(predicted[keep], return_inverse=True)
    _, t = np.unique(truth[keep], return_inverse=True)
    table = np.zeros((p.max() + 1, t.max() + 1), dtype=np.int64)
    np.add.at(table, (p, t), 1)

    index = _pairs(table.ravel())
    sum_a = _pairs(table.sum(axis=1))
    sum_b = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        # both labelings are trivial (one cluster, or all singletons) and agree
        return 1.0
    return float((index - expected) / (max_index - expected))


def clustered_fraction(predicted) -> float:
    predicted = np.asarray(predicted)
    if predicted.size == 0:
        raise InputError("empty labeling")
    return float(np.mean(predicted != NOISE))


def evaluate(predicted, truth=None) -> EvalReport:
    """Summary report; ``ari`` is None without truth or when it is undefined."""
    predicted = np.asarray(predicted)
    ari = None
    if truth is not None:
        try:
            ari = adjusted_rand_index(predicted, truth)
        except UndefinedScoreError:
            ari = None
    n_noise = int(np.sum(predicted == NOISE))
    return EvalReport(
        ari=ari,
        clustered_fraction=clustered_fraction(predicted),
        n_clusters=int(np.unique(predicted[predicted != NOISE]).size),
        n_noise=n_noise,
    )
