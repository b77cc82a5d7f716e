"""End-to-end orchestration from points to labels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import condensed, hierarchy, metrics, selection
from .errors import ClusteringError, ParameterError
from .validation import EvalReport, evaluate

PIPELINE_METHODS = ("eom", "leaf", "epsilon", "eom_epsilon", "dbscan_star")


@dataclass(frozen=True)
class RunConfig:
    min_pts: int = 4
    method: str = "eom"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.method not in PIPELINE_METHODS:
            raise ParameterError(f"unknown method {self.method!r}; choose from {PIPELINE_METHODS}")
        if int(self.min_pts) != self.min_pts or self.min_pts < 1:
            raise ParameterError(f"min_pts must be a positive integer, got {self.min_pts}")
        if self.method in ("epsilon", "eom_epsilon", "dbscan_star") and not self.epsilon >= 0:
            raise ParameterError(f"epsilon must be >= 0, got {self.epsilon}")


@dataclass(frozen=True)
class PipelineResult:
    labels: np.ndarray
    dendrogram: hierarchy.Dendrogram
    tree: condensed.CondensedTree | None = None
    stats: condensed.ClusterStats | None = None
    selection: selection.Selection | None = None
    report: EvalReport | None = None


class _stage:
    """Re-raise library errors with the name of the failing stage prefixed."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, ClusteringError) and not getattr(exc, "_staged", False):
            err = exc_type(f"{self.name}: {exc}")
            err._staged = True
            raise err from exc
        return False


def build_hierarchy(ps: metrics.PointSet, min_pts: int) -> hierarchy.Dendrogram:
    with _stage("distances"):
        dm = metrics.pairwise_distances(ps)
    with _stage("core distances"):
        cd = metrics.core_distances(dm, min_pts)
    with _stage("mutual reachability"):
        mrd = metrics.mutual_reachability(dm, cd)
    with _stage("spanning tree"):
        edges = hierarchy.build_mst(mrd)
        return hierarchy.single_linkage(edges, ps.n)


def select(ct, stats, method, epsilon=0.0) -> selection.Selection:
    """Run one of the four tree-based selection methods."""
    if method == "leaf":
        return selection.select_leaf(ct)
    if method == "eom":
        return selection.select_eom(ct, stats)
    base = selection.select_leaf(ct) if method == "epsilon" else selection.select_eom(ct, stats)
    es = selection.epsilon_stability(ct, stats, epsilon) if epsilon > 0 else None
    return selection.select_epsilon(ct, es, base, epsilon)


def run_pipeline(ps: metrics.PointSet, config: RunConfig, truth=None) -> PipelineResult:
    """Cluster ``ps`` and, when ``truth`` is given, score the result."""
    dendrogram = build_hierarchy(ps, config.min_pts)
    if config.method == "dbscan_star":
        with _stage("horizontal cut"):
            labels = hierarchy.horizontal_cut(dendrogram, config.epsilon, config.min_pts)
        return PipelineResult(labels, dendrogram, report=_report(labels, truth))
    with _stage("condense"):
        ct = condensed.condense(dendrogram, config.min_pts)
        stats = condensed.compute_stats(ct)
    with _stage("selection"):
        sel = select(ct, stats, config.method, config.epsilon)
        labels = selection.extract_labels(ct, sel)
    return PipelineResult(labels, dendrogram, ct, stats, sel, _report(labels, truth))


def _report(labels, truth):
    with _stage("evaluation"):
        return None if truth is None else evaluate(labels, truth)
