"""Condensed cluster tree and per-cluster stability."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, StructuralError
from .hierarchy import Dendrogram

# Stand-in for an infinite density level (merges at distance zero) wherever
# lambda values are summed.
LAMBDA_CAP = 1e12


def to_lambda(distance: float) -> float:
    return np.inf if distance == 0 else 1.0 / distance


@dataclass(frozen=True)
class CondensedTree:
    """Flat record table of the condensed hierarchy.

    Point ids are ``0..n_points-1``; cluster ids start at ``root_id == n_points``
    and are numbered breadth-first. Each record says that ``child`` (a point
    or a cluster of ``child_size`` points) leaves ``parent`` at density
    ``lambda_val``.
    """

    parent: np.ndarray
    child: np.ndarray
    lambda_val: np.ndarray
    child_size: np.ndarray
    n_points: int

    @property
    def root_id(self) -> int:
        return self.n_points

    @property
    def n_clusters(self) -> int:
        return int(max(self.parent.max(initial=self.root_id), self.child.max(initial=0)) - self.n_points + 1)

    @property
    def cluster_ids(self) -> np.ndarray:
        return np.arange(self.n_points, self.n_points + self.n_clusters)

    @property
    def cluster_mask(self) -> np.ndarray:
        """True for records whose child is a cluster."""
        return self.child >= self.n_points

    def __len__(self):
        return len(self.parent)

    def records(self) -> list[dict]:
        return [
            {"parent": int(p), "child": int(c), "lambda_val": float(lv), "child_size": int(s)}
            for p, c, lv, s in zip(self.parent, self.child, self.lambda_val, self.child_size)
        ]

    @classmethod
    def from_records(cls, records, n_points: int) -> "CondensedTree":
        """Build from an iterable of ``(parent, child, lambda_val, child_size)``."""
        rows = [tuple(r.values()) if isinstance(r, dict) else tuple(r) for r in records]
        parent = np.array([r[0] for r in rows], dtype=np.intp)
        child = np.array([r[1] for r in rows], dtype=np.intp)
        lam = np.array([float(r[2]) for r in rows], dtype=np.float64)
        size = np.array([r[3] for r in rows], dtype=np.intp)
        return cls(parent, child, lam, size, n_points)

    def children_of(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {int(c): [] for c in self.cluster_ids}
        for p, c in zip(self.parent[self.cluster_mask], self.child[self.cluster_mask]):
            out[int(p)].append(int(c))
        return out

    def parent_of(self) -> dict[int, int]:
        return {int(c): int(p) for p, c in zip(self.parent[self.cluster_mask], self.child[self.cluster_mask])}


def condense(d: Dendrogram, min_pts: int) -> CondensedTree:
    """Prune the dendrogram with the true-split rule.

    Walking down from the root, a merge counts as a split of the current
    cluster only when both sides hold at least ``min_pts`` points. A side
    smaller than that leaves the cluster as noise at the merge's density
    ``1/distance``; when both sides are too small the cluster vanishes.
    """
    if int(min_pts) != min_pts or min_pts < 2:
        raise ParameterError(f"condensing needs min_pts >= 2, got {min_pts}")
    n = d.n_points
    if n == 1:
        return CondensedTree.from_records([(n, 0, np.inf, 1)], n)

    # Provisional cluster ids are allocated in sweep order and renumbered
    # breadth-first at the end.
    cluster_of = {d.root: 0}
    rows: list[tuple[int, int, float, int]] = []
    next_id = 1
    queue = deque([d.root])
    while queue:
        node = queue.popleft()
        cid = cluster_of[node]
        lam = to_lambda(d.node_distance(node))
        left, right = d.children(node)
        big_left = d.node_size(left) >= min_pts
        big_right = d.node_size(right) >= min_pts
        if big_left and big_right:
            for side in (left, right):
                cluster_of[side] = next_id
                rows.append((cid, n + next_id, lam, d.node_size(side)))
                next_id += 1
                queue.append(side)
            continue
        for side, big in ((left, big_left), (right, big_right)):
            if big:
                cluster_of[side] = cid
                queue.append(side)
            else:
                rows.extend((cid, p, lam, 1) for p in sorted(d.leaves(side)))

    return _renumber_bfs(rows, n, next_id)


def _renumber_bfs(rows, n, n_clusters) -> CondensedTree:
    kids: dict[int, list[int]] = {c: [] for c in range(n_clusters)}
    for p, c, _, _ in rows:
        if c >= n:
            kids[p].append(c - n)
    new_id = {}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        new_id[c] = n + len(new_id)
        queue.extend(kids[c])
    out = []
    for p, c, lam, s in rows:
        out.append((new_id[p], new_id[c - n] if c >= n else c, lam, s))
    out.sort(key=lambda r: (r[0], r[2], r[1] < n, r[1]))
    return CondensedTree.from_records(out, n)


@dataclass(frozen=True)
class ClusterStats:
    """Per-cluster statistics, indexed by ``cluster_id - n_points``."""

    cluster_ids: np.ndarray
    lambda_birth: np.ndarray
    stability: np.ndarray
    is_leaf: np.ndarray
    parent: np.ndarray  # -1 for the root
    size_at_birth: np.ndarray
    n_points: int

    def index(self, cluster_id: int) -> int:
        return int(cluster_id) - self.n_points

    def birth(self, cluster_id: int) -> float:
        return float(self.lambda_birth[self.index(cluster_id)])

    def stability_of(self, cluster_id: int) -> float:
        return float(self.stability[self.index(cluster_id)])


def compute_stats(ct: CondensedTree) -> ClusterStats:
    """Birth level, stability, leaf flag and parent of every cluster.

    A member contributes ``lambda_departure - lambda_birth`` to a cluster's
    stability, where it departs either by falling out as noise or by moving
    into a child cluster at the split.
    """
    n = ct.n_points
    k = ct.n_clusters
    birth = np.zeros(k)
    parent = np.full(k, -1, dtype=np.intp)
    size_at_birth = np.zeros(k, dtype=np.intp)
    is_leaf = np.ones(k, dtype=bool)

    seen_child = np.zeros(k, dtype=bool)
    for p, c, lam, s in zip(ct.parent, ct.child, ct.lambda_val, ct.child_size):
        if c >= n:
            ci = c - n
            if seen_child[ci]:
                raise StructuralError(f"cluster {c} appears as a child more than once")
            seen_child[ci] = True
            birth[ci] = lam
            parent[ci] = p
            size_at_birth[ci] = s
            is_leaf[p - n] = False
    if seen_child[0]:
        raise StructuralError("the root cluster cannot be a child")
    size_at_birth[0] = n

    capped_birth = np.minimum(birth, LAMBDA_CAP)
    stability = np.zeros(k)
    contrib = (np.minimum(ct.lambda_val, LAMBDA_CAP) - capped_birth[ct.parent - n]) * ct.child_size
    np.add.at(stability, ct.parent - n, contrib)
    return ClusterStats(
        cluster_ids=np.arange(n, n + k),
        lambda_birth=birth,
        stability=stability,
        is_leaf=is_leaf,
        parent=parent,
        size_at_birth=size_at_birth,
        n_points=n,
    )
