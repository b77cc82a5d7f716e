"""Minimum spanning tree, single-linkage dendrogram and DBSCAN* cuts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, StructuralError

NOISE = -1


@dataclass(frozen=True)
class MSTEdge:
    u: int
    v: int
    weight: float


@dataclass(frozen=True)
class Dendrogram:
    """Single-linkage merge tree.

    Node ids ``0..n-1`` are the points. Internal node ``n + k`` is described by
    ``left[k]``, ``right[k]``, ``distance[k]`` and ``size[k]``; the root is
    ``2n - 2``. Internal nodes are stored in merge order, so ``distance`` is
    non-decreasing.
    """

    left: np.ndarray
    right: np.ndarray
    distance: np.ndarray
    size: np.ndarray
    n_points: int

    @property
    def root(self) -> int:
        return 2 * self.n_points - 2

    def children(self, node: int) -> tuple[int, int]:
        k = node - self.n_points
        return int(self.left[k]), int(self.right[k])

    def node_size(self, node: int) -> int:
        return 1 if node < self.n_points else int(self.size[node - self.n_points])

    def node_distance(self, node: int) -> float:
        return 0.0 if node < self.n_points else float(self.distance[node - self.n_points])

    def leaves(self, node: int) -> list[int]:
        """Point ids below ``node``."""
        out, stack = [], [node]
        while stack:
            x = stack.pop()
            if x < self.n_points:
                out.append(x)
            else:
                stack.extend(self.children(x))
        return out

    def to_linkage(self) -> np.ndarray:
        """scipy-style ``(n-1) x 4`` linkage matrix."""
        return np.column_stack([self.left, self.right, self.distance, self.size]).astype(np.float64)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return a
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return a


def build_mst(mrd: np.ndarray) -> list[MSTEdge]:
    """Prim's algorithm on a dense symmetric matrix.

    Returns the ``n - 1`` tree edges with ``u < v``, sorted by
    ``(weight, u, v)``.
    """
    mrd = np.asarray(mrd, dtype=np.float64)
    if mrd.ndim != 2 or mrd.shape[0] != mrd.shape[1]:
        raise InputError(f"expected a square matrix, got shape {mrd.shape}")
    n = mrd.shape[0]
    if n == 0:
        raise InputError("cannot build a spanning tree over zero points")

    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = mrd[0].copy()
    source = np.zeros(n, dtype=np.intp)
    us, vs, ws = [], [], []
    for _ in range(n - 1):
        candidates = np.where(in_tree, np.inf, best)
        j = int(np.argmin(candidates))
        i = int(source[j])
        us.append(min(i, j))
        vs.append(max(i, j))
        ws.append(float(best[j]))
        in_tree[j] = True
        closer = mrd[j] < best
        best[closer] = mrd[j][closer]
        source[closer] = j

    order = np.lexsort((vs, us, ws))
    return [MSTEdge(us[k], vs[k], ws[k]) for k in order]


def single_linkage(edges: list[MSTEdge], n: int) -> Dendrogram:
    """Merge sweep over sorted spanning-tree edges."""
    if len(edges) != n - 1:
        raise StructuralError(f"a spanning tree over {n} points has {n - 1} edges, got {len(edges)}")
    uf = _UnionFind(n)
    # node id currently representing each union-find root
    node_of = list(range(n))
    left = np.empty(n - 1, dtype=np.intp)
    right = np.empty(n - 1, dtype=np.intp)
    distance = np.empty(n - 1, dtype=np.float64)
    size = np.empty(n - 1, dtype=np.intp)
    prev = -np.inf
    for k, e in enumerate(edges):
        if e.weight < prev:
            raise StructuralError("edges must be sorted by ascending weight")
        prev = e.weight
        ru, rv = uf.find(e.u), uf.find(e.v)
        if ru == rv:
            raise StructuralError(f"edge ({e.u}, {e.v}) closes a cycle; edges do not form a tree")
        left[k], right[k] = node_of[ru], node_of[rv]
        distance[k] = e.weight
        size[k] = uf.size[ru] + uf.size[rv]
        node_of[uf.union(ru, rv)] = n + k
    return Dendrogram(left, right, distance, size, n)


def relabel_by_first_member(labels: np.ndarray) -> np.ndarray:
    """Renumber non-noise labels 0..k-1 in order of each cluster's smallest index."""
    labels = np.asarray(labels)
    out = np.full(labels.shape, NOISE, dtype=np.intp)
    mapping: dict[int, int] = {}
    for i, lab in enumerate(labels.tolist()):
        if lab == NOISE:
            continue
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def horizontal_cut(d: Dendrogram, epsilon: float, min_pts: int) -> np.ndarray:
    """DBSCAN* labels at ``epsilon``: components joined by merges ``<= epsilon``
    that hold at least ``min_pts`` points. Everything else is noise (-1)."""
    n = d.n_points
    uf = _UnionFind(n)
    node_rep = list(range(n))
    for k in range(n - 1):
        if d.distance[k] > epsilon:
            break
        a, b = node_rep[d.left[k]], node_rep[d.right[k]]
        node_rep.append(uf.union(a, b))
    roots = np.array([uf.find(i) for i in range(n)])
    counts = np.bincount(roots, minlength=n)
    labels = np.where(counts[roots] >= min_pts, roots, NOISE)
    return relabel_by_first_member(labels)
