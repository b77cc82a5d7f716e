"""Flat cluster extraction from the condensed tree.

All four methods pick exactly one cluster on every path from a leaf cluster
up to (but excluding) the root.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .condensed import ClusterStats, CondensedTree
from .errors import ParameterError, StructuralError
from .hierarchy import NOISE, relabel_by_first_member

METHODS = ("eom", "leaf", "epsilon", "eom_epsilon")


@dataclass(frozen=True)
class Selection:
    """Selected cluster ids.

    ``merged`` holds the clusters that replaced descendants because of the
    ``epsilon_hat`` threshold; their membership follows DBSCAN* at that
    threshold when labels are extracted.
    """

    selected: frozenset[int]
    method: str
    epsilon_hat: float = 0.0
    merged: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown selection method {self.method!r}")


def _tree_maps(ct: CondensedTree):
    children = ct.children_of()
    parent = ct.parent_of()
    return children, parent


def _subtree(children: dict[int, list[int]], cluster: int) -> list[int]:
    out, stack = [], [cluster]
    while stack:
        c = stack.pop()
        out.append(c)
        stack.extend(children[c])
    return out


def check_one_per_path(ct: CondensedTree, selected) -> None:
    """Raise if some leaf-to-root path does not hold exactly one selected cluster.

    A tree made of the root alone has no admissible path, so only the empty
    selection is valid for it.
    """
    children, parent = _tree_maps(ct)
    selected = set(selected)
    root = ct.root_id
    if root in selected:
        raise StructuralError("the root cluster can never be selected")
    unknown = selected - set(children)
    if unknown:
        raise StructuralError(f"selection names unknown clusters {sorted(unknown)}")
    for leaf, kids in children.items():
        if kids or leaf == root:
            continue
        hits, c = 0, leaf
        while c != root:
            hits += c in selected
            c = parent[c]
        if hits != 1:
            raise StructuralError(f"path from leaf {leaf} holds {hits} selected clusters")
    if not children[root] and selected:
        raise StructuralError("a root-only tree admits no selection")


def select_leaf(ct: CondensedTree) -> Selection:
    children, _ = _tree_maps(ct)
    leaves = {c for c, kids in children.items() if not kids and c != ct.root_id}
    return Selection(frozenset(leaves), "leaf")


def select_eom(ct: CondensedTree, stats: ClusterStats) -> Selection:
    """Excess-of-mass selection.

    Bottom-up, a cluster replaces its selected descendants when its own
    stability is at least the best total they achieve. Ties favour the
    parent.
    """
    children, _ = _tree_maps(ct)
    root = ct.root_id
    best: dict[int, float] = {}
    chosen: dict[int, list[int]] = {}
    # Breadth-first ids guarantee every child id exceeds its parent's.
    for c in sorted(children, reverse=True):
        if c == root:
            break
        own = stats.stability_of(c)
        kids = children[c]
        if not kids:
            best[c], chosen[c] = own, [c]
            continue
        below = sum(best[k] for k in kids)
        if own >= below:
            best[c], chosen[c] = own, [c]
        else:
            best[c] = below
            chosen[c] = [x for k in kids for x in chosen[k]]
    selected = [x for k in children[root] for x in chosen[k]]
    return Selection(frozenset(selected), "eom")


@dataclass(frozen=True)
class EpsilonStability:
    cluster_ids: np.ndarray
    es: np.ndarray
    epsilon_hat: float
    n_points: int

    def __getitem__(self, cluster_id: int) -> float:
        return float(self.es[int(cluster_id) - self.n_points])


def epsilon_stability(ct: CondensedTree, stats: ClusterStats, eps_hat: float) -> EpsilonStability:
    """Birth density of clusters that split off above ``eps_hat``, zero otherwise.

    A cluster is stable w.r.t. the threshold when the distance at which it
    appeared is strictly larger than ``eps_hat``, i.e. ``lambda_birth <
    1/eps_hat``.
    """
    if not eps_hat > 0:
        raise ParameterError(f"eps_hat must be positive, got {eps_hat}")
    threshold = 1.0 / eps_hat
    es = np.where(stats.lambda_birth < threshold, stats.lambda_birth, 0.0)
    return EpsilonStability(stats.cluster_ids.copy(), es, float(eps_hat), ct.n_points)


def select_epsilon(ct: CondensedTree, es: EpsilonStability | None, base: Selection,
                   eps_hat: float) -> Selection:
    """Stop clusters from splitting below the distance ``eps_hat``.

    Every base cluster that appeared at a distance ``<= eps_hat`` is replaced
    by its nearest ancestor that appeared above it; the ancestor's subtree is
    deselected. With ``eps_hat == 0`` the base selection is returned as is.

    When no such ancestor exists below the root, the topmost non-root
    ancestor on the path is selected instead.

    Parameters
    ----------
    ct : CondensedTree
    es : EpsilonStability or None
        Precomputed epsilon stabilities for ``eps_hat``; ignored when
        ``eps_hat == 0``.
    base : Selection
        Output of :func:`select_leaf` or :func:`select_eom`.
    eps_hat : float
        Distance threshold, ``>= 0``.
    """
    if eps_hat < 0:
        raise ParameterError(f"eps_hat must be >= 0, got {eps_hat}")
    check_one_per_path(ct, base.selected)
    if eps_hat == 0:
        return base
    if base.method not in ("leaf", "eom"):
        raise ParameterError(f"base selection must come from leaf or eom, got {base.method!r}")
    if es is None or es.epsilon_hat != eps_hat:
        raise ParameterError("epsilon stabilities were computed for a different threshold")

    selected, merged = _merge_upwards(ct, es, base.selected, sorted(base.selected))
    method = "epsilon" if base.method == "leaf" else "eom_epsilon"
    return Selection(frozenset(selected), method, float(eps_hat), frozenset(merged))


def _merge_upwards(ct: CondensedTree, es: EpsilonStability, base_selected, order):
    """Replace base clusters that are not threshold-stable, visiting ``order``.

    The outcome does not depend on ``order``: every descendant of a chosen
    ancestor is itself unstable and would walk up to the same ancestor.
    """
    children, parent = _tree_maps(ct)
    root = ct.root_id
    selected = set(base_selected)
    merged: set[int] = set()
    for c in order:
        if c not in selected or es[c] > 0:
            continue
        top, up = c, parent[c]
        while up != root and es[up] == 0:
            top, up = up, parent[up]
        target = top if up == root else up
        selected.difference_update(_subtree(children, target))
        selected.add(target)
        if up != root:
            merged.add(target)
    return selected, merged


def cluster_members(ct: CondensedTree, sel: Selection) -> dict[int, list[int]]:
    """Point ids assigned to each selected cluster.

    A selected cluster owns every point that leaves it or any descendant.
    For threshold-merged clusters, points that left the cluster itself at a
    density below ``1/epsilon_hat`` are excluded, matching DBSCAN* at
    ``epsilon_hat``.
    """
    n = ct.n_points
    children, _ = _tree_maps(ct)
    owner = {}
    for c in sel.selected:
        for x in _subtree(children, c):
            owner[x] = c
    threshold = 1.0 / sel.epsilon_hat if sel.epsilon_hat > 0 else None
    members: dict[int, list[int]] = {c: [] for c in sel.selected}
    for p, x, lam in zip(ct.parent.tolist(), ct.child.tolist(), ct.lambda_val.tolist()):
        if x >= n or p not in owner:
            continue
        c = owner[p]
        if p == c and c in sel.merged and lam < threshold:
            continue
        members[c].append(x)
    return {c: sorted(v) for c, v in members.items()}


def extract_labels(ct: CondensedTree, sel: Selection) -> np.ndarray:
    """Integer label per point, -1 for noise, clusters numbered by smallest member."""
    labels = np.full(ct.n_points, NOISE, dtype=np.intp)
    for c, pts in cluster_members(ct, sel).items():
        labels[pts] = c
    return relabel_by_first_member(labels)
