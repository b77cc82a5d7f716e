"""Figure rendering for cluster reports.

Figures are written straight to files with the Agg backend; nothing here
opens a window.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .condensed import LAMBDA_CAP, ClusterStats, CondensedTree  # noqa: E402
from .selection import Selection  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}
NOISE_COLOR = "0.8"
SELECTED_COLOR = "tab:red"


def size(scale=1.0):
    golden_mean = (math.sqrt(5.0) - 1.0) / 2.0
    width = 6.0 * scale
    return width, width * golden_mean


def new(scale=1.0):
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=size(scale))
    return fig, ax


def save(fig, path):
    with matplotlib.rc_context(STYLE):
        fig.savefig(path)
    plt.close(fig)


def plot_labels(points, labels, path, title=None, degrees=False):
    """Scatter the first two coordinates colored by cluster; noise in gray.

    With ``degrees`` the columns are (latitude, longitude) and longitude goes
    on the horizontal axis.
    """
    points = np.asarray(points)
    labels = np.asarray(labels)
    if degrees:
        points = points[:, ::-1]
    if points.shape[1] == 1:
        points = np.column_stack([points[:, 0], np.zeros(len(points))])
    fig, ax = new()
    noise = labels < 0
    ax.scatter(points[noise, 0], points[noise, 1], s=6, c=NOISE_COLOR, linewidths=0, label="noise")
    if np.any(~noise):
        cmap = plt.get_cmap("tab20")
        colors = cmap(labels[~noise] % cmap.N)
        ax.scatter(points[~noise, 0], points[~noise, 1], s=8, c=colors, linewidths=0)
    if degrees:
        ax.set_xlabel("longitude")
        ax.set_ylabel("latitude")
    ax.set_aspect("equal", adjustable="datalim")
    n_clusters = len(set(labels[~noise].tolist()))
    ax.set_title(title or f"{n_clusters} clusters, {int(noise.sum())} noise points")
    save(fig, path)


def _leaf_order(children, root):
    order, stack = [], [root]
    while stack:
        c = stack.pop()
        if children[c]:
            stack.extend(reversed(children[c]))
        else:
            order.append(c)
    return order


def plot_condensed_tree(ct: CondensedTree, stats: ClusterStats, path, sel: Selection | None = None,
                        epsilon_hat: float | None = None):
    """Cluster tree with density on the vertical axis (root on top).

    Each cluster is a vertical bar from its birth density to the density
    at which its last point leaves or it splits. Selected clusters are drawn
    in red; ``epsilon_hat`` adds a dashed line at ``1/epsilon_hat``.
    """
    children = ct.children_of()
    root = ct.root_id
    death = {int(c): stats.birth(c) for c in stats.cluster_ids}
    for p, lam in zip(ct.parent.tolist(), np.minimum(ct.lambda_val, LAMBDA_CAP).tolist()):
        death[p] = max(death[p], lam)
    finite = [v for v in death.values() if v < LAMBDA_CAP]
    top = max(finite) * 1.05 if finite and max(finite) > 0 else 1.0
    death = {c: min(v, top) for c, v in death.items()}

    xpos = {c: float(i) for i, c in enumerate(_leaf_order(children, root))}

    def place(c):
        if c not in xpos:
            xpos[c] = float(np.mean([place(k) for k in children[c]]))
        return xpos[c]

    place(root)
    selected = sel.selected if sel is not None else frozenset()
    fig, ax = new()
    for c in children:
        color = SELECTED_COLOR if c in selected else "0.3"
        width = 3.0 if c in selected else 1.2
        ax.plot([xpos[c], xpos[c]], [stats.birth(c), death[c]], color=color, lw=width)
        if children[c]:
            xs = [xpos[k] for k in children[c]]
            ax.plot([min(xs), max(xs)], [death[c], death[c]], color="0.3", lw=1.0)
    if epsilon_hat:
        ax.axhline(1.0 / epsilon_hat, color="tab:blue", ls="--", lw=1.0,
                   label=f"1/epsilon_hat = {1.0 / epsilon_hat:.3g}")
        ax.legend(loc="lower right")
    ax.set_ylim(top, 0.0)
    ax.set_xticks([])
    ax.set_ylabel("lambda = 1 / distance")
    ax.set_title(f"condensed tree, {len(children)} clusters")
    save(fig, path)
