"""Matplotlib figures for CLI reports (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["spectral_layout", "force_layout", "plot_exchange_graph", "plot_lemma", "plot_rep"]


def spectral_layout(n: int, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    """2-D positions from the second and third Laplacian eigenvectors."""
    if n <= 2:
        return np.array([[float(i), 0.0] for i in range(n)]).reshape(n, 2)
    L = np.zeros((n, n))
    for a, b in edges:
        L[a, b] -= 1
        L[b, a] -= 1
        L[a, a] += 1
        L[b, b] += 1
    _, vecs = np.linalg.eigh(L)
    pos = vecs[:, 1:3]
    # fix the sign ambiguity of eigenvectors so output is deterministic
    for j in range(2):
        k = int(np.argmax(np.abs(pos[:, j])))
        if pos[k, j] < 0:
            pos[:, j] = -pos[:, j]
    return pos


def force_layout(n: int, edges: Sequence[tuple[int, int]], iterations: int = 300) -> np.ndarray:
    """Fruchterman-Reingold relaxation started from the spectral layout.

    Symmetric exchange graphs put several vertices on the same spectral
    point; a tiny deterministic offset separates them before relaxing.
    """
    pos = spectral_layout(n, edges)
    if n <= 2:
        return pos
    pos = pos / (np.abs(pos).max() or 1.0)
    pos = pos + 1e-3 * np.stack([np.cos(np.arange(n)), np.sin(np.arange(n))], axis=1)
    k = 1.0 / np.sqrt(n)
    E = np.array(edges, dtype=int).reshape(-1, 2)
    temp = 0.1
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.maximum(np.linalg.norm(delta, axis=2), 1e-6)
        disp = ((k * k / dist**2)[:, :, None] * delta).sum(axis=1)
        d = pos[E[:, 0]] - pos[E[:, 1]]
        length = np.maximum(np.linalg.norm(d, axis=1), 1e-6)
        pull = (length / k)[:, None] * d
        np.add.at(disp, E[:, 0], -pull)
        np.add.at(disp, E[:, 1], pull)
        norm = np.maximum(np.linalg.norm(disp, axis=1), 1e-9)
        pos = pos + disp / norm[:, None] * np.minimum(norm, temp)[:, None]
        temp *= 0.985
    return pos


def plot_exchange_graph(
    n_clusters: int,
    edges: Sequence[tuple[int, int]],
    path: Path,
    title: str = "",
    bad: Sequence[int] = (),
) -> Path:
    pos = force_layout(n_clusters, edges)
    fig, ax = plt.subplots(figsize=(6, 6))
    for a, b in edges:
        ax.plot(pos[[a, b], 0], pos[[a, b], 1], color="0.7", lw=0.8, zorder=1)
    colors = ["tab:red" if i in set(bad) else "tab:blue" for i in range(n_clusters)]
    ax.scatter(pos[:, 0], pos[:, 1], c=colors, s=max(8, 400 // max(1, n_clusters) + 8), zorder=2)
    if n_clusters <= 60:
        for i, (x, y) in enumerate(pos):
            ax.annotate(str(i), (x, y), fontsize=6, ha="center", va="bottom")
    ax.set_title(title or f"exchange graph ({n_clusters} clusters)")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_lemma(per_cluster: Sequence[tuple[int, int, int]], path: Path, title: str = "") -> Path:
    data = np.array(per_cluster, dtype=float).reshape(-1, 3)
    idx = np.arange(len(data))
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(idx, data[:, 0], label="checked", color="tab:blue")
    ax.bar(idx, data[:, 1], bottom=data[:, 0], label="monomial in cluster", color="0.75")
    if data[:, 2].any():
        ax.bar(idx, data[:, 2], label="violations", color="tab:red")
    ax.set_xlabel("cluster")
    ax.set_ylabel("cluster monomials")
    ax.set_title(title or "proper Laurent monomial sweep")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_rep(dims: Sequence[int], g: Sequence[int], chi: dict, path: Path, title: str = "") -> Path:
    """Dimension and g-vectors side by side, plus the Euler characteristics by |e|."""
    n = len(dims)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.5))
    x = np.arange(n)
    ax1.bar(x - 0.2, dims, width=0.4, label="dim M")
    ax1.bar(x + 0.2, g, width=0.4, label="g")
    ax1.axhline(0, color="k", lw=0.5)
    ax1.set_xticks(x, [str(i + 1) for i in x])
    ax1.set_xlabel("vertex")
    ax1.legend(fontsize=8)
    totals: dict[int, int] = {}
    for e, c in chi.items():
        totals[sum(e)] = totals.get(sum(e), 0) + c
    ks = sorted(totals)
    ax2.bar(ks, [totals[k] for k in ks], color="tab:green")
    ax2.set_xticks(ks)
    ax2.set_xlabel("|e|")
    ax2.set_ylabel("sum of Euler characteristics")
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
