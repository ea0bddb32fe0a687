"""Chow-Liu structure learning and the two-edge error witness."""

from __future__ import annotations

import math

import numpy as np

from .estimation import pairwise_mi_matrix
from .information import binary_mi
from .tree import Edge, Tree, UnionFind, canonical_edge


def _pairs_from_matrix(W) -> dict[Edge, float]:
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError("weight matrix must be square")
    p = W.shape[0]
    return {(i + 1, j + 1): float(W[i, j]) for i in range(p) for j in range(i + 1, p)}


def mst(weights, p: int | None = None) -> Tree:
    """Maximum-weight spanning tree by Kruskal.

    ``weights`` is a symmetric p x p matrix or a mapping {(i, j): w} covering
    every unordered pair of 1..p. Edges are scanned by decreasing weight;
    equal weights go in ascending (i, j) order. Weights are compared exactly.
    """
    if isinstance(weights, dict):
        pairs = {canonical_edge(*e): float(w) for e, w in weights.items()}
        if p is None:
            p = max(max(e) for e in pairs) if pairs else 1
    else:
        pairs = _pairs_from_matrix(weights)
        p = np.asarray(weights).shape[0]
    expected = {(i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)}
    if set(pairs) != expected:
        raise ValueError(f"weights must cover all {len(expected)} node pairs of 1..{p}")
    for e, w in pairs.items():
        if not math.isfinite(w):
            raise ValueError(f"non-finite weight {w} on {e}")
    order = sorted(pairs, key=lambda e: (-pairs[e], e))
    uf = UnionFind(range(1, p + 1))
    chosen = []
    for e in order:
        if uf.union(*e):
            chosen.append(e)
            if len(chosen) == p - 1:
                break
    return Tree(p, chosen)


def chow_liu(data) -> Tree:
    """MST of plug-in mutual information over all column pairs of ``data``."""
    data = np.asarray(data)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError("need a 2-D dataset with at least two columns")
    return mst(pairwise_mi_matrix(data))


def chow_liu_from_correlations(corr) -> Tree:
    """MST of binary-symmetric MI computed from a correlation matrix."""
    corr = np.asarray(corr, dtype=float)
    return mst(binary_mi(corr))


def two_trees_witness(truth: Tree, estimate: Tree) -> tuple[Edge, Edge] | None:
    """Edges e in truth \\ estimate and g in estimate \\ truth that certify a mistake.

    g = (u, v) is chosen so that e lies on the truth path between u and v,
    and g lies on the estimate's path between the endpoints of e. Returns None
    when the trees agree.
    """
    if truth.node_count != estimate.node_count:
        raise ValueError("trees are on different node sets")
    missing = sorted(truth.edge_set() - estimate.edge_set())
    if not missing:
        return None
    e = missing[0]
    side, _ = truth.split(e)
    side = set(side)
    # removing e splits the truth tree; the estimate's path between e's
    # endpoints must cross that cut through some edge not in the truth
    for g in estimate.path_edges(*e):
        if (g[0] in side) != (g[1] in side):
            return e, g
    raise AssertionError("unreachable: a path between the cut sides crosses it")
