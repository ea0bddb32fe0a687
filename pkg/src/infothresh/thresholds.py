"""Information thresholds over the feasibility set of (edge, node pair) tuples.

For a tree T the feasible tuples are (e, u, v) with e = (w, w') an edge on
the path between u and v, and that path of length at least 2. The threshold
is half the smallest gap I(w; w') - I(u; v) over these tuples, computed from
exact model MIs (or exact noisy MIs, still over the hidden tree's tuples).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .channels import ChannelSpec, noisy_mi_matrix
from .information import LN2, kl_divergence
from .model import BinaryCorrelationModel, DiscreteTreeModel, exact_mi_matrix, exact_pairwise_joint
from .tree import Edge, Tree, canonical_edge

METHODS = ("brute_force", "local")


class UndefinedThresholdError(ValueError):
    """Raised for trees with fewer than three nodes (no feasible tuple exists)."""


class EV2Tuple(NamedTuple):
    edge: Edge
    u: int
    v: int


@dataclass(frozen=True)
class ThresholdReport:
    value: float
    argmin: EV2Tuple
    method: str
    edge_mi: float
    pair_mi: float

    @property
    def positive(self) -> bool:
        return self.value > 0


def enumerate_ev2(tree: Tree) -> list[EV2Tuple]:
    """All feasible tuples, ordered by edge then (u, v), with u < v."""
    out = []
    for e in tree.edges:
        left, right = tree.split(e)
        tuples = []
        for a in left:
            for b in right:
                pair = canonical_edge(a, b)
                if pair != e:
                    tuples.append(EV2Tuple(e, *pair))
        out.extend(sorted(tuples))
    return out


def local_candidates(tree: Tree) -> Iterator[EV2Tuple]:
    """Tuples where one endpoint of e is kept and the other replaced by its neighbor."""
    for w, wb in tree.edges:
        for x in tree.neighbors(wb):
            if x != w:
                yield EV2Tuple((w, wb), *canonical_edge(w, x))
        for x in tree.neighbors(w):
            if x != wb:
                yield EV2Tuple((w, wb), *canonical_edge(wb, x))


def threshold_from_mi(tree: Tree, mi: np.ndarray, method: str = "brute_force") -> ThresholdReport:
    """Threshold for a given symmetric MI matrix (entry [i-1, j-1])."""
    if tree.node_count < 3:
        raise UndefinedThresholdError("the threshold needs at least three nodes")
    if method == "brute_force":
        candidates = enumerate_ev2(tree)
    elif method == "local":
        candidates = local_candidates(tree)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    best = None
    for t in candidates:
        (w, wb), u, v = t
        gap = 0.5 * (mi[w - 1, wb - 1] - mi[u - 1, v - 1])
        key = (gap, t)
        if best is None or key < best:
            best = key
    gap, t = best
    (w, wb), u, v = t
    return ThresholdReport(float(gap), t, method, float(mi[w - 1, wb - 1]), float(mi[u - 1, v - 1]))


def information_threshold(model: DiscreteTreeModel, method: str = "brute_force") -> ThresholdReport:
    """Clean threshold from exact model MIs (bits)."""
    if model.p < 3:
        raise UndefinedThresholdError("the threshold needs at least three nodes")
    return threshold_from_mi(model.tree, exact_mi_matrix(model), method)


def noisy_information_threshold(model: DiscreteTreeModel, channel: ChannelSpec,
                                method: str = "brute_force") -> ThresholdReport:
    """Threshold from exact noisy MIs over the hidden tree's tuples; may be <= 0.

    ``method="local"`` is offered for symmetry but is only guaranteed to match
    brute force for channels that keep the MI order along paths.
    """
    if model.p < 3:
        raise UndefinedThresholdError("the threshold needs at least three nodes")
    return threshold_from_mi(model.tree, noisy_mi_matrix(channel, model), method)


def information_ratio(model: DiscreteTreeModel) -> float:
    """RI = max over feasible tuples of I(u; v) / I(w; w')."""
    if model.p < 3:
        return 0.0
    mi = exact_mi_matrix(model)
    return max(mi[u - 1, v - 1] / mi[w - 1, wb - 1] for (w, wb), u, v in enumerate_ev2(model.tree))


def erasure_feasibility(model: DiscreteTreeModel, q) -> bool:
    """Sufficient test for a positive noisy threshold under per-node erasures.

    Every ratio (1 - q_i) / (1 - q_j) must lie strictly inside
    (sqrt(RI), 1 / sqrt(RI)).
    """
    q = np.broadcast_to(np.asarray(q, dtype=float), (model.p,))
    if ((q < 0) | (q >= 1)).any():
        raise ValueError("erasure probabilities must lie in [0, 1)")
    ri = information_ratio(model)
    lo = np.sqrt(ri)
    hi = 1 / lo if ri > 0 else np.inf
    keep = 1 - q
    ratios = keep[:, None] / keep[None, :]
    off = ~np.eye(model.p, dtype=bool)
    return bool(((ratios[off] > lo) & (ratios[off] < hi)).all())


def bsc_feasibility(model: BinaryCorrelationModel, q) -> bool:
    """Sufficient test under per-node binary symmetric noise.

    Every ratio (1 - 2 q_i) / (1 - 2 q_j) must lie strictly inside
    (m, 1 / m), m the largest edge |rho|.
    """
    q = np.broadcast_to(np.asarray(q, dtype=float), (model.p,))
    if (q >= 0.5).any() or (q < 0).any():
        raise ValueError("crossover probabilities must lie in [0, 0.5)")
    m = max(abs(r) for r in model.correlations.values())
    atten = 1 - 2 * q
    ratios = atten[:, None] / atten[None, :]
    off = ~np.eye(model.p, dtype=bool)
    return bool(((ratios[off] > m) & (ratios[off] < 1 / m)).all())


def kl_from_uniform(table: np.ndarray) -> float:
    """KL(U || table) in bits, U uniform over the cells."""
    U = np.full(table.shape, 1.0 / table.size)
    return kl_divergence(U, table) / LN2


def small_noise_approximation(model: DiscreteTreeModel, q: float,
                              report: ThresholdReport | None = None) -> float:
    """First-order value of the noisy threshold under a shared M-ary symmetric channel.

    With s = (1 - q)^2 the noisy joints are s P + (1 - s) U (uniform
    marginals), and to first order in 1 - s

        I_noisy ~= s I - (1 - s) KL(U || P).

    Halving the gap at the clean argmin (w, w'), (u, v) gives

        s I_thr - (1 - s) / 2 * [KL(U || P_ww') - KL(U || P_uv)].
    """
    report = report or information_threshold(model)
    (w, wb), u, v = report.argmin
    d_kl = (kl_from_uniform(exact_pairwise_joint(model, w, wb))
            - kl_from_uniform(exact_pairwise_joint(model, u, v)))
    s = (1 - q) ** 2
    return s * report.value - 0.5 * (1 - s) * d_kl

