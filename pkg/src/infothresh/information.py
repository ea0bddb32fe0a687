"""Entropy, mutual information and KL divergence of explicit probability tables.

All functions take a ``base`` for the logarithm; the package default is bits
(base 2) everywhere except the converse/Fano computations, which use nats.
"""

from __future__ import annotations

import numpy as np

LN2 = float(np.log(2.0))


def _log(x, base: float):
    return np.log(x) / np.log(base) if base != np.e else np.log(x)


def entropy(dist, base: float = 2.0) -> float:
    """Shannon entropy of a probability table of any shape, with 0 log 0 = 0."""
    p = np.asarray(dist, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * _log(p, base)).sum())


def mutual_information(joint, base: float = 2.0) -> float:
    """I(A;B) of a 2-D joint table, computed as sum p log p/(p_a p_b).

    Tiny negative round-off is clipped to 0.
    """
    P = np.asarray(joint, dtype=float)
    total = P.sum()
    if total <= 0:
        raise ValueError("joint table has no mass")
    P = P / total
    pa = P.sum(axis=1)
    pb = P.sum(axis=0)
    mask = P > 0
    outer = np.outer(pa, pb)
    val = float((P[mask] * _log(P[mask] / outer[mask], base)).sum())
    return max(val, 0.0)


def kl_divergence(p, q, base: float = np.e) -> float:
    """D(p || q) for two tables of equal shape; inf when p is not << q."""
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch {p.shape} vs {q.shape}")
    mask = p > 0
    if np.any(q[mask] <= 0):
        return float("inf")
    return float((p[mask] * _log(p[mask] / q[mask], base)).sum())


def binary_mi(rho, base: float = 2.0):
    """MI of a pair of uniform +-1 variables with correlation ``rho``.

    Evaluates 1/2 log((1-r)^(1-r) (1+r)^(1+r)) in a form that stays finite
    at |rho| = 1. Accepts scalars or arrays.
    """
    r = np.abs(np.asarray(rho, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        lo = np.where(r < 1, (1 - r) * np.log1p(-np.minimum(r, 1 - 1e-300)), 0.0)
        hi = (1 + r) * np.log1p(r)
    out = 0.5 * (lo + hi) / np.log(base)
    return float(out) if out.ndim == 0 else out


def binary_joint(rho: float) -> np.ndarray:
    """2x2 joint of uniform +-1 variables: p(a, b) = (1 + rho a b) / 4, index 0 is -1."""
    if not -1 <= rho <= 1:
        raise ValueError(f"correlation must lie in [-1, 1], got {rho}")
    return np.array([[1 + rho, 1 - rho], [1 - rho, 1 + rho]], dtype=float) / 4.0
