"""Fano-type lower bound: a family of chain models differing in one edge each.

M0 is the chain 1 - 2 - ... - p. Edges (k, k+1) with k odd carry the joint A,
edges with k even carry the weaker joint B. For every even i, model Mi
replaces (i, i+1) by (i-1, i+1), whose joint is the (i-1, i+1) joint of M0.
All KL values here are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .information import LN2, binary_joint, kl_divergence, mutual_information
from .model import ENUMERATION_CAP, DiscreteTreeModel, exact_pairwise_joint, full_joint
from .tree import Tree, chain


class CapacityError(OverflowError):
    """Raised when exact enumeration would exceed the configuration cap."""


def interpolate_to_product(joint: np.ndarray, ell: float) -> np.ndarray:
    """(1 - 2^-ell) * (product of marginals) + 2^-ell * joint."""
    w = 2.0 ** (-ell)
    prod = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    return (1 - w) * prod + w * joint


@dataclass(frozen=True, eq=False)
class FanoFamily:
    """``models[0]`` is M0, ``models[i]`` for even i is Mi."""

    p: int
    A: np.ndarray
    B: np.ndarray
    ell: float
    models: dict

    @property
    def M(self) -> int:
        return self.A.shape[0]

    @property
    def indices(self) -> list[int]:
        return [i for i in self.models if i != 0]


def build_fano_family(p: int, A, B, ell: float = 0) -> FanoFamily:
    """Construct M0 and every Mi.

    ``A`` is the joint of (x1, x2) indexed [x1, x2]; ``B`` that of (x2, x3)
    indexed [x2, x3], before interpolation. Both need uniform marginals and
    I(B) < I(A). ``B`` is moved toward independence by ``ell`` halvings.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be odd and at least 3, got {p}")
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError("A and B must be square tables of the same size")
    M = A.shape[0]
    uniform = np.full(M, 1.0 / M)
    for name, T in (("A", A), ("B", B)):
        if (T < 0).any() or abs(T.sum() - 1) > 1e-12:
            raise ValueError(f"{name} is not a probability table")
        if np.abs(T.sum(axis=0) - uniform).max() > 1e-12 or np.abs(T.sum(axis=1) - uniform).max() > 1e-12:
            raise ValueError(f"{name} must have uniform marginals")
    if not 0 < mutual_information(B) < mutual_information(A):
        raise ValueError("need 0 < I(B) < I(A)")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    Bl = interpolate_to_product(B, ell)
    marg = np.full((p, M), 1.0 / M)
    base_joints = {(k, k + 1): (A if k % 2 == 1 else Bl) for k in range(1, p)}
    m0 = DiscreteTreeModel(chain(p), marg, base_joints)
    models = {0: m0}
    for i in range(2, p, 2):
        joints = dict(base_joints)
        del joints[(i, i + 1)]
        joints[(i - 1, i + 1)] = exact_pairwise_joint(m0, i - 1, i + 1)
        tree = Tree(p, list(joints))
        models[i] = DiscreteTreeModel(tree, marg, joints)
    return FanoFamily(p, A, Bl, ell, models)


def binary_fano_family(p: int, rho_a: float, rho_b: float, ell: float = 0) -> FanoFamily:
    return build_fano_family(p, binary_joint(rho_a), binary_joint(rho_b), ell)


def kl_between_models(a: DiscreteTreeModel, b: DiscreteTreeModel) -> float:
    """D(a || b) in nats by enumerating every configuration."""
    if a.p != b.p or a.alphabet_size != b.alphabet_size:
        raise ValueError("models must share p and the alphabet")
    if a.alphabet_size**a.p > ENUMERATION_CAP:
        raise CapacityError(f"M^p = {a.alphabet_size}^{a.p} exceeds {ENUMERATION_CAP}")
    return kl_divergence(full_joint(a), full_joint(b))


def _mi_nats(model, i, j):
    return mutual_information(exact_pairwise_joint(model, i, j), base=math.e)


def displaced_threshold(family: FanoFamily, i: int) -> float:
    """Half the gap I_Mi(x_{i+1}; x_{i-1}) - I_Mi(x_{i+1}; x_i), in nats."""
    mi = family.models[i]
    return 0.5 * (_mi_nats(mi, i + 1, i - 1) - _mi_nats(mi, i + 1, i))


def base_threshold(family: FanoFamily) -> float:
    """Half the gap I_M0(x3; x2) - I_M0(x3; x1), in nats."""
    m0 = family.models[0]
    return 0.5 * (_mi_nats(m0, 3, 2) - _mi_nats(m0, 3, 1))


def kl_closed_forms(family: FanoFamily, i: int) -> tuple[float, float]:
    """(D(M0 || Mi), D(Mi || M0)) in nats without enumeration.

    D(M0 || Mi) = I_M0(x_{i+1}; x_i) - I_M0(x_{i+1}; x_{i-1})
    D(Mi || M0) = 2 * displaced_threshold(i) + KL(p_Mi(x_{i+1}, x_i) || p_M0(x_{i+1}, x_i))
    """
    m0, mi = family.models[0], family.models[i]
    forward = _mi_nats(m0, i + 1, i) - _mi_nats(m0, i + 1, i - 1)
    displaced = kl_divergence(exact_pairwise_joint(mi, i + 1, i), exact_pairwise_joint(m0, i + 1, i))
    backward = 2 * displaced_threshold(family, i) + displaced
    return forward, backward


def fano_sample_bound(p: int, eta: float) -> int:
    """ceil((ln((p+1)/2) - 2) / (4 eta)) - 1, floored at 0."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be odd and at least 3, got {p}")
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    return max(0, math.ceil((math.log((p + 1) / 2) - 2) / (4 * eta)) - 1)


def bits_to_nats(x: float) -> float:
    return x * LN2
