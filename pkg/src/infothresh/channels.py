"""Per-node noisy channels, exact noisy pairwise joints, IOP checks, and the
binary correlation correction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .information import mutual_information
from .model import DiscreteTreeModel, exact_mi_matrix, exact_pairwise_joint

TIE_TOL = 1e-12
CLAMP = 1e-9
KINDS = ("identity", "erasure", "bsc", "mary")


@dataclass(frozen=True)
class Identity:
    def matrix(self, symbols: Sequence[int]):
        return tuple(symbols), np.eye(len(symbols))


@dataclass(frozen=True)
class Erasure:
    """Keep the symbol with probability 1 - q, else emit the erasure symbol.

    The erasure symbol is ``max(symbols) + 1`` (M + 1 for the alphabet 1..M).
    """

    q: float

    def __post_init__(self):
        if not 0 <= self.q < 1:
            raise ValueError(f"erasure probability must lie in [0, 1), got {self.q}")

    def matrix(self, symbols):
        M = len(symbols)
        K = np.hstack([(1 - self.q) * np.eye(M), np.full((M, 1), self.q)])
        return tuple(symbols) + (max(symbols) + 1,), K


@dataclass(frozen=True)
class BinarySymmetric:
    """Swap the two symbols of a binary alphabet with probability q."""

    q: float

    def __post_init__(self):
        if not 0 <= self.q < 0.5:
            raise ValueError(f"crossover probability must lie in [0, 0.5), got {self.q}")

    def matrix(self, symbols):
        if len(symbols) != 2:
            raise ValueError(f"binary symmetric channel needs a binary alphabet, got {tuple(symbols)}")
        q = self.q
        return tuple(symbols), np.array([[1 - q, q], [q, 1 - q]])


@dataclass(frozen=True)
class MarySymmetric:
    """With probability q replace the symbol by a uniform draw from the alphabet."""

    q: float

    def __post_init__(self):
        if not 0 <= self.q < 1:
            raise ValueError(f"mixing probability must lie in [0, 1), got {self.q}")

    def matrix(self, symbols):
        M = len(symbols)
        return tuple(symbols), (1 - self.q) * np.eye(M) + self.q / M


Kernel = Identity | Erasure | BinarySymmetric | MarySymmetric


def _broadcast(q, p: int) -> list[float]:
    arr = np.atleast_1d(np.asarray(q, dtype=float))
    if arr.size == 1:
        return [float(arr[0])] * p
    if arr.size != p:
        raise ValueError(f"expected 1 or {p} parameters, got {arr.size}")
    return [float(v) for v in arr]


@dataclass(frozen=True)
class ChannelSpec:
    """One kernel per node; node k uses ``kernels[k - 1]``."""

    kernels: tuple

    def __post_init__(self):
        object.__setattr__(self, "kernels", tuple(self.kernels))
        mary = [k.q for k in self.kernels if isinstance(k, MarySymmetric)]
        if mary and (len(mary) != len(self.kernels) or len(set(mary)) != 1):
            raise ValueError("the M-ary symmetric channel uses one q shared by every node")

    @property
    def p(self) -> int:
        return len(self.kernels)

    @classmethod
    def identity(cls, p: int) -> "ChannelSpec":
        return cls((Identity(),) * p)

    @classmethod
    def erasure(cls, q, p: int) -> "ChannelSpec":
        return cls(tuple(Erasure(v) for v in _broadcast(q, p)))

    @classmethod
    def bsc(cls, q, p: int) -> "ChannelSpec":
        return cls(tuple(BinarySymmetric(v) for v in _broadcast(q, p)))

    @classmethod
    def mary(cls, q: float, p: int) -> "ChannelSpec":
        return cls((MarySymmetric(float(q)),) * p)

    @classmethod
    def from_name(cls, kind: str, params, p: int) -> "ChannelSpec":
        """Build from a kernel name and a scalar or per-node parameter vector."""
        if kind == "identity":
            return cls.identity(p)
        if kind == "erasure":
            return cls.erasure(params, p)
        if kind == "bsc":
            return cls.bsc(params, p)
        if kind == "mary":
            qs = _broadcast(params, p)
            return cls.mary(qs[0], p) if len(set(qs)) == 1 else cls(tuple(MarySymmetric(v) for v in qs))
        raise ValueError(f"unknown channel {kind!r}; expected one of {KINDS}")

    @property
    def kind(self) -> str:
        names = {Identity: "identity", Erasure: "erasure", BinarySymmetric: "bsc", MarySymmetric: "mary"}
        kinds = {names[type(k)] for k in self.kernels}
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def params(self) -> list[float]:
        return [getattr(k, "q", 0.0) for k in self.kernels]

    def flip_probabilities(self) -> list[float]:
        """Per-node crossover probabilities; identity nodes count as 0."""
        out = []
        for k in self.kernels:
            if isinstance(k, BinarySymmetric):
                out.append(k.q)
            elif isinstance(k, Identity):
                out.append(0.0)
            else:
                raise ValueError("flip probabilities only exist for binary symmetric / identity kernels")
        return out


def apply(channel: ChannelSpec, data, seed=None, symbols=None) -> np.ndarray:
    """Pass every cell of ``data`` through its node's kernel.

    ``symbols`` is the input alphabet; it defaults to the sorted distinct
    values of ``data`` (this only matters for the M-ary channel, which draws
    replacements from it, and for the erasure symbol).
    """
    data = np.asarray(data)
    if data.ndim != 2:
        raise ValueError("dataset must be 2-D")
    n, p = data.shape
    if p != channel.p:
        raise ValueError(f"channel has {channel.p} kernels but data has {p} columns")
    symbols = tuple(int(s) for s in (np.unique(data) if symbols is None else symbols))
    if n and not np.isin(data, symbols).all():
        raise ValueError("dataset contains symbols outside the declared alphabet")
    rng = np.random.default_rng(seed)
    out = data.astype(np.int64, copy=True)
    for k, kernel in enumerate(channel.kernels):
        col = out[:, k]
        if isinstance(kernel, Identity):
            continue
        hit = rng.random(n) < kernel.q
        if isinstance(kernel, Erasure):
            col[hit] = max(symbols) + 1
        elif isinstance(kernel, BinarySymmetric):
            if len(symbols) != 2:
                raise ValueError(f"binary symmetric channel needs a binary alphabet, got {symbols}")
            a, b = symbols
            col[hit] = np.where(col[hit] == a, b, a)
        elif isinstance(kernel, MarySymmetric):
            col[hit] = rng.choice(np.asarray(symbols), size=int(hit.sum()))
    return out


@lru_cache(maxsize=4096)
def _kernel_matrix(kernel, symbols: tuple) -> np.ndarray:
    K = kernel.matrix(symbols)[1]
    K.setflags(write=False)
    return K


def output_symbols(channel: ChannelSpec, model: DiscreteTreeModel, i: int) -> tuple[int, ...]:
    return channel.kernels[i - 1].matrix(model.symbols)[0]


def exact_noisy_pairwise_joint(channel: ChannelSpec, model: DiscreteTreeModel, i: int, j: int) -> np.ndarray:
    """p(y_i, y_j) = sum_{x_i, x_j} K_i(y_i | x_i) K_j(y_j | x_j) p(x_i, x_j)."""
    if channel.p != model.p:
        raise ValueError(f"channel has {channel.p} kernels but model has {model.p} nodes")
    P = exact_pairwise_joint(model, i, j)
    Ki = _kernel_matrix(channel.kernels[i - 1], model.symbols)
    Kj = _kernel_matrix(channel.kernels[j - 1], model.symbols)
    return Ki.T @ P @ Kj


def exact_noisy_mi(channel: ChannelSpec, model: DiscreteTreeModel, i: int, j: int, base: float = 2.0) -> float:
    return mutual_information(exact_noisy_pairwise_joint(channel, model, i, j), base=base)


def noisy_mi_matrix(channel: ChannelSpec, model: DiscreteTreeModel, base: float = 2.0) -> np.ndarray:
    p = model.p
    out = np.zeros((p, p))
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            out[i - 1, j - 1] = out[j - 1, i - 1] = exact_noisy_mi(channel, model, i, j, base)
    return out


@dataclass(frozen=True)
class IOPResult:
    holds: bool
    violation: tuple[tuple[int, int], tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.holds


def iop_check(model: DiscreteTreeModel, channel: ChannelSpec) -> IOPResult:
    """Does I(X_a) > I(X_b) imply I(Y_a) > I(Y_b) for all node pairs a, b?

    X-side gaps within 1e-12 are treated as ties and skipped. On failure the
    reported violation (a, b) is the first found when a runs over pairs by
    decreasing X-information and b by increasing X-information.
    """
    IX = exact_mi_matrix(model)
    IY = noisy_mi_matrix(channel, model)
    p = model.p
    pairs = [(i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)]
    x = {e: IX[e[0] - 1, e[1] - 1] for e in pairs}
    y = {e: IY[e[0] - 1, e[1] - 1] for e in pairs}
    desc = sorted(pairs, key=lambda e: (-x[e], e))
    asc = sorted(pairs, key=lambda e: (x[e], e))
    for a in desc:
        for b in asc:
            if x[a] - x[b] <= TIE_TOL:
                break
            if y[a] <= y[b]:
                return IOPResult(False, (a, b))
    return IOPResult(True)


def preprocess_binary_correlations(data, q) -> np.ndarray:
    """Empirical E[Y_i Y_j] divided by (1 - 2 q_i)(1 - 2 q_j), clamped off the diagonal.

    ``data`` holds +-1 values. Off-diagonal entries are clamped to
    [-1 + 1e-9, 1 - 1e-9]; the diagonal is 1.
    """
    data = np.asarray(data)
    if data.ndim != 2 or data.shape[0] == 0:
        raise ValueError("need a non-empty 2-D dataset")
    if not np.isin(data, (-1, 1)).all():
        raise ValueError("correlation pre-processing needs +-1 data")
    p = data.shape[1]
    q = np.asarray(_broadcast(q, p))
    if (q >= 0.5).any() or (q < 0).any():
        raise ValueError("flip probabilities must lie in [0, 0.5)")
    Y = data.astype(float)
    raw = (Y.T @ Y) / data.shape[0]
    atten = 1 - 2 * q
    corr = raw / np.outer(atten, atten)
    corr = np.clip(corr, -1 + CLAMP, 1 - CLAMP)
    np.fill_diagonal(corr, 1.0)
    return corr
