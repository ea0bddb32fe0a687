"""Pairwise count tables and plug-in entropy / mutual information (bits)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .information import entropy, mutual_information


@dataclass(frozen=True, eq=False)
class EmpiricalJoint:
    """Counts of (row_i, row_j) pairs over the listed symbols.

    ``counts[a, b]`` counts rows with ``row_i == row_symbols[a]`` and
    ``row_j == col_symbols[b]``.
    """

    counts: np.ndarray
    row_symbols: tuple[int, ...]
    col_symbols: tuple[int, ...]

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or (counts < 0).any():
            raise ValueError("counts must be a nonnegative 2-D integer table")
        if counts.shape != (len(self.row_symbols), len(self.col_symbols)):
            raise ValueError("symbol lists do not match the table shape")
        if counts.sum() < 1:
            raise ValueError("an empirical joint needs at least one sample")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    def probabilities(self) -> np.ndarray:
        return self.counts / self.n

    def as_dict(self) -> dict[tuple[int, int], int]:
        """Nonzero cells keyed by symbol pair."""
        rows, cols = np.nonzero(self.counts)
        return {(self.row_symbols[a], self.col_symbols[b]): int(self.counts[a, b])
                for a, b in zip(rows, cols)}

    def transpose(self) -> "EmpiricalJoint":
        return EmpiricalJoint(self.counts.T, self.col_symbols, self.row_symbols)


def _check_dataset(data) -> np.ndarray:
    data = np.asarray(data)
    if data.ndim != 2:
        raise ValueError("dataset must be a 2-D array (n rows x p nodes)")
    if data.shape[0] == 0:
        raise ValueError("dataset is empty")
    return data


def empirical_pairwise(data, i: int, j: int, symbols=None) -> EmpiricalJoint:
    """Count table for nodes i and j (1-based columns).

    ``symbols`` adds declared but unobserved symbols to both axes; they only
    contribute empty rows and columns.
    """
    data = _check_dataset(data)
    if i == j:
        raise ValueError("empirical_pairwise needs two distinct nodes")
    a, b = data[:, i - 1], data[:, j - 1]
    extra = np.asarray([] if symbols is None else list(symbols), dtype=data.dtype)
    rs = np.union1d(np.unique(a), extra)
    cs = np.union1d(np.unique(b), extra)
    ra = np.searchsorted(rs, a)
    cb = np.searchsorted(cs, b)
    counts = np.bincount(ra * len(cs) + cb, minlength=len(rs) * len(cs)).reshape(len(rs), len(cs))
    return EmpiricalJoint(counts, tuple(int(s) for s in rs), tuple(int(s) for s in cs))


def plugin_entropy(dist) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(dist, dtype=float)
    if (p < 0).any():
        raise ValueError("probabilities must be nonnegative")
    return entropy(p, base=2.0)


def plugin_mi(ej: EmpiricalJoint) -> float:
    """Plug-in MI in bits of the empirical joint."""
    return mutual_information(ej.counts.astype(float), base=2.0)


def pairwise_mi_matrix(data) -> np.ndarray:
    """p x p matrix of plug-in MI between all column pairs (zero diagonal).

    Columns are recoded to small nonnegative codes once, then each pair is
    counted with a single ``bincount``.
    """
    data = _check_dataset(data)
    n, p = data.shape
    codes = []
    sizes = []
    for k in range(p):
        col = data[:, k]
        lo, hi = int(col.min()), int(col.max())
        if hi - lo < 64:
            # narrow integer range: offsets are codes, empty codes carry no mass
            codes.append((col - lo).astype(np.int64))
            sizes.append(hi - lo + 1)
        else:
            _, inv = np.unique(col, return_inverse=True)
            codes.append(inv.ravel())
            sizes.append(int(inv.max()) + 1)
    out = np.zeros((p, p))
    for a in range(p):
        for b in range(a + 1, p):
            counts = np.bincount(codes[a] * sizes[b] + codes[b], minlength=sizes[a] * sizes[b])
            out[a, b] = out[b, a] = mutual_information(counts.reshape(sizes[a], sizes[b]).astype(float))
    return out
