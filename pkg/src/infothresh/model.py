"""Exact discrete tree-structured Markov random fields.

A model is the tree, one marginal per node and one pairwise joint per edge;
the full distribution is the usual tree factorization

    p(x) = prod_i p(x_i) * prod_(i,j) p(x_i, x_j) / (p(x_i) p(x_j)).

Nodes are labeled 1..p. Symbols are the values that appear in datasets,
``1..M`` by default and ``(-1, +1)`` for binary correlation models; every
table is indexed by symbol position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .bounds import TailParams
from .information import binary_joint, mutual_information
from .tree import Edge, Tree, canonical_edge

TABLE_TOL = 1e-12
SUM_TOL = 1e-10
INDEPENDENCE_TOL = 1e-15
ENUMERATION_CAP = 10**7


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteTreeModel:
    """Tree, per-node marginals (p x M) and per-edge joints (M x M).

    ``edge_joints[(i, j)]`` with ``i < j`` is indexed ``[x_i, x_j]``.
    Inconsistent tables are accepted so that :func:`validate` can report
    them; only shape errors raise.
    """

    tree: Tree
    node_marginals: np.ndarray
    edge_joints: Mapping[Edge, np.ndarray]
    symbols: tuple[int, ...] = ()
    tail: TailParams | None = None
    allow_degenerate: bool = False
    _conditionals: dict = field(init=False, repr=False, default_factory=dict)
    _pairs: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        marg = _frozen(self.node_marginals)
        p = self.tree.node_count
        if marg.ndim != 2 or marg.shape[0] != p:
            raise ValueError(f"node_marginals must have shape (p={p}, M), got {marg.shape}")
        M = marg.shape[1]
        if M < 2:
            raise ValueError("alphabet size must be at least 2")
        joints = {}
        for key, table in self.edge_joints.items():
            i, j = (int(v) for v in key)
            t = np.asarray(table, dtype=float)
            if t.shape != (M, M):
                raise ValueError(f"edge joint {key} must be {M}x{M}, got {t.shape}")
            if i > j:
                i, j, t = j, i, t.T
            joints[(i, j)] = _frozen(t)
        if set(joints) != set(self.tree.edges):
            raise ValueError("edge_joints keys must match the tree edges exactly")
        symbols = tuple(int(s) for s in self.symbols) or tuple(range(1, M + 1))
        if len(symbols) != M or len(set(symbols)) != M:
            raise ValueError(f"need {M} distinct symbols, got {symbols}")
        object.__setattr__(self, "node_marginals", marg)
        object.__setattr__(self, "edge_joints", {e: joints[e] for e in self.tree.edges})
        object.__setattr__(self, "symbols", symbols)

    @property
    def p(self) -> int:
        return self.tree.node_count

    @property
    def alphabet_size(self) -> int:
        return self.node_marginals.shape[1]

    def marginal(self, i: int) -> np.ndarray:
        return self.node_marginals[i - 1]

    def joint(self, i: int, j: int) -> np.ndarray:
        """Stored edge joint oriented as ``[x_i, x_j]``."""
        e = canonical_edge(i, j)
        if e not in self.edge_joints:
            raise ValueError(f"({i}, {j}) is not an edge")
        t = self.edge_joints[e]
        return t if e == (i, j) else t.T

    def conditional(self, parent: int, child: int) -> np.ndarray:
        """Row-stochastic kernel K[a, b] = p(x_child = b | x_parent = a)."""
        key = (parent, child)
        K = self._conditionals.get(key)
        if K is None:
            J = self.joint(parent, child)
            rows = J.sum(axis=1, keepdims=True)
            M = self.alphabet_size
            K = np.where(rows > 0, J / np.where(rows > 0, rows, 1.0), 1.0 / M)
            K.setflags(write=False)
            self._conditionals[key] = K
        return K

    def symbol_index(self, values) -> np.ndarray:
        lookup = {s: k for k, s in enumerate(self.symbols)}
        try:
            return np.vectorize(lookup.__getitem__, otypes=[np.int64])(np.asarray(values))
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} not in alphabet {self.symbols}") from None


@dataclass(frozen=True, eq=False)
class BinaryCorrelationModel(DiscreteTreeModel):
    """+-1 tree model with uniform marginals, parameterized by edge correlations."""

    correlations: Mapping[Edge, float] = field(default_factory=dict)

    @classmethod
    def from_correlations(cls, tree: Tree, correlations, **kwargs) -> "BinaryCorrelationModel":
        """``correlations`` is a mapping edge -> rho or a sequence aligned with ``tree.edges``."""
        if isinstance(correlations, Mapping):
            rhos = {canonical_edge(*e): float(r) for e, r in correlations.items()}
        else:
            values = [float(r) for r in correlations]
            if len(values) != len(tree.edges):
                raise ValueError(f"expected {len(tree.edges)} correlations, got {len(values)}")
            rhos = dict(zip(tree.edges, values))
        if set(rhos) != set(tree.edges):
            raise ValueError("correlations must cover exactly the tree edges")
        for e, r in rhos.items():
            if not -1 < r < 1 or r == 0:
                raise ValueError(f"edge {e}: correlation must lie in (-1, 1) minus 0, got {r}")
        rhos = {e: rhos[e] for e in tree.edges}
        marg = np.full((tree.node_count, 2), 0.5)
        joints = {e: binary_joint(r) for e, r in rhos.items()}
        return cls(tree, marg, joints, symbols=(-1, 1), correlations=rhos, **kwargs)

    def correlation(self, i: int, j: int) -> float:
        """E[X_i X_j]: product of edge correlations along the tree path."""
        if i == j:
            return 1.0
        out = 1.0
        for e in self.tree.path_edges(i, j):
            out *= self.correlations[e]
        return out

    def correlation_matrix(self) -> np.ndarray:
        p = self.p
        C = np.eye(p)
        for i in range(1, p + 1):
            for j in range(i + 1, p + 1):
                C[i - 1, j - 1] = C[j - 1, i - 1] = self.correlation(i, j)
        return C


def independent_model(tree: Tree, marginals) -> DiscreteTreeModel:
    """Tree model whose edge joints are products of the marginals (zero MI)."""
    marg = np.asarray(marginals, dtype=float)
    if marg.ndim == 1:
        marg = np.tile(marg, (tree.node_count, 1))
    joints = {(i, j): np.outer(marg[i - 1], marg[j - 1]) for i, j in tree.edges}
    return DiscreteTreeModel(tree, marg, joints)


def random_model(tree: Tree, M: int, rng, concentration: float = 1.0) -> DiscreteTreeModel:
    """Random admissible model: Dirichlet root marginal and Dirichlet transition rows.

    Edge joints are built from parent -> child kernels along a BFS from node 1,
    which keeps every table consistent by construction.
    """
    rng = np.random.default_rng(rng)
    p = tree.node_count
    marg = np.zeros((p, M))
    joints = {}
    for node, parent in tree.bfs_order(1):
        if parent is None:
            marg[node - 1] = rng.dirichlet(np.full(M, concentration))
            continue
        K = rng.dirichlet(np.full(M, concentration), size=M)
        J = marg[parent - 1][:, None] * K
        marg[node - 1] = J.sum(axis=0)
        joints[canonical_edge(parent, node)] = J if parent < node else J.T
    return DiscreteTreeModel(tree, marg, joints)


def random_binary_model(tree: Tree, rng, low: float = 0.05, high: float = 0.95) -> BinaryCorrelationModel:
    """Edge correlations with |rho| uniform in [low, high] and random signs."""
    rng = np.random.default_rng(rng)
    k = len(tree.edges)
    rhos = rng.uniform(low, high, size=k) * rng.choice([-1.0, 1.0], size=k)
    return BinaryCorrelationModel.from_correlations(tree, rhos)


def joint_probability(model: DiscreteTreeModel, x: Sequence) -> float:
    """p(x) from the tree factorization; ``x`` holds one symbol per node."""
    x = list(x)
    if len(x) != model.p:
        raise ValueError(f"configuration needs {model.p} entries, got {len(x)}")
    idx = model.symbol_index(x)
    marg = model.node_marginals
    prob = float(np.prod(marg[np.arange(model.p), idx]))
    for (i, j), J in model.edge_joints.items():
        a, b = idx[i - 1], idx[j - 1]
        denom = marg[i - 1, a] * marg[j - 1, b]
        if denom == 0:
            return 0.0
        prob *= J[a, b] / denom
    return prob


def full_joint(model: DiscreteTreeModel) -> np.ndarray:
    """The whole distribution as an array of shape (M,) * p, by direct factorization."""
    M, p = model.alphabet_size, model.p
    if M**p > ENUMERATION_CAP:
        raise OverflowError(f"M^p = {M}^{p} exceeds the enumeration cap {ENUMERATION_CAP}")
    marg = model.node_marginals
    out = np.ones((M,) * p)
    for i in range(p):
        shape = [1] * p
        shape[i] = M
        out = out * marg[i].reshape(shape)
    for (i, j), J in model.edge_joints.items():
        outer = np.outer(marg[i - 1], marg[j - 1])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(outer > 0, J / np.where(outer > 0, outer, 1.0), 0.0)
        shape = [1] * p
        shape[i - 1] = M
        shape[j - 1] = M
        out = out * ratio.reshape(shape)
    return out


def marginalize_pair(full: np.ndarray, i: int, j: int) -> np.ndarray:
    """Pairwise table ``[x_i, x_j]`` from a full joint array."""
    p = full.ndim
    other = tuple(k for k in range(p) if k not in (i - 1, j - 1))
    t = full.sum(axis=other)
    return t if i < j else t.T


def sample(model: DiscreteTreeModel, n: int, seed=None) -> np.ndarray:
    """Draw ``n`` i.i.d. rows (shape n x p) of symbols.

    Node 1 is drawn from its marginal, then each node from p(child | parent)
    in BFS order. ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    p, M = model.p, model.alphabet_size
    idx = np.zeros((n, p), dtype=np.int64)
    for node, parent in model.tree.bfs_order(1):
        u = rng.random(n)
        if parent is None:
            cdf = np.cumsum(model.marginal(node))
            col = np.searchsorted(cdf, u, side="right")
        else:
            cdf = np.cumsum(model.conditional(parent, node), axis=1)
            col = (u[:, None] >= cdf[idx[:, parent - 1]]).sum(axis=1)
        idx[:, node - 1] = np.minimum(col, M - 1)
    return np.asarray(model.symbols, dtype=np.int64)[idx]


def pairwise_joints_from(model: DiscreteTreeModel, i: int) -> dict[int, np.ndarray]:
    """Exact joints ``[x_i, x_j]`` for every node j != i by kernel propagation."""
    out = {}
    root_table = np.diag(model.marginal(i))
    tables = {i: root_table}
    for node, parent in model.tree.bfs_order(i):
        if parent is None:
            continue
        tables[node] = tables[parent] @ model.conditional(parent, node)
        out[node] = tables[node]
    return out


def exact_pairwise_joint(model: DiscreteTreeModel, i: int, j: int) -> np.ndarray:
    """p(x_i, x_j) by chaining conditional kernels along the tree path.

    Results are cached on the model and returned read-only.
    """
    if i == j:
        raise ValueError("exact_pairwise_joint needs two distinct nodes")
    a, b = (i, j) if i < j else (j, i)
    table = model._pairs.get((a, b))
    if table is None:
        path = model.tree.path(a, b)
        if len(path) == 2:
            table = model.joint(a, b)
        else:
            table = np.diag(model.marginal(a))
            for u, v in zip(path, path[1:]):
                table = table @ model.conditional(u, v)
            table.setflags(write=False)
        model._pairs[(a, b)] = table
    return table if i < j else table.T


def exact_mutual_information(model: DiscreteTreeModel, i: int, j: int, base: float = 2.0) -> float:
    if i == j:
        raise ValueError("exact_mutual_information needs two distinct nodes")
    return mutual_information(exact_pairwise_joint(model, i, j), base=base)


def exact_mi_matrix(model: DiscreteTreeModel, base: float = 2.0) -> np.ndarray:
    """Symmetric p x p matrix of exact pairwise MI (zero diagonal); entry [i-1, j-1]."""
    p = model.p
    out = np.zeros((p, p))
    for i in range(1, p + 1):
        for j, table in pairwise_joints_from(model, i).items():
            if j > i:
                out[i - 1, j - 1] = out[j - 1, i - 1] = mutual_information(table, base=base)
    return out


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        lines = [f"VIOLATION: {v}" for v in self.violations]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) if lines else "ok"


def _deterministic(J: np.ndarray) -> bool:
    """True if one coordinate is a function of the other on the support."""
    support = J > TABLE_TOL
    rows = support[support.any(axis=1)]
    cols = support.T[support.any(axis=0)]
    return bool((rows.sum(axis=1) == 1).all() or (cols.sum(axis=1) == 1).all())


def _independent(J: np.ndarray) -> bool:
    # judged on the table: MI of weakly dependent far pairs underflows long before
    # the table stops differing from the product of its margins
    return bool(np.abs(J - np.outer(J.sum(axis=1), J.sum(axis=0))).max() <= INDEPENDENCE_TOL)


def validate(model: DiscreteTreeModel) -> ValidationReport:
    """Check normalization, consistency, positive MI and non-degeneracy.

    Violations are returned, never raised.
    """
    rep = ValidationReport()
    consistent = True
    for v in model.tree.nodes:
        m = model.marginal(v)
        if (m < 0).any():
            rep.violations.append(f"normalization: node {v} marginal has negative entries")
            consistent = False
        if abs(m.sum() - 1) > TABLE_TOL:
            rep.violations.append(f"normalization: node {v} marginal sums to {m.sum():.15g}")
            consistent = False
    for (i, j), J in model.edge_joints.items():
        if (J < 0).any():
            rep.violations.append(f"normalization: edge {(i, j)} joint has negative entries")
            consistent = False
        if abs(J.sum() - 1) > TABLE_TOL:
            rep.violations.append(f"normalization: edge {(i, j)} joint sums to {J.sum():.15g}")
            consistent = False
        row_err = np.abs(J.sum(axis=1) - model.marginal(i)).max()
        col_err = np.abs(J.sum(axis=0) - model.marginal(j)).max()
        if row_err > TABLE_TOL:
            rep.violations.append(
                f"consistency: edge {(i, j)} row sums differ from node {i} marginal by {row_err:.3g}")
            consistent = False
        if col_err > TABLE_TOL:
            rep.violations.append(
                f"consistency: edge {(i, j)} column sums differ from node {j} marginal by {col_err:.3g}")
            consistent = False
        if _independent(J):
            rep.violations.append(f"positive MI: edge {(i, j)} has zero mutual information")
        elif _deterministic(J):
            if model.allow_degenerate:
                rep.notes.append(f"edge {(i, j)} is deterministic (allowed by flag)")
            else:
                rep.violations.append(f"positive MI: edge {(i, j)} joint is degenerate (deterministic)")
    if consistent:
        for e in itertools.combinations(model.tree.nodes, 2):
            if not model.tree.has_edge(*e) and _independent(exact_pairwise_joint(model, *e)):
                rep.violations.append(f"positive MI: pair {e} has zero mutual information")
    if model.tail is None:
        rep.notes.append(
            f"alphabet: finite alphabet (M={model.alphabet_size}); tail constants not supplied")
    else:
        t = model.tail
        rep.notes.append(f"alphabet: caller-asserted tail parameters c={t.c}, c1={t.c1}, c2={t.c2}")
    return rep
