"""Labeled trees on nodes 1..p, union-find, and random tree generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

Edge = tuple[int, int]

SHAPES = ("chain", "star", "uniform_random")


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path halving."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in self.parent}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            self.size[x] = 1
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a, b) -> bool:
        return self.find(a) == self.find(b)


def canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Tree:
    """An undirected spanning tree on nodes ``1..node_count``.

    Edges are stored sorted, each as ``(i, j)`` with ``i < j``. Construction
    fails with ``ValueError`` unless the edge set is exactly a spanning tree.
    """

    node_count: int
    edges: tuple[Edge, ...]
    _adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, node_count: int, edges: Iterable[Sequence[int]]):
        p = int(node_count)
        if p < 1:
            raise ValueError(f"node_count must be positive, got {node_count}")
        canon = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop ({i}, {j})")
            if not (1 <= i <= p and 1 <= j <= p):
                raise ValueError(f"edge ({i}, {j}) has a node outside 1..{p}")
            edge = canonical_edge(i, j)
            if edge in canon:
                raise ValueError(f"duplicate edge {edge}")
            canon.add(edge)
        if len(canon) != p - 1:
            raise ValueError(f"a tree on {p} nodes needs {p - 1} edges, got {len(canon)}")
        uf = UnionFind(range(1, p + 1))
        for i, j in canon:
            if not uf.union(i, j):
                raise ValueError(f"edge ({i}, {j}) closes a cycle")
        object.__setattr__(self, "node_count", p)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        adj: list[list[int]] = [[] for _ in range(p + 1)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "_adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def nodes(self) -> range:
        return range(1, self.node_count + 1)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return canonical_edge(i, j) in self.edge_set()

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_node(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def bfs_order(self, root: int = 1) -> list[tuple[int, int | None]]:
        """(node, parent) pairs in breadth-first order from ``root``."""
        self._check_node(root)
        order = [(root, None)]
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in self._adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    order.append((w, v))
                    queue.append(w)
        return order

    def path(self, u: int, v: int) -> list[int]:
        """Node sequence of the unique path from ``u`` to ``v`` (inclusive)."""
        self._check_node(u)
        self._check_node(v)
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for w in self._adjacency[x]:
                if w not in parent:
                    parent[w] = x
                    queue.append(w)
        nodes = [v]
        while nodes[-1] != u:
            nodes.append(parent[nodes[-1]])
        return nodes[::-1]

    def path_edges(self, u: int, v: int) -> list[Edge]:
        nodes = self.path(u, v)
        return [canonical_edge(a, b) for a, b in zip(nodes, nodes[1:])]

    def split(self, edge: Sequence[int]) -> tuple[list[int], list[int]]:
        """Components left after deleting ``edge``: (side of i, side of j)."""
        i, j = canonical_edge(*edge)
        if (i, j) not in self.edge_set():
            raise ValueError(f"{(i, j)} is not an edge of the tree")
        side = {i}
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for w in self._adjacency[x]:
                if w not in side and not (x == i and w == j):
                    side.add(w)
                    queue.append(w)
        other = [v for v in self.nodes if v not in side]
        return sorted(side), other

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def _check_node(self, v: int) -> None:
        if not 1 <= v <= self.node_count:
            raise ValueError(f"node {v} not in 1..{self.node_count}")


def chain(p: int) -> Tree:
    return Tree(p, [(k, k + 1) for k in range(1, p)])


def star(p: int, center: int = 1) -> Tree:
    return Tree(p, [(center, k) for k in range(1, p + 1) if k != center])


def prufer_decode(sequence: Sequence[int], p: int) -> Tree:
    """Decode a Prüfer sequence of length p - 2 over labels 1..p."""
    if len(sequence) != p - 2:
        raise ValueError(f"Prüfer sequence for {p} nodes must have length {p - 2}")
    degree = [1] * (p + 1)
    for s in sequence:
        if not 1 <= s <= p:
            raise ValueError(f"label {s} outside 1..{p}")
        degree[s] += 1
    edges = []
    for s in sequence:
        leaf = next(v for v in range(1, p + 1) if degree[v] == 1)
        edges.append((leaf, s))
        degree[leaf] -= 1
        degree[s] -= 1
    u, v = (k for k in range(1, p + 1) if degree[k] == 1)
    edges.append((u, v))
    return Tree(p, edges)


def all_trees(p: int) -> Iterator[Tree]:
    """Every labeled tree on p nodes (p ** (p - 2) of them)."""
    if p == 1:
        yield Tree(1, [])
        return
    if p == 2:
        yield Tree(2, [(1, 2)])
        return
    import itertools

    for seq in itertools.product(range(1, p + 1), repeat=p - 2):
        yield prufer_decode(seq, p)


def random_tree(p: int, shape: str = "uniform_random", seed: int | None = None) -> Tree:
    """Chain, star (centered at 1), or a uniformly random labeled tree.

    The uniform case decodes a Prüfer sequence drawn with
    ``numpy.random.default_rng(seed)``.
    """
    if p < 2:
        raise ValueError(f"need at least 2 nodes, got {p}")
    if shape == "chain":
        return chain(p)
    if shape == "star":
        return star(p)
    if shape == "uniform_random":
        rng = np.random.default_rng(seed)
        seq = [int(s) for s in rng.integers(1, p + 1, size=p - 2)]
        return prufer_decode(seq, p)
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")
