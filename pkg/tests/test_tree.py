import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from infothresh.tree import Tree, UnionFind, all_trees, chain, prufer_decode, random_tree, star


def test_union_find_basics():
    uf = UnionFind(range(5))
    assert uf.union(0, 1)
    assert uf.union(1, 2)
    assert not uf.union(0, 2)
    assert uf.connected(0, 2)
    assert not uf.connected(0, 3)
    assert uf.find(99) == 99


def test_random_tree_chain_and_star():
    assert random_tree(3, "chain", 0).edges == ((1, 2), (2, 3))
    assert random_tree(4, "star", 0).edges == ((1, 2), (1, 3), (1, 4))


def test_random_tree_is_deterministic():
    a = random_tree(6, "uniform_random", 42)
    b = random_tree(6, "uniform_random", 42)
    assert a == b
    assert len(a.edges) == 5
    assert nx.is_tree(a.to_networkx())


def test_random_tree_rejects_small_p():
    with pytest.raises(ValueError):
        random_tree(1, "chain", 0)
    with pytest.raises(ValueError):
        random_tree(4, "cycle", 0)


def test_tree_validation():
    with pytest.raises(ValueError):
        Tree(3, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Tree(4, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(ValueError):
        Tree(3, [(1, 1), (2, 3)])
    with pytest.raises(ValueError):
        Tree(3, [(1, 2)])
    assert Tree(3, [(3, 2), (2, 1)]).edges == ((1, 2), (2, 3))


def test_cayley_count():
    for p in range(2, 7):
        trees = {t.edges for t in all_trees(p)}
        assert len(trees) == p ** (p - 2)


def test_paths_and_split():
    t = Tree(6, [(1, 2), (2, 3), (2, 4), (4, 5), (4, 6)])
    assert t.path(3, 6) == [3, 2, 4, 6]
    assert t.path_edges(6, 3) == [(4, 6), (2, 4), (2, 3)]
    assert t.split((2, 4)) == ([1, 2, 3], [4, 5, 6])
    assert t.neighbors(2) == (1, 3, 4)
    order = t.bfs_order(1)
    assert order[0] == (1, None)
    assert {v for v, _ in order} == set(range(1, 7))


@given(st.lists(st.integers(1, 9), min_size=7, max_size=7))
def test_prufer_decode_matches_networkx(seq):
    ours = prufer_decode(seq, 9)
    ref = nx.from_prufer_sequence([s - 1 for s in seq])
    assert ours.edge_set() == {tuple(sorted((a + 1, b + 1))) for a, b in ref.edges}


@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_random_tree_paths_agree_with_networkx(p, seed):
    t = random_tree(p, "uniform_random", seed)
    g = t.to_networkx()
    for u, v in itertools.combinations(t.nodes, 2):
        assert t.path(u, v) == nx.shortest_path(g, u, v)


def test_chain_star_helpers():
    assert chain(2).edges == ((1, 2),)
    assert star(4, center=2).edges == ((1, 2), (2, 3), (2, 4))
