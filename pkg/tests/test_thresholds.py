import itertools

import numpy as np
import pytest

from infothresh.channels import ChannelSpec
from infothresh.converse import binary_fano_family
from infothresh.information import binary_mi
from infothresh.model import BinaryCorrelationModel, validate
from infothresh.thresholds import (EV2Tuple, UndefinedThresholdError, bsc_feasibility, enumerate_ev2,
                                   erasure_feasibility, information_ratio, information_threshold,
                                   noisy_information_threshold, small_noise_approximation)
from infothresh.tree import Tree, chain, random_tree, star

from conftest import random_binary_models, random_models

FLIP_Q = [0.01, 0.3, 0.3]


def _ev2_by_definition(tree):
    out = set()
    for u, v in itertools.combinations(tree.nodes, 2):
        path = tree.path_edges(u, v)
        if len(path) >= 2:
            out.update(EV2Tuple(e, u, v) for e in path)
    return out


def test_enumerate_chain_and_star():
    assert enumerate_ev2(chain(3)) == [((1, 2), 1, 3), ((2, 3), 1, 3)]
    s = enumerate_ev2(star(4))
    assert len(s) == 6
    assert all(t.edge[0] == 1 and 1 not in (t.u, t.v) for t in s)
    assert enumerate_ev2(chain(2)) == []


def test_enumerate_matches_definition():
    rng = np.random.default_rng(0)
    for _ in range(100):
        t = random_tree(int(rng.integers(2, 10)), seed=int(rng.integers(2**31)))
        got = enumerate_ev2(t)
        assert len(got) == len(set(got))
        assert set(got) == _ev2_by_definition(t)


def test_threshold_chain_example(chain_05_08):
    rep = information_threshold(chain_05_08)
    assert rep.value == pytest.approx(0.5 * (binary_mi(0.5) - binary_mi(0.4)), abs=1e-15)
    assert rep.value == pytest.approx(0.035007, abs=1e-6)
    assert rep.argmin == ((1, 2), 1, 3)
    assert rep.value == pytest.approx(0.5 * (rep.edge_mi - rep.pair_mi))


def test_local_equals_brute_force():
    for m in random_binary_models(100, seed=1):
        assert information_threshold(m, "local").value == pytest.approx(
            information_threshold(m, "brute_force").value, abs=1e-12)
    for m in random_models(50, seed=2):
        assert information_threshold(m, "local").value == pytest.approx(
            information_threshold(m, "brute_force").value, abs=1e-12)


def test_positivity():
    for m in itertools.chain(random_models(50, seed=3), random_binary_models(50, seed=4)):
        assert validate(m).ok
        assert information_threshold(m).value > 0


def test_threshold_vanishes_along_family():
    values = [information_threshold(binary_fano_family(5, 0.6, 0.3, ell).models[0]).value
              for ell in range(0, 12)]
    assert all(v > 0 for v in values)
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-5


def test_small_tree_rejected():
    with pytest.raises(UndefinedThresholdError):
        information_threshold(BinaryCorrelationModel.from_correlations(chain(2), [0.5]))
    with pytest.raises(ValueError):
        information_threshold(BinaryCorrelationModel.from_correlations(chain(3), [0.5, 0.5]), "fast")


def test_noisy_threshold_erasure_constant():
    for m in random_models(20, seed=5):
        base = information_threshold(m).value
        for q in (0.0, 0.3, 0.9):
            assert noisy_information_threshold(m, ChannelSpec.erasure(q, m.p)).value == pytest.approx(
                (1 - q) ** 2 * base, abs=1e-12)


def test_noisy_threshold_identity_and_equal_bsc():
    for m in random_binary_models(20, seed=6):
        base = information_threshold(m).value
        assert noisy_information_threshold(m, ChannelSpec.identity(m.p)).value == pytest.approx(base, abs=1e-15)
        assert noisy_information_threshold(m, ChannelSpec.bsc(0.2, m.p)).value <= base + 1e-15


def test_noisy_threshold_negative_for_counterexample(noisy_counterexample):
    assert 0.7 > (1 - 2 * 0.3) / (1 - 2 * 0.01)
    rep = noisy_information_threshold(noisy_counterexample, ChannelSpec.bsc(FLIP_Q, 3))
    assert rep.value < 0


def test_erasure_feasibility_examples(chain_05_08):
    assert information_ratio(chain_05_08) == pytest.approx(binary_mi(0.4) / binary_mi(0.5), abs=1e-15)
    assert information_ratio(chain_05_08) == pytest.approx(0.629, abs=1e-3)
    assert erasure_feasibility(chain_05_08, 0.3)
    assert not erasure_feasibility(chain_05_08, [0.0, 0.25, 0.0])
    assert erasure_feasibility(chain_05_08, [0.0, 0.1, 0.0])


def test_erasure_feasibility_is_only_sufficient(chain_05_08):
    q = [0.0, 0.25, 0.0]
    assert not erasure_feasibility(chain_05_08, q)
    assert noisy_information_threshold(chain_05_08, ChannelSpec.erasure(q, 3)).value > 0


def test_erasure_feasibility_implies_positive_threshold():
    rng = np.random.default_rng(7)
    hits = 0
    for m in random_models(60, seed=7):
        for _ in range(5):
            q = rng.uniform(0, 0.6, m.p)
            if erasure_feasibility(m, q):
                hits += 1
                assert noisy_information_threshold(m, ChannelSpec.erasure(q, m.p)).value > 0
    assert hits > 10


def test_bsc_feasibility_examples():
    m8 = BinaryCorrelationModel.from_correlations(chain(3), [0.8, 0.5])
    assert bsc_feasibility(m8, 0.2)
    assert not bsc_feasibility(m8, [0.0, 0.3, 0.0])
    m3 = BinaryCorrelationModel.from_correlations(chain(3), [0.3, 0.2])
    assert bsc_feasibility(m3, [0.0, 0.1, 0.0])
    with pytest.raises(ValueError):
        bsc_feasibility(m3, [0.5, 0.1, 0.0])


def test_bsc_feasibility_implies_positive_threshold():
    rng = np.random.default_rng(8)
    hits = 0
    for m in random_binary_models(60, seed=8):
        for _ in range(5):
            q = rng.uniform(0, 0.3, m.p)
            if bsc_feasibility(m, q):
                hits += 1
                assert noisy_information_threshold(m, ChannelSpec.bsc(q, m.p)).value > 0
    assert hits > 10


def test_small_noise_expansion_ratio_stable():
    m = BinaryCorrelationModel.from_correlations(chain(5), [0.6, 0.5, 0.7, 0.4])
    rep = information_threshold(m)
    ratios = []
    for q in (1e-2, 5e-3, 1e-3):
        exact = noisy_information_threshold(m, ChannelSpec.mary(q, 5)).value
        ratios.append(abs(exact - small_noise_approximation(m, q, rep)) / q**2)
    assert max(ratios) / min(ratios) < 4
    assert small_noise_approximation(m, 0.0, rep) == rep.value


def test_general_tree_argmin_tie_is_lexicographic():
    m = BinaryCorrelationModel.from_correlations(star(4), [0.5] * 3)
    rep = information_threshold(m)
    assert rep.argmin == ((1, 2), 2, 3)
    t = Tree(4, [(1, 2), (2, 3), (3, 4)])
    m = BinaryCorrelationModel.from_correlations(t, [0.5] * 3)
    assert information_threshold(m, "local").argmin == information_threshold(m).argmin
