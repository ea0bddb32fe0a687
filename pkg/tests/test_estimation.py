import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from infothresh.estimation import EmpiricalJoint, empirical_pairwise, pairwise_mi_matrix, plugin_entropy, plugin_mi
from infothresh.information import binary_mi
from infothresh.model import BinaryCorrelationModel, sample
from infothresh.tree import chain


def test_counts_direct():
    ej = empirical_pairwise([[1, 1], [1, 1], [2, 2]], 1, 2)
    assert ej.as_dict() == {(1, 1): 2, (2, 2): 1}
    assert ej.n == 3


def test_counts_symmetry_and_exchangeability():
    rng = np.random.default_rng(0)
    x = rng.integers(1, 4, size=(200, 3))
    a = empirical_pairwise(x, 1, 3)
    b = empirical_pairwise(x[rng.permutation(200)], 1, 3)
    np.testing.assert_array_equal(a.counts, b.counts)
    np.testing.assert_array_equal(empirical_pairwise(x, 3, 1).counts, a.counts.T)


def test_declared_symbols_add_empty_cells():
    ej = empirical_pairwise([[1, 1], [1, 2]], 1, 2, symbols=(1, 2, 3))
    assert ej.counts.shape == (3, 3)
    assert plugin_mi(ej) == 0


def test_empty_dataset_rejected():
    with pytest.raises(ValueError):
        empirical_pairwise(np.zeros((0, 2), dtype=int), 1, 2)
    with pytest.raises(ValueError):
        empirical_pairwise([[1, 2]], 1, 1)


def test_plugin_entropy():
    assert plugin_entropy([1.0, 0, 0, 0]) == 0
    assert plugin_entropy([0.25] * 4) == pytest.approx(2.0)
    assert plugin_entropy([0.375, 0.125, 0.125, 0.375]) == pytest.approx(1.811278, abs=1e-6)


def test_plugin_mi_examples():
    mk = lambda c: EmpiricalJoint(np.array(c), (1, 2), (1, 2))
    assert plugin_mi(mk([[1, 1], [1, 1]])) == 0
    assert plugin_mi(mk([[2, 0], [0, 2]])) == pytest.approx(1.0)
    assert plugin_mi(mk([[3, 1], [1, 3]])) == pytest.approx(binary_mi(0.5), abs=1e-14)
    assert plugin_mi(mk([[3, 1], [1, 3]])) == pytest.approx(0.188722, abs=1e-6)


@given(arrays(np.int64, st.tuples(st.integers(1, 5), st.integers(1, 5)), elements=st.integers(0, 50)))
def test_entropy_decomposition(counts):
    if counts.sum() == 0:
        counts[0, 0] = 1
    ej = EmpiricalJoint(counts, tuple(range(counts.shape[0])), tuple(range(counts.shape[1])))
    P = ej.probabilities()
    I = plugin_mi(ej)
    assert I >= 0
    assert I == pytest.approx(plugin_entropy(P.sum(1)) + plugin_entropy(P.sum(0)) - plugin_entropy(P), abs=1e-12)


def test_pairwise_matrix_matches_pairwise_calls():
    rng = np.random.default_rng(1)
    x = np.column_stack([rng.integers(1, 4, 300), rng.integers(1, 3, 300), rng.integers(0, 1000, 300)])
    I = pairwise_mi_matrix(x)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert I[i - 1, j - 1] == pytest.approx(plugin_mi(empirical_pairwise(x, i, j)), abs=1e-12)


def test_concentration_quantile():
    m = BinaryCorrelationModel.from_correlations(chain(2), [0.5])
    truth = binary_mi(0.5)
    hits = 0
    for k in range(500):
        x = sample(m, 10**4, k)
        hits += abs(plugin_mi(empirical_pairwise(x, 1, 2)) - truth) <= 0.02
    assert hits >= 475
