import numpy as np
import pytest
from hypothesis import given, strategies as st

from infothresh.information import binary_joint, binary_mi, entropy, kl_divergence, mutual_information

from conftest import generic_mi

# (rho, bits), each checked against the generic H(A) + H(B) - H(A, B) oracle below
BINARY_MI = [
    (0.5, 0.18872187554086717),
    (0.9, 0.7136030428840436),
    (0.4, 0.11870910076930731),
    (0.8, 0.5310044064107188),
    (0.2, 0.029049405545331333),
]


@pytest.mark.parametrize("rho,bits", BINARY_MI)
def test_binary_mi_values(rho, bits):
    assert binary_mi(rho) == pytest.approx(bits, abs=1e-14)
    assert generic_mi(binary_joint(rho)) == pytest.approx(bits, abs=1e-14)
    assert mutual_information(binary_joint(rho)) == pytest.approx(bits, abs=1e-14)


def test_binary_mi_edges():
    assert binary_mi(0.0) == 0.0
    assert binary_mi(1.0) == pytest.approx(1.0)
    assert binary_mi(-0.5) == binary_mi(0.5)
    arr = binary_mi(np.array([0.0, 0.5, 1.0]))
    assert arr.shape == (3,)


@given(st.floats(-0.999, 0.999))
def test_binary_mi_matches_generic(rho):
    assert binary_mi(rho) == pytest.approx(generic_mi(binary_joint(rho)), abs=1e-12)


def test_entropy_values():
    assert entropy([1, 0, 0]) == 0
    assert entropy([0.25] * 4) == pytest.approx(2.0)
    assert entropy([0.375, 0.125, 0.125, 0.375]) == pytest.approx(1.811278124459133, abs=1e-14)
    assert entropy([0.5, 0.5], base=np.e) == pytest.approx(np.log(2))


def test_kl():
    p = np.array([0.5, 0.5])
    assert kl_divergence(p, p) == 0
    assert kl_divergence([1, 0], [0.5, 0.5]) == pytest.approx(np.log(2))
    assert kl_divergence([0.5, 0.5], [1, 0]) == float("inf")
    with pytest.raises(ValueError):
        kl_divergence([1.0], [0.5, 0.5])


def test_binary_joint_rejects_out_of_range():
    with pytest.raises(ValueError):
        binary_joint(1.5)
