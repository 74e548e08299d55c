import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from walklocal.errors import DegenerateSupport, MatrixFormatError, NotHermitian
from walklocal.spectral import (
    abs_operator,
    as_hermitian,
    matrix_exponential,
    matrix_from_json,
    matrix_to_json,
    operator_norm,
    principal_eigvec,
    principal_log,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])


@pytest.mark.parametrize("h, expected", [
    (-X, [[0, 1], [1, 0]]),
    (np.zeros((2, 2)), np.zeros((2, 2))),
    (-Y, [[0, 1], [1, 0]]),
])
def test_abs_operator(h, expected):
    np.testing.assert_array_equal(abs_operator(h), expected)


def test_principal_eigvec_pauli_x():
    p = principal_eigvec(abs_operator(X))
    assert p.norm_abs == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(p.d, [1 / math.sqrt(2)] * 2, atol=1e-12)


def test_principal_eigvec_degenerate_identity():
    p = principal_eigvec(np.eye(3))
    assert p.norm_abs == pytest.approx(1.0)
    np.testing.assert_allclose(p.d, np.ones(3) / math.sqrt(3), atol=1e-12)


def test_principal_eigvec_scalar():
    p = principal_eigvec(np.array([[2.0]]))
    assert p.norm_abs == 2.0 and p.d.tolist() == [1.0]


def test_principal_eigvec_reducible_raises():
    with pytest.raises(DegenerateSupport):
        principal_eigvec(np.diag([1.0, 2.0]))


def test_principal_eigvec_two_equal_components():
    # X (+) X: degenerate top space, positive combination exists
    a = np.kron(np.eye(2), np.abs(X))
    p = principal_eigvec(a)
    np.testing.assert_allclose(p.d, 0.5 * np.ones(4), atol=1e-12)


def test_operator_norm_examples():
    assert operator_norm(X) == pytest.approx(1.0)
    assert operator_norm(3 * np.eye(4)) == pytest.approx(3.0)
    had = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert operator_norm(had) == pytest.approx(1.0)
    assert operator_norm(abs_operator(had)) == pytest.approx(math.sqrt(2))


def test_matrix_exponential_examples():
    np.testing.assert_allclose(matrix_exponential(np.zeros((3, 3)), 1.7), np.eye(3), atol=1e-15)
    # cos(pi) I - i sin(pi) X
    np.testing.assert_allclose(matrix_exponential(X, math.pi), -np.eye(2), atol=1e-12)
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = a + a.conj().T
    np.testing.assert_allclose(matrix_exponential(h, 0.0), np.eye(4), atol=1e-12)


hermitians = st.integers(1, 8).flatmap(
    lambda n: st.integers(0, 2**32 - 1).map(lambda s: _rand_herm(n, s)))


def _rand_herm(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@settings(max_examples=60, deadline=None)
@given(hermitians, st.floats(-3, 3), st.floats(-3, 3))
def test_exponential_unitary_group_law_and_pade_agreement(h, t1, t2):
    u1, u2 = matrix_exponential(h, t1), matrix_exponential(h, t2)
    assert operator_norm(u1.conj().T @ u1 - np.eye(len(h))) <= 1e-10
    assert operator_norm(u1 @ u2 - matrix_exponential(h, t1 + t2)) <= 1e-9
    # independent Pade-based oracle
    assert operator_norm(u1 - scipy.linalg.expm(-1j * t1 * h)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(hermitians)
def test_perron_residual(h):
    a = abs_operator(h)
    try:
        p = principal_eigvec(a)
    except DegenerateSupport:
        return
    assert p.residual(a) <= 1e-10 * max(p.norm_abs, 1.0)
    assert (p.d > 0).all()


def test_principal_log_round_trip_and_branch():
    h0 = _rand_herm(4, 1)
    h0 *= 0.9 * math.pi / operator_norm(h0)
    h, phases = principal_log(matrix_exponential(h0, 1.0))
    np.testing.assert_allclose(h, h0, atol=1e-10)
    # -1 eigenvalue maps to +pi, not -pi
    _, phases = principal_log(-np.eye(2))
    np.testing.assert_allclose(phases, [math.pi, math.pi])


def test_as_hermitian_rejects():
    with pytest.raises(NotHermitian):
        as_hermitian([[0, 1], [0, 0]])
    with pytest.raises(NotHermitian):
        as_hermitian(np.zeros((2, 3)))


def test_matrix_json_round_trip_and_triplets():
    m = np.array([[0, -1j], [1j, 2]])
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(m)), m)
    t = matrix_from_json({"n": 2, "triplets": [[1, 2, 0, -1], [2, 1, 0, 1], [2, 2, 2, 0]]})
    np.testing.assert_array_equal(t, m)
    rect = np.arange(6).reshape(3, 2)
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(rect)), rect)


@pytest.mark.parametrize("doc", [
    {"n": 2, "entries": [[0, 0]]},
    {"n": 2},
    {"n": 2, "triplets": [[3, 1, 0, 0]]},
    {"entries": []},
])
def test_matrix_json_errors(doc):
    with pytest.raises(MatrixFormatError):
        matrix_from_json(doc)
