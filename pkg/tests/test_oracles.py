"""Self-validation of the test-side oracles via structural invariants.

The oracles must stand on their own (they exist to cross-check the
production code), so these tests only use residuals, orthogonality,
trace sums, and tiny hand-computable cases.
"""

import math

import numpy as np
import pytest

from oracles import (
    herm_chart_to_dense,
    herm_dense_to_chart,
    jacobi_eigh_real,
    jacobi_eigvals_herm,
    sym_chart_to_dense,
    sym_dense_to_chart,
)


def _rand_sym(rng, k):
    g = rng.standard_normal((k, k))
    return (g + g.T) / 2.0


def _rand_herm(rng, k):
    g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return (g + g.conj().T) / 2.0


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_jacobi_real_invariants(k, rng):
    for _ in range(5):
        a = _rand_sym(rng, k) * rng.uniform(0.1, 50.0)
        w, v = jacobi_eigh_real(a)
        scale = np.linalg.norm(a) or 1.0
        assert np.linalg.norm(a @ v - v * w) <= 1e-10 * scale
        assert np.linalg.norm(v.T @ v - np.eye(k)) <= 1e-12
        assert abs(w.sum() - np.trace(a)) <= 1e-10 * scale
        assert np.all(np.diff(w) >= -1e-12 * scale)  # ascending


def test_jacobi_real_2x2_hand_case():
    # eigenvalues of [[2, 1], [1, 2]] are 1 and 3
    w, _ = jacobi_eigh_real(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [1.0, 3.0], atol=1e-14)


def test_jacobi_real_diagonal_passthrough():
    w, v = jacobi_eigh_real(np.diag([3.0, -1.0, 2.0]))
    assert np.allclose(w, [-1.0, 2.0, 3.0])
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_jacobi_real_rejects_nonsquare():
    with pytest.raises(ValueError):
        jacobi_eigh_real(np.zeros((2, 3)))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_jacobi_herm_invariants(k, rng):
    for _ in range(5):
        a = _rand_herm(rng, k) * rng.uniform(0.1, 50.0)
        w = jacobi_eigvals_herm(a)
        scale = np.linalg.norm(a) or 1.0
        assert w.shape == (k,)
        assert abs(w.sum() - np.trace(a).real) <= 1e-10 * scale
        # char poly check: det(a - w_i I) ~= 0 for every eigenvalue
        for wi in w:
            assert abs(np.linalg.det(a - wi * np.eye(k))) <= 1e-8 * max(scale, 1.0) ** k


def test_jacobi_herm_2x2_hand_case():
    # [[1, i], [-i, 1]] has eigenvalues 0 and 2
    a = np.array([[1.0, 1j], [-1j, 1.0]])
    assert np.allclose(jacobi_eigvals_herm(a), [0.0, 2.0], atol=1e-13)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_sym_codec_round_trip(k, rng):
    block = rng.standard_normal(k * (k + 1) // 2)
    x = sym_chart_to_dense(block, k)
    assert np.allclose(x, x.T)
    assert np.allclose(sym_dense_to_chart(x, k), block, atol=1e-15)
    # chart orthonormality: <a, b> chart dot == tr(AB)
    block2 = rng.standard_normal(k * (k + 1) // 2)
    y = sym_chart_to_dense(block2, k)
    assert math.isclose(float(block @ block2), float(np.trace(x @ y)), rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_herm_codec_round_trip(k, rng):
    block = rng.standard_normal(k * k)
    a = herm_chart_to_dense(block, k)
    assert np.allclose(a, a.conj().T)
    assert np.allclose(herm_dense_to_chart(a, k), block, atol=1e-15)
    block2 = rng.standard_normal(k * k)
    b = herm_chart_to_dense(block2, k)
    assert math.isclose(
        float(block @ block2), float(np.trace(a @ b).real), rel_tol=1e-12, abs_tol=1e-12
    )
