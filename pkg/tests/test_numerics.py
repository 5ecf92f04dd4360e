import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from retail_cournot import (
    ConvergenceError,
    NotSymmetricError,
    SingularMatrixError,
    nash_duopoly_closed_form,
    solve_linear,
    symmetric_eigenvalues,
)
from retail_cournot.model import foc_system
from retail_cournot import numerics


def test_identity_solve_returns_rhs():
    b = np.array([3.0, -1.5, 7.25, 0.0])
    np.testing.assert_array_equal(solve_linear(np.eye(4), b), b)


def test_diagonal_solve():
    np.testing.assert_allclose(solve_linear([[2, 0], [0, 4]], [2, 8]), [1, 2], rtol=0, atol=1e-15)


def test_foc_system_matches_closed_form(reference):
    config = reference(0.2)
    matrix, rhs = foc_system(config)
    x = solve_linear(matrix, rhs).reshape(config.shape)
    np.testing.assert_allclose(x, nash_duopoly_closed_form(config), rtol=1e-9)
    assert x[0, 0] == pytest.approx(11500 / 231, rel=1e-12)


def test_pivoting_handles_zero_leading_entry():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(solve_linear(a, [2.0, 3.0]), [3.0, 2.0])


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrixError):
        solve_linear([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0])
    with pytest.raises(SingularMatrixError):
        solve_linear(np.zeros((3, 3)), np.ones(3))


def test_pivot_threshold_is_relative_to_row_scale():
    # well conditioned but tiny entries: must not be flagged singular
    a = 1e-20 * np.array([[3.0, 1.0], [1.0, 2.0]])
    x = solve_linear(a, a @ np.array([1.0, -1.0]))
    np.testing.assert_allclose(x, [1.0, -1.0], rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_residual_bound(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + n * np.eye(n)
    b = rng.normal(size=n) * 100
    x = solve_linear(a, b)
    assert np.max(np.abs(a @ x - b)) <= 1e-9 * (1 + np.max(np.abs(b)))


def test_identity_eigenvalues():
    result = symmetric_eigenvalues(np.eye(4))
    np.testing.assert_array_equal(result.eigenvalues, np.ones(4))
    assert result.sweeps == 0


def test_two_by_two_duopoly_jacobian():
    result = symmetric_eigenvalues([[0, -0.5], [-0.5, 0]])
    np.testing.assert_allclose(result.eigenvalues, [-0.5, 0.5], atol=1e-15)


def test_reference_jacobian_spectrum():
    from retail_cournot import build_jacobian, reference_config

    result = symmetric_eigenvalues(build_jacobian(reference_config(0.2)))
    np.testing.assert_allclose(result.eigenvalues, [-0.75, -0.25, -0.25, 1 / 12, 7 / 12, 7 / 12], atol=1e-12)
    assert result.residual <= 1e-10 * np.linalg.norm(build_jacobian(reference_config(0.2)))


def test_not_symmetric_rejected():
    with pytest.raises(NotSymmetricError):
        symmetric_eigenvalues([[1.0, 2.0], [2.0 + 1e-9, 1.0]])


def test_sweep_budget(monkeypatch):
    monkeypatch.setattr(numerics, "MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        symmetric_eigenvalues([[1.0, 2.0], [2.0, 1.0]])


def _random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) * rng.choice([1e-3, 1.0, 1e3])
    return a + a.T


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_eigenvalues_against_numpy(n, seed):
    a = _random_symmetric(n, seed)
    ours = symmetric_eigenvalues(a).eigenvalues
    scale = max(1.0, np.linalg.norm(a))
    np.testing.assert_allclose(ours, np.linalg.eigvalsh(a), rtol=0, atol=1e-9 * scale)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_permutation_similarity_invariance(n, seed):
    a = _random_symmetric(n, seed)
    perm = np.random.default_rng(seed + 1).permutation(n)
    p = np.eye(n)[perm]
    scale = max(1.0, np.linalg.norm(a))
    np.testing.assert_allclose(
        symmetric_eigenvalues(p.T @ a @ p).eigenvalues,
        symmetric_eigenvalues(a).eigenvalues,
        rtol=0,
        atol=1e-9 * scale,
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_trace_and_determinant(n, seed):
    a = _random_symmetric(n, seed)
    values = symmetric_eigenvalues(a).eigenvalues
    scale = max(1.0, np.linalg.norm(a))
    assert abs(values.sum() - np.trace(a)) <= 1e-9 * scale * n
    for lam in values:
        # a near-zero determinant of (A - lam I), measured against the matrix scale
        det = np.linalg.det((a - lam * np.eye(n)) / scale)
        assert abs(det) <= 1e-6
