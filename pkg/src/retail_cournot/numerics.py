"""Small dense linear-algebra kernel.

Two routines are provided: Gaussian elimination with row pivoting and a
cyclic Jacobi eigensolver for real symmetric matrices. Both are written out
explicitly so that pivot choice, sweep order and failure thresholds are
deterministic and documented; sizes here never exceed a few hundred.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, NotSymmetricError, ShapeError, SingularMatrixError

PIVOT_THRESHOLD = 1e-12
SYMMETRY_TOLERANCE = 1e-12
MAX_SWEEPS = 50


def _as_square(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by Gaussian elimination with row pivoting.

    The pivot in each column is the entry of largest magnitude; ties go to
    the smallest row index. A pivot smaller than ``PIVOT_THRESHOLD`` times
    the largest magnitude of its original row raises SingularMatrixError.
    """
    m = _as_square(a)
    n = m.shape[0]
    rhs = np.array(b, dtype=float).reshape(-1)
    if rhs.shape[0] != n:
        raise ShapeError(f"right-hand side has length {rhs.shape[0]}, expected {n}")

    scale = np.abs(m).max(axis=1) if n else np.zeros(0)
    for k in range(n):
        # argmax returns the first maximal entry, i.e. the smallest row index
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if p != k:
            m[[k, p]] = m[[p, k]]
            rhs[[k, p]] = rhs[[p, k]]
            scale[[k, p]] = scale[[p, k]]
        pivot = m[k, k]
        if scale[k] == 0.0 or abs(pivot) < PIVOT_THRESHOLD * scale[k]:
            raise SingularMatrixError(f"matrix is singular to working precision (column {k})")
        factors = m[k + 1 :, k] / pivot
        m[k + 1 :, k:] -= np.outer(factors, m[k, k:])
        rhs[k + 1 :] -= factors * rhs[k]

    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (rhs[k] - m[k, k + 1 :] @ x[k + 1 :]) / m[k, k]
    return x


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # ascending
    sweeps: int
    residual: float  # Frobenius norm of the off-diagonal part at exit


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def symmetric_eigenvalues(a, tol: float = 1e-10) -> EigenResult:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row order. Iteration stops once
    the off-diagonal Frobenius norm is at most ``tol`` times the Frobenius
    norm of the input; by Weyl's inequality this also bounds the error of
    each returned eigenvalue.
    """
    a = _as_square(a)
    if np.any(np.abs(a - a.T) > SYMMETRY_TOLERANCE):
        raise NotSymmetricError("matrix is not symmetric within 1e-12")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    bound = tol * float(np.linalg.norm(a))

    sweeps = 0
    off = _off_norm(a)
    while off > bound:
        if sweeps == MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
        off = _off_norm(a)

    return EigenResult(eigenvalues=np.sort(np.diag(a).copy()), sweeps=sweeps, residual=off)
