"""Dense kernels for the small real matrices of the model (at most 6x6).

Matrices are plain ``float64`` numpy arrays. The Lyapunov solver uses the
vectorized form ``(A (x) I + I (x) A) vec(V) = -vec(D)``, a 36x36 linear
system at the sizes used here, followed by iterative refinement.
"""

import math
import warnings

import numpy as np
import scipy.linalg as sla

from .errors import EigenSolverError, SingularSolveError, StabilityError

__all__ = [
    "as_mat",
    "eigen_real_parts",
    "stability_margin",
    "lyapunov_solve",
    "lyapunov_residual",
    "det",
    "frobenius_norm",
    "EPS_STAB",
]

#: Relative stability margin, scaled by the largest |entry| of the drift matrix.
EPS_STAB = 1e-9

_RESIDUAL_TARGET = 1e-10
_MAX_REFINE = 4


def as_mat(a, shape=None):
    """Return ``a`` as a finite float64 2-D array, optionally checking its shape."""
    m = np.array(a, dtype=np.float64, ndmin=2)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if shape is not None and m.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _square(a):
    m = as_mat(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got {m.shape}")
    return m


def eigen_real_parts(a):
    """Real parts of all eigenvalues of a square matrix (with multiplicity)."""
    m = _square(a)
    try:
        return np.linalg.eigvals(m).real
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc


def stability_margin(a, eps=EPS_STAB):
    """Threshold below which an eigenvalue real part counts as stable."""
    return eps * float(np.max(np.abs(a)))


def frobenius_norm(a):
    m = as_mat(a)
    return float(np.sqrt(np.sum(m * m)))


def lyapunov_residual(a, v, d):
    """``A V + V A^T + D`` for arrays of compatible shape."""
    return a @ v + v @ np.swapaxes(a, -1, -2) + d


def lyapunov_operator(a):
    """Matrix of ``V -> A V + V A^T`` acting on row-major ``vec(V)``.

    ``vec(A V) = (A (x) I) vec(V)`` and ``vec(V A^T) = (I (x) A) vec(V)``.
    """
    n = a.shape[0]
    eye = np.eye(n)
    k = a[:, None, :, None] * eye[None, :, None, :] + eye[:, None, :, None] * a[None, :, None, :]
    return k.reshape(n * n, n * n)


def lyapunov_solve(a, d, eps_stab=EPS_STAB, max_real_eig=None):
    """Solve ``A V + V A^T = -D`` for symmetric ``V``.

    Parameters
    ----------
    a : (n, n) array_like
        Stable drift matrix.
    d : (n, n) array_like
        Symmetric (positive semidefinite) diffusion matrix.
    eps_stab : float
        Relative stability margin; see :func:`stability_margin`.
    max_real_eig : float, optional
        Largest eigenvalue real part of ``a`` if the caller already has it.

    Returns
    -------
    v : (n, n) ndarray
        Exactly symmetric solution.

    Raises
    ------
    StabilityError
        If some eigenvalue of ``a`` has real part ``>= -eps_stab * max|a|``.
    SingularSolveError
        If the vectorized system cannot be solved reliably.
    """
    a = _square(a)
    n = a.shape[0]
    d = as_mat(d, (n, n))
    max_re = float(np.max(eigen_real_parts(a))) if max_real_eig is None else max_real_eig
    if max_re >= -stability_margin(a, eps_stab):
        raise StabilityError(max_re)

    k = lyapunov_operator(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu = sla.lu_factor(k, check_finite=False)
    pivots = np.abs(np.diag(lu[0]))
    if pivots.min() <= np.finfo(float).eps * pivots.max() * k.shape[0]:
        raise SingularSolveError("Lyapunov operator is numerically singular")

    rhs = -d.reshape(-1)
    x = sla.lu_solve(lu, rhs, check_finite=False)
    d_norm = frobenius_norm(d)
    scale = d_norm if d_norm > 0 else 1.0
    for _ in range(_MAX_REFINE):
        r = rhs - k @ x
        if np.sqrt(r @ r) <= 0.1 * _RESIDUAL_TARGET * scale:
            break
        x = x + sla.lu_solve(lu, r, check_finite=False)

    v = x.reshape(n, n)
    v = 0.5 * (v + v.T)
    if not np.all(np.isfinite(v)):
        raise SingularSolveError("non-finite Lyapunov solution")
    return v


def _det2(a, b, c, d):
    return a * d - b * c


def det(a):
    """Determinant of a 1x1 to 4x4 matrix by cofactor expansion."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    n = m.shape[0]
    if not 1 <= n <= 4:
        raise ValueError(f"det supports sizes 1 to 4, got {n}")
    x = m.tolist()
    if not all(math.isfinite(v) for row in x for v in row):
        raise ValueError("matrix has non-finite entries")
    if n == 1:
        return x[0][0]
    if n == 2:
        return _det2(x[0][0], x[0][1], x[1][0], x[1][1])
    if n == 3:
        (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = x
        return a0 * _det2(b1, b2, c1, c2) - a1 * _det2(b0, b2, c0, c2) + a2 * _det2(b0, b1, c0, c1)
    # Laplace expansion in complementary 2x2 minors of rows (0, 1) and (2, 3)
    (a0, a1, a2, a3), (b0, b1, b2, b3), (c0, c1, c2, c3), (d0, d1, d2, d3) = x
    return (
        _det2(a0, a1, b0, b1) * _det2(c2, c3, d2, d3)
        - _det2(a0, a2, b0, b2) * _det2(c1, c3, d1, d3)
        + _det2(a0, a3, b0, b3) * _det2(c1, c2, d1, d2)
        + _det2(a1, a2, b1, b2) * _det2(c0, c3, d0, d3)
        - _det2(a1, a3, b1, b3) * _det2(c0, c2, d0, d2)
        + _det2(a2, a3, b2, b3) * _det2(c0, c1, d0, d1)
    )
