"""Independent checks of the steady-state pipeline.

* :func:`integrate_covariance` relaxes ``dV/dt = A V + V A^T + D`` with a
  fixed-step classical Runge-Kutta scheme until it is stationary.
* :func:`brute_force_eta` gets the smallest partially transposed symplectic
  eigenvalue from the spectrum of ``i Omega V~``.
* :func:`routh_hurwitz_stable` decides stability from the characteristic
  polynomial with a Routh array.
"""

from dataclasses import dataclass

import numpy as np

from .entanglement import symplectic_form
from .errors import NoConvergenceError

__all__ = [
    "IntegrationSpec",
    "default_spec",
    "integrate_covariance",
    "integrate_lyapunov_flow",
    "brute_force_eta",
    "characteristic_polynomial",
    "routh_array",
    "routh_hurwitz_stable",
]


@dataclass(frozen=True)
class IntegrationSpec:
    """Fixed-step settings, in units of ``1 / KAPPA_REF``."""

    dt: float = 1e-3
    t_max: float = 1e3
    tol: float = 1e-8

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if not self.t_max > self.dt:
            raise ValueError("t_max must exceed dt")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")


def default_spec(max_real_eig, dt=1e-3, tol=1e-8):
    """Horizon of 50 slowest-decay times for a stable drift matrix."""
    if not max_real_eig < 0:
        raise ValueError("default_spec needs a stable system (max_real_eig < 0)")
    return IntegrationSpec(dt=dt, t_max=max(50.0 / abs(max_real_eig), 2 * dt), tol=tol)


def _flow(a, at, d, v):
    return a @ v + v @ at + d


def integrate_lyapunov_flow(a, d, spec, v0=None):
    """RK4 relaxation of ``dV/dt = A V + V A^T + D``.

    Works on a single ``(n, n)`` problem or a stack ``(..., n, n)``; a stack
    keeps stepping until every member is stationary.

    Returns
    -------
    v : ndarray
        Final covariance(s), symmetrized after every step.
    steps : int
        Number of RK4 steps taken.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    at = np.swapaxes(a, -1, -2)
    v = np.zeros(np.broadcast_shapes(a.shape, d.shape)) if v0 is None else np.array(v0, dtype=float)
    h = spec.dt
    n_max = int(np.ceil(spec.t_max / h))
    steps = 0
    while True:
        k1 = _flow(a, at, d, v)
        # k1 is the Lyapunov residual of the current iterate
        res = np.sqrt(np.sum(k1 * k1, axis=(-2, -1)))
        if np.all(res < spec.tol):
            return v, steps
        if steps >= n_max:
            raise NoConvergenceError(float(np.max(res)))
        k2 = _flow(a, at, d, v + 0.5 * h * k1)
        k3 = _flow(a, at, d, v + 0.5 * h * k2)
        k4 = _flow(a, at, d, v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        v = 0.5 * (v + np.swapaxes(v, -1, -2))
        steps += 1


def integrate_covariance(m, spec, v0=None):
    """Integrate the covariance flow of ``m`` (a ``SystemMatrices``) to stationarity."""
    v, _ = integrate_lyapunov_flow(m.a, m.d, spec, v0)
    return v


def brute_force_eta(b):
    """Smallest symplectic eigenvalue of the partially transposed 4x4 covariance.

    Partial transposition flips the sign of the second mode's momentum
    quadrature.
    """
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    vt = flip @ b.full() @ flip
    ev = np.linalg.eigvals(1j * symplectic_form(2) @ vt)
    return float(np.min(np.abs(ev)))


def routh_array(coeffs):
    """Routh table for a polynomial given highest power first.

    Returns the first column. A zero in the first column is replaced with a
    tiny positive epsilon, the usual perturbation trick.
    """
    c = np.asarray(coeffs, dtype=float)
    c = c / c[0]
    n = len(c)
    width = (n + 1) // 2
    rows = [np.zeros(width), np.zeros(width)]
    rows[0][: len(c[0::2])] = c[0::2]
    rows[1][: len(c[1::2])] = c[1::2]
    eps = 1e-12 * np.max(np.abs(c))
    for _ in range(n - 2):
        r1, r2 = rows[-2], rows[-1]
        if r2[0] == 0:
            r2 = r2.copy()
            r2[0] = eps
            rows[-1] = r2
        new = np.zeros(width)
        for j in range(width - 1):
            new[j] = (r2[0] * r1[j + 1] - r1[0] * r2[j + 1]) / r2[0]
        rows.append(new)
    return np.array([r[0] for r in rows])


def characteristic_polynomial(a):
    """Coefficients of ``det(s I - A)``, highest power first (Faddeev-LeVerrier).

    Avoids any eigenvalue computation so it can check the eigen-solver.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def routh_hurwitz_stable(a):
    """True iff every eigenvalue of ``a`` has negative real part (Routh test)."""
    first = routh_array(characteristic_polynomial(a))
    return bool(np.all(first > 0))
