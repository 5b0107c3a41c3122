"""Linearized quadrature dynamics: drift and diffusion matrices, steady state.

Rates are expressed in units of ``KAPPA_REF = 2 pi x 1 MHz`` so that all
matrix entries are O(1)-O(10). Covariances are dimensionless and need no
rescaling.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import StabilityError
from .smallmat import (
    EPS_STAB,
    eigen_real_parts,
    frobenius_norm,
    lyapunov_residual,
    lyapunov_solve,
    stability_margin,
)

__all__ = [
    "KAPPA_REF",
    "BASIS",
    "SystemMatrices",
    "SteadyState",
    "drift_matrix",
    "build_matrices",
    "check_stability",
    "steady_state",
]

KAPPA_REF = 2.0 * math.pi * 1e6

BASIS = ("X_m", "Y_m", "X_a", "Y_a", "X_b", "Y_b")


@dataclass(frozen=True)
class SystemMatrices:
    a: np.ndarray
    d: np.ndarray
    basis: tuple = BASIS


@dataclass(frozen=True)
class SteadyState:
    v: np.ndarray | None
    stable: bool
    max_real_eig: float
    residual: float


def drift_matrix(kappa_m, kappa_a, kappa_b, delta_m, delta_a, delta_b, G_ma, g_mb):
    """Drift matrix of the quadrature Langevin equations ``du/dt = A u + n``.

    The optomagnonic term is a two-mode squeezer between magnon and light;
    the electromagnonic term is a beam splitter between magnon and microwave.
    """
    return np.array(
        [
            [-kappa_m, delta_m, 0.0, -G_ma, 0.0, g_mb],
            [-delta_m, -kappa_m, -G_ma, 0.0, -g_mb, 0.0],
            [0.0, -G_ma, -kappa_a, delta_a, 0.0, 0.0],
            [-G_ma, 0.0, -delta_a, -kappa_a, 0.0, 0.0],
            [0.0, g_mb, 0.0, 0.0, -kappa_b, delta_b],
            [-g_mb, 0.0, 0.0, 0.0, -delta_b, -kappa_b],
        ]
    )


def build_matrices(dp, p):
    """Assemble ``A`` and ``D`` in units of ``KAPPA_REF``."""
    s = 1.0 / KAPPA_REF
    a = drift_matrix(
        p.kappa_m * s,
        dp.kappa_a * s,
        p.kappa_b * s,
        p.delta_m * s,
        p.delta_a * s,
        p.delta_b * s,
        dp.G_ma * s,
        p.g_mb * s,
    )
    d = np.diag(
        np.repeat(
            [
                p.kappa_m * s * (2.0 * dp.N_m + 1.0),
                dp.kappa_a * s * (2.0 * dp.N_a + 1.0),
                p.kappa_b * s * (2.0 * dp.N_b + 1.0),
            ],
            2,
        )
    )
    return SystemMatrices(a=a, d=d)


def check_stability(m, eps_stab=EPS_STAB):
    """Return ``(stable, max_real_eig)`` for the drift matrix of ``m``.

    Stable means every eigenvalue has real part below ``-eps_stab * max|A|``,
    which is the eigenvalue form of the Routh-Hurwitz condition.
    """
    max_re = float(np.max(eigen_real_parts(m.a)))
    return max_re < -stability_margin(m.a, eps_stab), max_re


def steady_state(m, eps_stab=EPS_STAB, stability=None):
    """Stationary covariance matrix from ``A V + V A^T = -D``.

    ``stability`` may carry a ``check_stability`` result to avoid
    recomputing the spectrum.

    Raises
    ------
    StabilityError
        If the drift matrix is not stable; carries ``max_real_eig``.
    """
    stable, max_re = check_stability(m, eps_stab) if stability is None else stability
    if not stable:
        raise StabilityError(max_re)
    v = lyapunov_solve(m.a, m.d, eps_stab, max_real_eig=max_re)
    d_norm = frobenius_norm(m.d)
    residual = frobenius_norm(lyapunov_residual(m.a, v, m.d)) / (d_norm if d_norm > 0 else 1.0)
    return SteadyState(v=v, stable=True, max_real_eig=max_re, residual=residual)
