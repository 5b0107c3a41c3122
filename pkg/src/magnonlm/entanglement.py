"""Bipartite reduction of the three-mode covariance matrix and log-negativity.

Quadrature ordering is ``(X_m, Y_m, X_a, Y_a, X_b, Y_b)`` with vacuum
variance 1/2, so a bipartition is entangled when the smallest symplectic
eigenvalue of its partial transpose drops below 1/2.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import NonPhysicalStateError
from .smallmat import as_mat, det

__all__ = [
    "MODES",
    "PAIRS",
    "BipartiteCov",
    "EntanglementResult",
    "reduce",
    "log_negativity",
    "all_pairs",
    "symplectic_form",
    "uncertainty_min_eig",
]

MODES = {"magnon": 0, "light": 1, "microwave": 2}

#: Bipartition label -> (first mode, second mode). Order matches ``all_pairs``.
PAIRS = {
    "light_magnon": ("light", "magnon"),
    "light_microwave": ("light", "microwave"),
    "microwave_magnon": ("microwave", "magnon"),
}

_DISC_TOL = 1e-9


@dataclass(frozen=True)
class BipartiteCov:
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    pair: str

    def full(self):
        """The assembled 4x4 covariance ``[[v1, v3], [v3^T, v2]]``."""
        out = np.empty((4, 4))
        out[:2, :2] = self.v1
        out[:2, 2:] = self.v3
        out[2:, :2] = self.v3.T
        out[2:, 2:] = self.v2
        return out


@dataclass(frozen=True)
class EntanglementResult:
    e_n: float
    eta_minus: float


def _block(mode):
    i = 2 * MODES[mode]
    return slice(i, i + 2)


def reduce(v, pair):
    """Keep the rows and columns of the two modes in ``pair``."""
    if pair not in PAIRS:
        raise ValueError(f"unknown pair {pair!r}; expected one of {sorted(PAIRS)}")
    v = as_mat(v, (6, 6))
    first, second = (_block(m) for m in PAIRS[pair])
    return BipartiteCov(
        v1=v[first, first].copy(),
        v2=v[second, second].copy(),
        v3=v[first, second].copy(),
        pair=pair,
    )


def _cross_trace(b):
    """``tr(v1 J v3 J v2 J v3^T J)`` with ``J = [[0, 1], [-1, 0]]``."""
    # J M J = -adj(M)^T for any 2x2 M
    c = b.v3
    adj_t = np.array([[c[1, 1], -c[1, 0]], [-c[0, 1], c[0, 0]]])
    return float(np.trace(b.v1 @ adj_t @ b.v2 @ adj_t.T))


def log_negativity(b):
    """Logarithmic negativity of a two-mode Gaussian state.

    Uses the closed form for the smallest partially transposed symplectic
    eigenvalue::

        sigma = det V1 + det V2 - 2 det V3
        eta   = sqrt((sigma - sqrt(sigma**2 - 4 det V)) / 2)
        E_N   = max(0, -ln(2 eta))

    ``det V`` is expanded as ``det V1 det V2 + det V3**2 - t`` with
    ``t = tr(V1 J V3 J V2 J V3^T J)``, which lets the discriminant be written
    without the cancellation of ``sigma**2 - 4 det V``; ``eta**2`` is then
    evaluated as ``2 det V / (sigma + sqrt(disc))``. Both are algebraically
    identical to the formula above.

    Rounding noise that pushes the discriminant slightly negative is clamped
    to zero; anything beyond ``1e-9`` (relative to ``sigma**2`` when that
    exceeds 1) is rejected as unphysical, as is ``det V <= 0``.
    """
    d1, d2, d3 = det(b.v1), det(b.v2), det(b.v3)
    t = _cross_trace(b)
    sigma = d1 + d2 - 2.0 * d3
    det_full = d1 * d2 + d3 * d3 - t
    disc = (d1 - d2) ** 2 - 4.0 * d3 * (d1 + d2) + 4.0 * t
    if disc < 0:
        if disc < -_DISC_TOL * max(1.0, sigma * sigma):
            raise NonPhysicalStateError(f"negative discriminant {disc:.3g} for pair {b.pair}")
        disc = 0.0
    outer = sigma + math.sqrt(disc)
    if det_full <= 0 or outer <= 0:
        # a zero symplectic eigenvalue would mean infinite E_N
        raise NonPhysicalStateError(f"non-positive radicand for pair {b.pair}")
    eta = math.sqrt(2.0 * det_full / outer)
    return EntanglementResult(e_n=max(0.0, -math.log(2.0 * eta)), eta_minus=eta)


def all_pairs(v):
    """Log-negativity for light-magnon, light-microwave and microwave-magnon."""
    return {pair: log_negativity(reduce(v, pair)) for pair in PAIRS}


def symplectic_form(n_modes):
    """Block-diagonal ``[[0, 1], [-1, 0]]`` for each mode."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def uncertainty_min_eig(v):
    """Smallest eigenvalue of the Hermitian matrix ``V + (i/2) Omega``.

    Non-negative for every physical covariance matrix.
    """
    v = np.asarray(v, dtype=float)
    omega = symplectic_form(v.shape[0] // 2)
    return float(np.linalg.eigvalsh(v + 0.5j * omega).min())
