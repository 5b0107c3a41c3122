import numpy as np
import pytest
from scipy.linalg import expm

from magnonlm.entanglement import BipartiteCov, symplectic_form

_CRITERIA = []


def random_stable(rng, n=6, margin=(0.3, 1.5)):
    """Random dense matrix shifted so its spectral abscissa is ``-margin``."""
    m = rng.normal(size=(n, n))
    shift = np.max(np.linalg.eigvals(m).real) + rng.uniform(*margin)
    return m - shift * np.eye(n)


def random_psd(rng, n=6):
    b = rng.normal(size=(n, n))
    return b @ b.T / n


def random_symplectic(rng, n_modes, scale=0.6):
    h = rng.normal(scale=scale, size=(2 * n_modes, 2 * n_modes))
    return expm(symplectic_form(n_modes) @ (h + h.T) / 2)


def random_physical_cov(rng, n_modes=2):
    """``S diag(nu) S^T`` with symplectic ``S`` and thermal ``nu >= 1/2``."""
    s = random_symplectic(rng, n_modes)
    nu = np.repeat(0.5 + rng.exponential(0.8, size=n_modes), 2)
    return s @ np.diag(nu) @ s.T


def two_mode_squeezed(r):
    c, s = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    return BipartiteCov(
        v1=c * np.eye(2), v2=c * np.eye(2), v3=s * np.diag([1.0, -1.0]), pair="light_microwave"
    )


def as_bipartite(v4, pair="light_microwave"):
    return BipartiteCov(v1=v4[:2, :2], v2=v4[2:, 2:], v3=v4[:2, 2:], pair=pair)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome for the end-of-run summary."""

    def record(number, passed, detail):
        _CRITERIA.append((number, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
