import math

import numpy as np
import pytest

from magnonlm.dynamics import SystemMatrices
from magnonlm.errors import NoConvergenceError
from magnonlm.oracle import (
    IntegrationSpec,
    brute_force_eta,
    characteristic_polynomial,
    default_spec,
    integrate_covariance,
    integrate_lyapunov_flow,
    routh_array,
    routh_hurwitz_stable,
)
from magnonlm.smallmat import lyapunov_solve

from conftest import as_bipartite, random_stable, two_mode_squeezed

RELAX = SystemMatrices(a=-np.eye(6), d=2 * np.eye(6))


def test_spec_validation():
    with pytest.raises(ValueError):
        IntegrationSpec(dt=0.0)
    with pytest.raises(ValueError):
        IntegrationSpec(dt=1.0, t_max=0.5)
    with pytest.raises(ValueError):
        IntegrationSpec(tol=0.0)
    with pytest.raises(ValueError):
        default_spec(0.1)
    assert default_spec(-0.5).t_max == 100.0


def test_scalar_relaxation_converges():
    v = integrate_covariance(RELAX, IntegrationSpec(dt=1e-2, t_max=50, tol=1e-10))
    np.testing.assert_allclose(v, np.eye(6), atol=1e-10)


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 2.0])
def test_scalar_relaxation_transient(t):
    # V(t) = (1 - exp(-2t)) I, so the residual 2 I - 2 V is 2 sqrt(6) exp(-2t)
    spec = IntegrationSpec(dt=1e-3, t_max=t + 1e-9, tol=1e-300)
    with pytest.raises(NoConvergenceError) as info:
        integrate_covariance(RELAX, spec)
    assert info.value.residual == pytest.approx(2 * math.sqrt(6) * math.exp(-2 * t), rel=0.05)


def test_residual_decay_rate():
    # residual of the decoupled flow decays as exp(-2 kappa_min t)
    kappas = np.array([0.7, 0.7, 1.3, 1.3, 2.0, 2.0])
    a, d = -np.diag(kappas), np.diag(2 * kappas)
    res = []
    for t in (4.0, 6.0):
        spec = IntegrationSpec(dt=1e-3, t_max=t + 1e-12, tol=1e-300)
        with pytest.raises(NoConvergenceError) as info:
            integrate_lyapunov_flow(a, d, spec)
        res.append(info.value.residual)
    assert res[1] / res[0] == pytest.approx(math.exp(-2 * 0.7 * 2.0), rel=0.05)


def test_fixed_point_takes_no_steps(rng):
    a = random_stable(rng)
    d = np.eye(6)
    v0 = lyapunov_solve(a, d)
    v, steps = integrate_lyapunov_flow(a, d, IntegrationSpec(tol=1e-8), v0=v0)
    assert steps == 0
    assert np.array_equal(v, v0)


def test_no_convergence():
    with pytest.raises(NoConvergenceError) as info:
        integrate_covariance(RELAX, IntegrationSpec(dt=1e-2, t_max=0.5, tol=1e-8))
    assert info.value.residual > 1e-8


def test_integration_stays_symmetric_psd(rng):
    a = random_stable(rng)
    d = np.diag(rng.uniform(0.5, 2, 6))
    v, _ = integrate_lyapunov_flow(a, d, IntegrationSpec(dt=1e-2, t_max=200, tol=1e-10))
    assert np.array_equal(v, v.T)
    assert np.linalg.eigvalsh(v).min() >= -1e-9


def test_batched_matches_single(rng):
    a = np.stack([random_stable(rng) for _ in range(3)])
    d = np.stack([np.eye(6)] * 3)
    spec = IntegrationSpec(dt=1e-2, t_max=300, tol=1e-10)
    vb, _ = integrate_lyapunov_flow(a, d, spec)
    for k in range(3):
        vs, _ = integrate_lyapunov_flow(a[k], d[k], spec)
        np.testing.assert_allclose(vb[k], vs, atol=1e-10)


def test_brute_force_eta_examples():
    assert brute_force_eta(as_bipartite(np.eye(4) / 2)) == pytest.approx(0.5, abs=1e-15)
    assert brute_force_eta(two_mode_squeezed(0.5)) == pytest.approx(math.exp(-1) / 2, rel=1e-12)
    assert math.exp(-1) / 2 == pytest.approx(0.18394, abs=1e-5)


def test_characteristic_polynomial(rng):
    for _ in range(10):
        a = rng.normal(size=(6, 6))
        roots = np.roots(characteristic_polynomial(a))
        np.testing.assert_allclose(np.sort_complex(roots), np.sort_complex(np.linalg.eigvals(a)), atol=1e-7)


def test_routh_array_known_polynomials():
    # (s+1)(s+2)(s+3) = s^3 + 6 s^2 + 11 s + 6
    assert np.all(routh_array([1, 6, 11, 6]) > 0)
    # s^3 + s^2 + 2 s + 8 has two right-half-plane roots: two sign changes
    col = routh_array([1, 1, 2, 8])
    assert np.count_nonzero(np.diff(np.sign(col))) == 2


def test_routh_hurwitz_stable(rng):
    assert routh_hurwitz_stable(-np.eye(6))
    assert not routh_hurwitz_stable(np.diag([-1.0, -1, -1, -1, -1, 0.1]))
    for _ in range(30):
        a = random_stable(rng, margin=(0.05, 1.0))
        assert routh_hurwitz_stable(a)
        assert not routh_hurwitz_stable(a + 1.2 * np.eye(6))
