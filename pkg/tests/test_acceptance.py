"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through the ``criterion`` fixture (printed
in the terminal summary) and then asserts. Tolerances are the contract values;
none are loosened here.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from magnonlm.dynamics import build_matrices, steady_state
from magnonlm.entanglement import log_negativity, uncertainty_min_eig
from magnonlm.oracle import IntegrationSpec, brute_force_eta, integrate_lyapunov_flow
from magnonlm.output import write_csv
from magnonlm.params import G_BASE, PhysicalParams, derive
from magnonlm.smallmat import lyapunov_residual, lyapunov_solve
from magnonlm.sweep import (
    Axis,
    DELTA_COUNT,
    DELTA_RANGE_HZ,
    G_FAMILY,
    SweepSpec,
    best_row,
    evaluate_point,
    figure_dataset,
    find_optimum,
)

from conftest import as_bipartite, random_physical_cov, random_psd, random_stable, two_mode_squeezed

pytestmark = pytest.mark.slow

MHZ = 2 * math.pi * 1e6
LM = "light_microwave"
_CACHE = {}


def dataset(name):
    if name not in _CACHE:
        _CACHE[name] = figure_dataset(name)
    return _CACHE[name]


def peak(result, pair=LM):
    return result.rows[best_row(result, pair)].en[pair]


def linked_spec(base, count=DELTA_COUNT):
    return SweepSpec(base, (Axis("delta_a", *DELTA_RANGE_HZ, count),), link=True)


def csv_bytes(result, tmp_path, tag):
    path = tmp_path / f"{tag}.csv"
    write_csv(result, path)
    return path.read_bytes()


def test_criterion_01_peak_entanglement(criterion):
    base = PhysicalParams()
    spec = linked_spec(base)
    t0 = time.perf_counter()
    evaluate_point(spec.params_at((8e6,)))
    t_point = time.perf_counter() - t0
    t0 = time.perf_counter()
    opt = find_optimum(spec, LM)
    t_sweep = time.perf_counter() - t0
    ok = 0.1 <= opt.e_n <= 0.35 and t_point < 1.0 and t_sweep < 10.0
    criterion(
        1,
        ok,
        f"peak E_N = {opt.e_n:.4f} at delta/2pi = {opt.point['delta_over_2pi_hz'] / 1e6:.1f} MHz "
        f"(band [0.1, 0.35]); point {t_point * 1e3:.1f} ms, 401-point sweep {t_sweep:.2f} s",
    )
    assert ok


def test_criterion_02_detuning_optimum_structure(criterion):
    res = dataset("fig2a")["fig2a"]
    row = res.rows[best_row(res, LM)]
    da, db = row.values
    ratio = abs(abs(da) - abs(db)) / abs(da) if da else math.inf
    opposite = da * db < 0
    ok = opposite and ratio < 0.25
    criterion(
        2,
        ok,
        f"argmax (delta_a, delta_b)/2pi = ({da / 1e6:.1f}, {db / 1e6:.1f}) MHz, E_N = {row.en[LM]:.4f}; "
        f"opposite signs: {opposite}; ||da|-|db||/|da| = {ratio:.3f} (limit 0.25)",
    )
    assert ok


def test_criterion_03_magnon_detuning_shift(criterion):
    data = dataset("fig2b")
    ref = np.nan_to_num(data["fig2b_delta_m_0mhz"].en(LM))
    moved = np.nan_to_num(data["fig2b_delta_m_2mhz"].en(LM))
    scale = ref.max()
    n = len(ref)
    best_err, best_shift = math.inf, 0
    # rigid shift by whole grid steps; compare where both curves are defined
    for s in range(-n // 4, n // 4 + 1):
        if s >= 0:
            a, b = ref[: n - s], moved[s:]
        else:
            a, b = ref[-s:], moved[: n + s]
        err = np.max(np.abs(a - b)) / scale
        if err < best_err:
            best_err, best_shift = err, s
    step = (DELTA_RANGE_HZ[1] - DELTA_RANGE_HZ[0]) / (n - 1)
    ok = best_err <= 0.05
    criterion(
        3,
        ok,
        f"best shift {best_shift * step / 1e6:+.1f} MHz, max pointwise deviation "
        f"{100 * best_err:.2e} % of peak (limit 5 %)",
    )
    assert ok


def test_criterion_04_monotone_q(criterion):
    data = dataset("fig3")
    peaks = [peak(data[name]) for name in ("fig3_q_5e6", "fig3_q_1e7", "fig3_q_5e7")]
    ok = peaks[0] < peaks[1] < peaks[2]
    criterion(4, ok, "peak E_N for Q = 5e6, 1e7, 5e7: " + ", ".join(f"{p:.4f}" for p in peaks))
    assert ok


def test_criterion_05_entanglement_structure(criterion):
    data = dataset("fig4")
    mm_max = 0.0
    for res in data.values():
        for row in res.rows:
            if row.stable:
                mm_max = max(mm_max, row.en["microwave_magnon"])
    lm = {k: peak(data[f"fig4_gmb_{k}x"]) for k in G_FAMILY}
    la = {k: peak(data[f"fig4_gmb_{k}x"], "light_magnon") for k in G_FAMILY}
    ok = mm_max == 0.0 and la[4] < la[1] and lm[4] > lm[1] and lm[8] < lm[4]
    criterion(
        5,
        ok,
        f"max microwave-magnon E_N {mm_max:g}; light-magnon peak 1x {la[1]:.4f} -> 4x {la[4]:.4f}; "
        f"light-microwave peak 1x {lm[1]:.4f}, 4x {lm[4]:.4f}, 8x {lm[8]:.4f}",
    )
    assert ok


def test_criterion_06_instability_window(criterion):
    res = dataset("fig4")["fig4_gmb_1x"]
    delta = res.axis(0)
    unstable = np.flatnonzero(~res.stable())
    centre = int(np.argmin(np.abs(delta)))
    contiguous = unstable.size > 0 and np.array_equal(unstable, np.arange(unstable[0], unstable[-1] + 1))
    ok = contiguous and unstable[0] <= centre <= unstable[-1] and 0 < unstable[0] and unstable[-1] < len(res) - 1
    span = (delta[unstable[0]] / 1e6, delta[unstable[-1]] / 1e6) if unstable.size else (math.nan, math.nan)
    criterion(
        6,
        ok,
        f"{unstable.size} unstable points, contiguous: {contiguous}, "
        f"delta/2pi in [{span[0]:.1f}, {span[1]:.1f}] MHz",
    )
    assert ok


def _drop_temperature(res):
    temps, en = res.axis(0), np.nan_to_num(res.en(LM))
    below = np.flatnonzero(en < 0.1 * en[0])
    return temps[below[0]] if below.size else math.inf


def test_criterion_07_thermal_robustness(criterion):
    base = replace(PhysicalParams(), g_mb=G_FAMILY[-1] * G_BASE, temperature=1.2)
    en_hot = find_optimum(linked_spec(base), LM).e_n
    data = dataset("fig5")
    drops = [_drop_temperature(data[f"fig5_gmb_{k}x"]) for k in G_FAMILY]
    monotone = all(a <= b for a, b in zip(drops, drops[1:]))
    ok = en_hot > 0 and monotone
    criterion(
        7,
        ok,
        f"8x g_base at 1.2 K: E_N = {en_hot:.5f}; 10 %-drop temperatures "
        + ", ".join(f"{k}x {t:.3f} K" for k, t in zip(G_FAMILY, drops)),
    )
    assert ok


def test_criterion_08_lyapunov_correctness(criterion):
    rng = np.random.default_rng(8)
    n = 1000
    a = np.stack([random_stable(rng) for _ in range(n)])
    d = np.stack([random_psd(rng) for _ in range(n)])
    v = np.stack([lyapunov_solve(a[k], d[k]) for k in range(n)])
    fro = lambda x: np.linalg.norm(x, axis=(-2, -1))  # noqa: E731
    res = fro(lyapunov_residual(a, v, d)) / fro(d)
    v_flow, _ = integrate_lyapunov_flow(a, d, IntegrationSpec(dt=1e-2, t_max=2e3, tol=1e-10))
    agree = fro(v - v_flow) / fro(v)
    ok = res.max() <= 1e-10 and agree.max() <= 1e-6
    criterion(
        8,
        ok,
        f"{n} instances: max relative residual {res.max():.2e} (limit 1e-10), "
        f"max oracle disagreement {agree.max():.2e} (limit 1e-6)",
    )
    assert ok


def test_criterion_09_entanglement_formula(criterion):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(500):
        b = as_bipartite(random_physical_cov(rng))
        worst = max(worst, abs(log_negativity(b).eta_minus - brute_force_eta(b)))
    tmsv = {r: abs(log_negativity(two_mode_squeezed(r)).e_n - 2 * r) for r in (0.1, 0.5, 1.0)}
    ok = worst < 1e-8 and max(tmsv.values()) < 1e-9
    criterion(
        9,
        ok,
        f"500 covariances: max |eta formula - oracle| {worst:.2e} (limit 1e-8); "
        f"TMSV max |E_N - 2r| {max(tmsv.values()):.2e} (limit 1e-9)",
    )
    assert ok


def _preset_points():
    """Stable preset points, fig5 on every tenth temperature."""
    for name in ("fig2a", "fig2b", "fig3", "fig4"):
        for res in dataset(name).values():
            spec = res.metadata["spec"]
            for (_, p), row in zip(spec.points(), res.rows):
                if row.stable:
                    yield p
    for res in dataset("fig5").values():
        spec = res.metadata["spec"]
        inner = spec.axes[1].count
        for k, (_, p) in enumerate(spec.points()):
            if (k // inner) % 10 == 0:
                yield p


def test_criterion_10_physicality(criterion):
    worst_unc, worst_diag, count = math.inf, math.inf, 0
    for p in _preset_points():
        m = build_matrices(derive(p), p)
        try:
            v = steady_state(m).v
        except ArithmeticError:
            continue
        count += 1
        worst_unc = min(worst_unc, uncertainty_min_eig(v))
        worst_diag = min(worst_diag, float(np.diag(v).min()))
    ok = count > 0 and worst_unc >= -1e-8 and worst_diag >= 0.5 - 1e-9
    criterion(
        10,
        ok,
        f"{count} stable preset points: min eig(V + i Omega/2) {worst_unc:.2e} (limit -1e-8), "
        f"min diagonal {worst_diag:.12f} (limit 1/2 - 1e-9)",
    )
    assert ok


def test_criterion_11_determinism(criterion, tmp_path):
    mismatches = []
    for name in ("fig2a", "fig2b", "fig3", "fig4", "fig5"):
        serial = dataset(name)
        parallel = figure_dataset(name, workers=2)
        again = figure_dataset(name) if name in ("fig2b", "fig3", "fig4") else {}
        for curve, res in serial.items():
            ref = csv_bytes(res, tmp_path, f"{curve}_w1")
            if csv_bytes(parallel[curve], tmp_path, f"{curve}_w2") != ref:
                mismatches.append(f"{curve} (workers 2)")
            if curve in again and csv_bytes(again[curve], tmp_path, f"{curve}_rerun") != ref:
                mismatches.append(f"{curve} (rerun)")
    ok = not mismatches
    criterion(
        11,
        ok,
        "all preset CSVs byte-identical across reruns and workers 1/2"
        if ok
        else "mismatch: " + ", ".join(mismatches),
    )
    assert ok
