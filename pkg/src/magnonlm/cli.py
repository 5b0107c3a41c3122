"""Command-line entry point.

Subcommands: ``point``, ``sweep``, ``figure <name>``, ``validate``.

Exit codes: 0 success, 1 internal error, 2 configuration error, 3 unstable
parameter point, 4 output not writable, 5 validation failure.
"""

import argparse
import json
import os
import sys

from .config import Config, ConfigError, load_config
from .dynamics import build_matrices, check_stability, steady_state
from .entanglement import PAIRS, all_pairs, log_negativity, reduce
from .errors import AllUnstableError, NoConvergenceError, ParameterError, StabilityError
from .oracle import brute_force_eta, default_spec, integrate_covariance
from .output import RunManifest, write_csv, write_jsonl, write_manifest
from .params import derive
from .smallmat import frobenius_norm
from .sweep import FIGURES, best_row, figure_dataset, run_sweep

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_OUTPUT = 4
EXIT_VALIDATION = 5

VALIDATE_V_TOL = 1e-6
VALIDATE_ETA_TOL = 1e-8

FIGURE_NOTES = {
    "fig2a": "Light-microwave E_N over the (delta_a, delta_b) plane, delta_m = 0, Q = 2e7.",
    "fig2b": "Light-microwave E_N versus linked delta = delta_a = -delta_b, "
    "one file per magnon detuning delta_m/2pi in {0, 2, 5} MHz, Q = 5e7.",
    "fig3": "Light-microwave E_N versus linked delta, one file per optical Q in {5e6, 1e7, 5e7}.",
    "fig4": "Light-magnon (en_light_magnon) and light-microwave (en_light_microwave) E_N "
    "versus linked delta, one file per g_mb in {1, 2, 4, 8} x 2pi x 3.4 MHz, Q = 5e7.",
    "fig5": "Delta-optimized light-microwave E_N versus temperature, one file per g_mb "
    "in {1, 2, 4, 8} x 2pi x 3.4 MHz; delta_over_2pi_hz is the optimizing detuning.",
}


class _OutputError(Exception):
    pass


def _add_common(p):
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--out", help="output directory (overrides output_dir)")
    p.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magnonlm",
        description="Stationary light-microwave entanglement via a magnon mode.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("point", help="steady state and E_N at one parameter point"))
    _add_common(sub.add_parser("sweep", help="grid sweep described by the sweep_* keys"))
    fig = sub.add_parser("figure", help="write a figure preset dataset")
    fig.add_argument("name", choices=FIGURES)
    _add_common(fig)
    _add_common(sub.add_parser("validate", help="cross-check against the time-integration oracle"))
    return parser


def _out_dir(args, config):
    path = args.out or config.output_dir
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise _OutputError(f"cannot create output directory {path}: {exc}") from exc
    if not os.access(path, os.W_OK):
        raise _OutputError(f"output directory {path} is not writable")
    return path


def _write(fn, *args):
    try:
        fn(*args)
    except OSError as exc:
        raise _OutputError(str(exc)) from exc


def _ext(fmt):
    return "csv" if fmt == "csv" else "jsonl"


def _write_result(result, path, fmt):
    _write(write_csv if fmt == "csv" else write_jsonl, result, path)


def cmd_point(args, config):
    params = config.params
    dp = derive(params)
    m = build_matrices(dp, params)
    stable, max_re = check_stability(m, config.eps_stab)
    report = {
        "derived": {k: float(v) for k, v in vars(dp).items()},
        "stable": stable,
        "max_real_eig": max_re,
    }
    summary = {"stable": stable, "max_real_eig": repr(max_re)}
    if stable:
        results = all_pairs(steady_state(m, config.eps_stab, (stable, max_re)).v)
        report["en"] = {pair: r.e_n for pair, r in results.items()}
        summary.update({f"en_{pair}": repr(r.e_n) for pair, r in results.items()})

    if args.format == "json-lines":
        print(json.dumps(report))
    else:
        print("derived parameters:")
        for key, value in report["derived"].items():
            print(f"  {key:8s} = {value:.6g}")
        print(f"stable       : {stable}")
        print(f"max_real_eig : {max_re:.6g} (units of 2pi x 1 MHz)")
        for pair, value in report.get("en", {}).items():
            print(f"E_N {pair:17s}: {value:.6f}")

    out = _out_dir(args, config)
    manifest = RunManifest(config, "point", derived=dp, summary=summary)
    _write(write_manifest, manifest, os.path.join(out, "manifest.txt"))
    if not stable:
        print(f"unstable: max real eigenvalue {max_re:.6g}", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_sweep(args, config):
    spec = config.sweep_spec()
    out = _out_dir(args, config)
    result = run_sweep(spec, args.workers, config.eps_stab)
    path = os.path.join(out, f"sweep.{_ext(args.format)}")
    _write_result(result, path, args.format)
    summary = {"rows": len(result), "stable_rows": int(result.stable().sum())}
    try:
        row = result.rows[best_row(result, "light_microwave")]
        summary["optimum"] = " ".join(f"{c}={v:.12g}" for c, v in zip(result.columns, row.values))
        summary["optimum_en_light_microwave"] = f"{row.en['light_microwave']:.12g}"
    except AllUnstableError:
        summary["optimum"] = "none (all points unstable)"
    manifest = RunManifest(config, "sweep", derived=derive(config.params), summary=summary)
    _write(write_manifest, manifest, os.path.join(out, "manifest.txt"))
    print(f"wrote {len(result)} rows to {path}")
    for key, value in summary.items():
        print(f"  {key}: {value}")
    return EXIT_OK


def cmd_figure(args, config):
    out = _out_dir(args, config)
    data = figure_dataset(args.name, args.workers, base=config.params)
    summary = {}
    for name, result in data.items():
        path = os.path.join(out, f"{name}.{_ext(args.format)}")
        _write_result(result, path, args.format)
        summary[f"{name}.rows"] = len(result)
        try:
            row = result.rows[best_row(result, "light_microwave")]
            summary[f"{name}.peak_en_light_microwave"] = f"{row.en['light_microwave']:.12g}"
        except AllUnstableError:
            pass
        print(f"wrote {len(result)} rows to {path}")
    notes = (
        f"{args.name}: {FIGURE_NOTES[args.name]}\n"
        "Columns: swept axes (frequencies per 2pi in Hz, temperature in K), "
        "stable (1/0), max_real_eig (largest real part of the drift spectrum in "
        "units of 2pi x 1 MHz), then E_N for light-microwave, light-magnon and "
        "microwave-magnon. Unstable rows leave the E_N columns empty.\n"
    )
    _write(_write_text, os.path.join(out, f"{args.name}_README.txt"), notes)
    manifest = RunManifest(config, f"figure {args.name}", derived=derive(config.params), summary=summary)
    _write(write_manifest, manifest, os.path.join(out, "manifest.txt"))
    return EXIT_OK


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def validate(config):
    """Compare the direct Lyapunov solve with time integration.

    Returns a report dict; raises :class:`StabilityError` for unstable input.
    """
    params = config.params
    m = build_matrices(derive(params), params)
    ss = steady_state(m, config.eps_stab)
    spec = default_spec(ss.max_real_eig)
    v_int = integrate_covariance(m, spec)
    rel = frobenius_norm(ss.v - v_int) / frobenius_norm(ss.v)
    etas = {}
    for pair in PAIRS:
        b = reduce(ss.v, pair)
        etas[pair] = (log_negativity(b).eta_minus, brute_force_eta(b))
    eta_ok = all(abs(a - b) < VALIDATE_ETA_TOL for a, b in etas.values())
    return {
        "relative_difference": rel,
        "eta": etas,
        "v_direct": ss.v,
        "v_integrated": v_int,
        "passed": bool(rel < VALIDATE_V_TOL and eta_ok),
    }


def cmd_validate(args, config):
    try:
        report = validate(config)
    except NoConvergenceError as exc:
        print(f"FAIL: {exc}")
        return EXIT_VALIDATION
    if args.format == "json-lines":
        print(
            json.dumps(
                {
                    "relative_difference": report["relative_difference"],
                    "eta": {k: list(v) for k, v in report["eta"].items()},
                    "passed": report["passed"],
                }
            )
        )
    else:
        print(f"relative Frobenius difference (Lyapunov vs integration): {report['relative_difference']:.3e}")
        for pair, (formula, oracle) in report["eta"].items():
            print(f"eta_minus {pair:17s}: closed form {formula:.12f}  spectrum {oracle:.12f}")
        print("PASS" if report["passed"] else "FAIL")
    out = _out_dir(args, config)
    summary = {
        "relative_difference": f"{report['relative_difference']:.3e}",
        "passed": report["passed"],
    }
    manifest = RunManifest(config, "validate", derived=derive(config.params), summary=summary)
    _write(write_manifest, manifest, os.path.join(out, "manifest.txt"))
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


_COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "figure": cmd_figure, "validate": cmd_validate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else Config()
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args, config)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StabilityError as exc:
        print(f"unstable: max real eigenvalue {exc.max_real_eig:.6g}", file=sys.stderr)
        return EXIT_UNSTABLE
    except _OutputError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
