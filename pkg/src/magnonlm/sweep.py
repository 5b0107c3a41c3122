"""Grid sweeps over physical parameters and the figure presets.

Every grid point runs the full pipeline (derive, assemble, stability,
Lyapunov solve, bipartite log-negativity) independently, so points can be
farmed out to worker processes. Rows always come back in row-major order
over the axes, whatever the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
import itertools
import math

import numpy as np

from . import __version__
from .dynamics import build_matrices, check_stability, steady_state
from .entanglement import PAIRS, all_pairs
from .errors import (
    AllUnstableError,
    EigenSolverError,
    NonPhysicalStateError,
    ParameterError,
    SingularSolveError,
    StabilityError,
)
from .params import FIELD_KEYS, G_BASE, PhysicalParams, derive
from .smallmat import EPS_STAB

__all__ = [
    "Axis",
    "SweepSpec",
    "Row",
    "SweepResult",
    "Optimum",
    "evaluate_point",
    "run_sweep",
    "best_row",
    "find_optimum",
    "optimized_sweep",
    "figure_dataset",
    "FIGURES",
    "DELTA_RANGE_HZ",
]

#: Default detuning window, per 2pi in Hz.
DELTA_RANGE_HZ = (-20e6, 20e6)
DELTA_COUNT = 401
GRID_2D_COUNT = 201
TEMPERATURE_RANGE_K = (10e-3, 2.0)
TEMPERATURE_COUNT = 100

FIGURES = ("fig2a", "fig2b", "fig3", "fig4", "fig5")

_POINT_ERRORS = (
    ParameterError,
    StabilityError,
    SingularSolveError,
    EigenSolverError,
    NonPhysicalStateError,
)


@dataclass(frozen=True)
class Axis:
    """One swept field of :class:`PhysicalParams`.

    ``start`` and ``stop`` are given in the field's config units (see
    ``FIELD_KEYS``): frequencies per 2pi in Hz, temperature in K, and so on.
    """

    field: str
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.field not in FIELD_KEYS:
            raise ValueError(f"cannot sweep {self.field!r}; choose from {sorted(FIELD_KEYS)}")
        if self.count < 2:
            raise ValueError("an axis needs count >= 2")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and not (self.start > 0 and self.stop > 0):
            raise ValueError("log axes need positive endpoints")

    @property
    def unit(self):
        return FIELD_KEYS[self.field][0]

    @property
    def values(self):
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def to_si(self, value):
        return value * FIELD_KEYS[self.field][1]


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D or 2-D grid around ``base``.

    With ``link=True`` an axis over ``delta_a`` also sets
    ``delta_b = -delta_a``; the column is then named ``delta_over_2pi_hz``.
    """

    base: PhysicalParams
    axes: tuple
    pairs: tuple = tuple(PAIRS)
    link: bool = False

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a sweep has one or two axes")
        names = [ax.field for ax in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("axes must sweep distinct fields")
        if self.link and ("delta_a" not in names or "delta_b" in names):
            raise ValueError("link needs a delta_a axis and no delta_b axis")
        unknown = set(self.pairs) - set(PAIRS)
        if unknown:
            raise ValueError(f"unknown pairs {sorted(unknown)}")

    @property
    def columns(self):
        return tuple(
            "delta_over_2pi_hz" if self.link and ax.field == "delta_a" else ax.unit
            for ax in self.axes
        )

    def points(self):
        """Grid points in row-major order, as ``(axis values, PhysicalParams)``."""
        for values in itertools.product(*(ax.values for ax in self.axes)):
            yield tuple(float(v) for v in values), self.params_at(values)

    def params_at(self, values):
        changes = {ax.field: ax.to_si(float(v)) for ax, v in zip(self.axes, values)}
        if self.link:
            changes["delta_b"] = -changes["delta_a"]
        return replace(self.base, **changes)


@dataclass(frozen=True)
class Row:
    values: tuple
    stable: bool
    max_real_eig: float
    en: dict = field(default_factory=dict)
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    columns: tuple
    rows: tuple
    pairs: tuple
    metadata: dict

    def __len__(self):
        return len(self.rows)

    def axis(self, i=0):
        return np.array([r.values[i] for r in self.rows])

    def stable(self):
        return np.array([r.stable for r in self.rows])

    def en(self, pair):
        """E_N for ``pair`` per row; NaN where no value was computed."""
        return np.array([np.nan if r.en.get(pair) is None else r.en[pair] for r in self.rows])


@dataclass(frozen=True)
class Optimum:
    point: dict
    e_n: float
    index: int


def evaluate_point(params, pairs=tuple(PAIRS), values=(), eps_stab=EPS_STAB):
    """Run the full pipeline at one parameter point; errors end up in the row."""
    max_re = math.nan
    stable = False
    try:
        m = build_matrices(derive(params), params)
        stable, max_re = check_stability(m, eps_stab)
        if not stable:
            return Row(values, False, max_re)
        results = all_pairs(steady_state(m, eps_stab, (stable, max_re)).v)
    except _POINT_ERRORS as exc:
        return Row(values, stable, max_re, error=f"{type(exc).__name__}: {exc}")
    return Row(values, True, max_re, en={p: results[p].e_n for p in pairs})


def _evaluate_task(task):
    values, params, pairs, eps_stab = task
    return evaluate_point(params, pairs, values, eps_stab)


def _map(tasks, workers):
    if workers is None or workers <= 1:
        return [_evaluate_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_task, tasks, chunksize=chunk))


def _metadata(spec, **extra):
    meta = {"derived": derive(spec.base), "spec": spec, "version": __version__}
    meta.update(extra)
    return meta


def run_sweep(spec, workers=1, eps_stab=EPS_STAB):
    """Evaluate every grid point of ``spec``.

    Parameters
    ----------
    spec : SweepSpec
    workers : int
        Number of worker processes; 1 evaluates in-process. The output does
        not depend on this value.
    eps_stab : float
        Relative stability margin.

    Returns
    -------
    SweepResult
    """
    tasks = [(values, p, spec.pairs, eps_stab) for values, p in spec.points()]
    rows = _map(tasks, workers)
    return SweepResult(spec.columns, tuple(rows), spec.pairs, _metadata(spec))


def best_row(result, pair):
    """Index of the largest E_N for ``pair``; first row-major occurrence wins ties."""
    best, best_i = -math.inf, None
    for i, row in enumerate(result.rows):
        value = row.en.get(pair)
        if row.stable and value is not None and value > best:
            best, best_i = value, i
    if best_i is None:
        raise AllUnstableError(f"no stable point with a value for {pair}")
    return best_i


def find_optimum(spec, pair, workers=1):
    """Grid point maximizing E_N for ``pair``.

    ``spec`` may be a :class:`SweepSpec` (it is run first) or an existing
    :class:`SweepResult`.
    """
    result = spec if isinstance(spec, SweepResult) else run_sweep(spec, workers)
    i = best_row(result, pair)
    row = result.rows[i]
    return Optimum(point=dict(zip(result.columns, row.values)), e_n=row.en[pair], index=i)


def optimized_sweep(outer, inner, pair="light_microwave", workers=1):
    """Sweep ``outer`` and, at each value, keep the best point of ``inner``.

    Parameters
    ----------
    outer : Axis
    inner : SweepSpec
        One-axis spec re-optimized at every outer value.
    pair : str
        Bipartition whose E_N is maximized.

    Returns
    -------
    SweepResult
        One row per outer value, with columns ``(outer, inner optimum)``.
        Outer values without any stable inner point come back unstable with
        the inner value set to NaN.
    """
    if len(inner.axes) != 1:
        raise ValueError("inner sweep must have exactly one axis")
    full = SweepSpec(inner.base, (outer,) + inner.axes, inner.pairs, inner.link)
    grid = run_sweep(full, workers)
    n_inner = inner.axes[0].count
    rows = []
    for k, value in enumerate(outer.values):
        chunk = SweepResult(grid.columns, grid.rows[k * n_inner:(k + 1) * n_inner], grid.pairs, {})
        try:
            best = chunk.rows[best_row(chunk, pair)]
            rows.append(replace(best, values=(float(value), best.values[1])))
        except AllUnstableError:
            worst = max(r.max_real_eig for r in chunk.rows)
            rows.append(Row((float(value), math.nan), False, worst))
    return SweepResult(full.columns, tuple(rows), full.pairs, _metadata(full, optimized_pair=pair))


# Figure presets -----------------------------------------------------------


def _delta_axis(count=DELTA_COUNT):
    return Axis("delta_a", *DELTA_RANGE_HZ, count)


def _linked(base):
    return SweepSpec(base, (_delta_axis(),), link=True)


def _fig2a(base, workers):
    base = replace(base, Q_optical=2e7, delta_m=0.0)
    spec = SweepSpec(
        base,
        (
            Axis("delta_a", *DELTA_RANGE_HZ, GRID_2D_COUNT),
            Axis("delta_b", *DELTA_RANGE_HZ, GRID_2D_COUNT),
        ),
    )
    return {"fig2a": run_sweep(spec, workers)}


def _fig2b(base, workers):
    out = {}
    for dm in (0.0, 2.0, 5.0):
        b = replace(base, Q_optical=5e7, delta_m=2 * math.pi * dm * 1e6)
        out[f"fig2b_delta_m_{dm:g}mhz"] = run_sweep(_linked(b), workers)
    return out


def _fig3(base, workers):
    out = {}
    for q in (5e6, 1e7, 5e7):
        b = replace(base, Q_optical=q, delta_m=0.0)
        out[f"fig3_q_{q:.0e}".replace("+0", "")] = run_sweep(_linked(b), workers)
    return out


G_FAMILY = (1, 2, 4, 8)


def _fig4(base, workers):
    out = {}
    for k in G_FAMILY:
        b = replace(base, Q_optical=5e7, delta_m=0.0, g_mb=k * G_BASE)
        out[f"fig4_gmb_{k}x"] = run_sweep(_linked(b), workers)
    return out


def _fig5(base, workers):
    out = {}
    outer = Axis("temperature", *TEMPERATURE_RANGE_K, TEMPERATURE_COUNT, scale="log")
    for k in G_FAMILY:
        b = replace(base, Q_optical=5e7, delta_m=0.0, g_mb=k * G_BASE)
        out[f"fig5_gmb_{k}x"] = optimized_sweep(outer, _linked(b), "light_microwave", workers)
    return out


_PRESETS = {"fig2a": _fig2a, "fig2b": _fig2b, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def figure_dataset(which, workers=1, base=None):
    """Datasets behind one figure, as ``{curve name: SweepResult}``.

    ``base`` defaults to the baseline :class:`PhysicalParams`; each preset
    overrides Q, the magnon detuning and (for fig4/fig5) g_mb itself.
    """
    if which not in _PRESETS:
        raise ValueError(f"unknown figure {which!r}; expected one of {FIGURES}")
    return _PRESETS[which](base or PhysicalParams(), workers)
