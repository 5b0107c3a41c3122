"""Flat ``key = value`` configuration files.

Format: one ``key = value`` per line, ``#`` starts a comment, SI units.
Frequencies are entered per 2pi in Hz under ``*_over_2pi_hz`` keys, e.g.
``kappa_m_over_2pi_hz = 1.0e6``. Missing keys fall back to the baseline
parameters; unknown keys are rejected.

``delta_over_2pi_hz = D`` is shorthand for ``delta_a = D, delta_b = -D``.
"""

from dataclasses import dataclass, field, fields
import math

from .errors import ParameterError
from .params import FIELD_KEYS, MATERIAL_KEYS, MaterialParams, PhysicalParams
from .smallmat import EPS_STAB
from .sweep import DELTA_COUNT, DELTA_RANGE_HZ, Axis, SweepSpec

__all__ = ["ConfigError", "Config", "SweepOptions", "parse_config", "load_config", "emit_config"]

_SIGNED_KEYS = {FIELD_KEYS[f][0] for f in ("delta_m", "delta_a", "delta_b")}


class ConfigError(ValueError):
    """Malformed or out-of-range configuration."""


@dataclass(frozen=True)
class SweepOptions:
    key: str = FIELD_KEYS["delta_a"][0]
    start: float = DELTA_RANGE_HZ[0]
    stop: float = DELTA_RANGE_HZ[1]
    count: int = DELTA_COUNT
    scale: str = "linear"
    link: bool = True
    key2: str = ""
    start2: float = DELTA_RANGE_HZ[0]
    stop2: float = DELTA_RANGE_HZ[1]
    count2: int = DELTA_COUNT
    scale2: str = "linear"


_SWEEP_KEYS = {
    "sweep_key": "key",
    "sweep_start": "start",
    "sweep_stop": "stop",
    "sweep_count": "count",
    "sweep_scale": "scale",
    "sweep_link": "link",
    "sweep2_key": "key2",
    "sweep2_start": "start2",
    "sweep2_stop": "stop2",
    "sweep2_count": "count2",
    "sweep2_scale": "scale2",
}

_KEY_TO_FIELD = {key: name for name, (key, _) in FIELD_KEYS.items()}
_MAT_KEYS = {key: (name, factor) for name, (key, factor) in MATERIAL_KEYS.items()}
_FIELD_KEYS = {key: (name, factor) for name, (key, factor) in FIELD_KEYS.items()}


def _baseline_values():
    p = PhysicalParams()
    values = {key: getattr(p.material, name) / f for key, (name, f) in _MAT_KEYS.items()}
    values.update({key: getattr(p, name) / f for key, (name, f) in _FIELD_KEYS.items()})
    return values


#: Baseline parameter values in config units.
BASELINE = _baseline_values()


def _build_params(values):
    material = MaterialParams(**{name: values[key] * f for key, (name, f) in _MAT_KEYS.items()})
    return PhysicalParams(
        material=material, **{name: values[key] * f for key, (name, f) in _FIELD_KEYS.items()}
    )


@dataclass(frozen=True)
class Config:
    """Parsed configuration.

    ``values`` holds every physical parameter in config units (the numbers
    written in the file), which keeps ``emit``/``parse`` exact.
    """

    values: dict = field(default_factory=lambda: dict(BASELINE))
    eps_stab: float = EPS_STAB
    output_dir: str = "out"
    sweep: SweepOptions = field(default_factory=SweepOptions)

    @property
    def params(self):
        return _build_params(self.values)

    def sweep_spec(self):
        """The :class:`SweepSpec` described by the ``sweep_*`` keys."""
        s = self.sweep
        try:
            axes = [Axis(_field_for(s.key), s.start, s.stop, s.count, s.scale)]
            if s.key2:
                axes.append(Axis(_field_for(s.key2), s.start2, s.stop2, s.count2, s.scale2))
            return SweepSpec(self.params, tuple(axes), link=s.link)
        except ValueError as exc:
            raise ConfigError(f"invalid sweep: {exc}") from exc


def _field_for(key):
    if key not in _KEY_TO_FIELD:
        raise ConfigError(f"sweep key {key!r} is not a parameter key")
    return _KEY_TO_FIELD[key]


def _float(key, text):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite")
    return value


def _bool(key, text):
    lowered = text.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {text!r}")


def _int(key, text):
    value = _float(key, text)
    if value != int(value):
        raise ConfigError(f"{key}: expected an integer, got {text!r}")
    return int(value)


def _pairs(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        yield key, value


def parse_config(text):
    """Parse configuration text into a :class:`Config`."""
    seen = {}
    for key, value in _pairs(text):
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}")
        seen[key] = value

    values, sweep, options = dict(BASELINE), {}, {}
    for key, text_value in seen.items():
        if key in _MAT_KEYS or key in _FIELD_KEYS:
            value = _float(key, text_value)
            if key not in _SIGNED_KEYS and value < 0:
                raise ConfigError(f"{key} must be >= 0, got {text_value}")
            values[key] = value
        elif key == "delta_over_2pi_hz":
            if {"delta_a_over_2pi_hz", "delta_b_over_2pi_hz"} & seen.keys():
                raise ConfigError("delta_over_2pi_hz conflicts with explicit delta_a/delta_b keys")
            delta = _float(key, text_value)
            values["delta_a_over_2pi_hz"], values["delta_b_over_2pi_hz"] = delta, -delta
        elif key in _SWEEP_KEYS:
            attr = _SWEEP_KEYS[key]
            if attr in ("key", "key2", "scale", "scale2"):
                sweep[attr] = text_value
            elif attr == "link":
                sweep[attr] = _bool(key, text_value)
            elif attr in ("count", "count2"):
                sweep[attr] = _int(key, text_value)
            else:
                sweep[attr] = _float(key, text_value)
        elif key == "eps_stab":
            options["eps_stab"] = _float(key, text_value)
            if options["eps_stab"] <= 0:
                raise ConfigError("eps_stab must be > 0")
        elif key == "output_dir":
            options["output_dir"] = text_value
        else:
            raise ConfigError(f"unknown key {key!r}")

    try:
        _build_params(values)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return Config(values=values, sweep=SweepOptions(**sweep), **options)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(config):
    """Serialize ``config`` so that ``parse_config(emit_config(c)) == c``."""
    lines = [f"{key} = {_fmt(float(config.values[key]))}" for key in BASELINE]
    lines.append(f"eps_stab = {_fmt(config.eps_stab)}")
    lines.append(f"output_dir = {config.output_dir}")
    attr_to_key = {attr: key for key, attr in _SWEEP_KEYS.items()}
    for f in fields(SweepOptions):
        value = getattr(config.sweep, f.name)
        if f.name == "key2" and not value:
            continue
        lines.append(f"{attr_to_key[f.name]} = {_fmt(value)}")
    return "\n".join(lines) + "\n"
