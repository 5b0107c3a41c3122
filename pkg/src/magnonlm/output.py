"""Writers for sweep tables and run manifests.

CSV files use 12 significant digits, ``.`` as decimal separator and LF line
endings so repeated runs are byte-identical. Unstable rows leave the
entanglement columns empty.
"""

import csv
from dataclasses import dataclass, field, fields
from datetime import datetime, timezone
import json
import math

from . import __version__
from .config import emit_config

__all__ = [
    "EN_COLUMNS",
    "header",
    "format_number",
    "write_csv",
    "write_jsonl",
    "RunManifest",
    "write_manifest",
]

#: Entanglement columns, in fixed order.
EN_COLUMNS = (
    ("en_light_microwave", "light_microwave"),
    ("en_light_magnon", "light_magnon"),
    ("en_microwave_magnon", "microwave_magnon"),
)


def format_number(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.12g}"


def header(result):
    return list(result.columns) + ["stable", "max_real_eig"] + [c for c, _ in EN_COLUMNS]


def _record(row):
    values = [format_number(v) for v in row.values]
    values.append("1" if row.stable else "0")
    values.append(format_number(row.max_real_eig))
    values.extend(format_number(row.en.get(pair)) for _, pair in EN_COLUMNS)
    return values


def write_csv(result, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header(result))
        for row in result.rows:
            writer.writerow(_record(row))


def _json_number(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return float(f"{x:.12g}")


def write_jsonl(result, path):
    names = header(result)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in result.rows:
            numbers = [_json_number(v) for v in row.values]
            numbers += [row.stable, _json_number(row.max_real_eig)]
            numbers += [_json_number(row.en.get(pair)) for _, pair in EN_COLUMNS]
            record = dict(zip(names, numbers))
            record["error"] = row.error
            fh.write(json.dumps(record, sort_keys=False) + "\n")


@dataclass
class RunManifest:
    """Everything needed to reproduce a run.

    Written as the run's config followed by ``#:``-prefixed metadata lines,
    so the file itself parses back as the config.
    """

    config: object
    command: str
    derived: object = None
    summary: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def render(self):
        lines = [emit_config(self.config).rstrip("\n")]
        lines.append(f"#: tool_version = {self.version}")
        lines.append(f"#: timestamp = {self.timestamp}")
        lines.append(f"#: command = {self.command}")
        if self.derived is not None:
            for f in fields(self.derived):
                lines.append(f"#: derived.{f.name} = {getattr(self.derived, f.name)!r}")
        for key, value in self.summary.items():
            lines.append(f"#: summary.{key} = {value}")
        return "\n".join(lines) + "\n"


def write_manifest(manifest, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(manifest.render())
