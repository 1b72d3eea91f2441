"""Flat-file emission: CSV snapshots and series, JSON reports.

Every file starts with a comment line carrying the config hash and seed so
outputs are traceable; floats are written with 17 significant digits so
re-running a command reproduces files byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .diagnostics import DiagnosticSeries
from .fields import Field


def fmt(value: float) -> str:
    return f"{value:.17g}"


def _header_line(config_hash: str, seed: int) -> str:
    return f"# config={config_hash} seed={seed}\n"


def write_field_csv(path: str | Path, field: Field, config_hash: str, seed: int):
    lines = [_header_line(config_hash, seed), "x,u\n"]
    for x, u in zip(field.domain.x, field.values):
        lines.append(f"{fmt(x)},{fmt(u)}\n")
    Path(path).write_text("".join(lines))


def write_diagnostics_csv(path: str | Path, series: DiagnosticSeries, config_hash: str, seed: int):
    lines = [_header_line(config_hash, seed), "t,mass,energy,potential,h1norm\n"]
    rows = zip(series.times, series.mass, series.energy, series.potential, series.h1_norm)
    for row in rows:
        lines.append(",".join(fmt(v) for v in row) + "\n")
    Path(path).write_text("".join(lines))


def write_series_csv(path: str | Path, columns: dict, config_hash: str, seed: int):
    names = list(columns)
    lines = [_header_line(config_hash, seed), ",".join(names) + "\n"]
    for row in zip(*columns.values()):
        lines.append(",".join(fmt(float(v)) for v in row) + "\n")
    Path(path).write_text("".join(lines))


def write_json(path: str | Path, payload: dict, config_hash: str, seed: int):
    payload = dict(payload)
    payload["config_hash"] = config_hash
    payload["seed"] = seed
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
