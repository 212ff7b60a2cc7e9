"""Delimited/JSON output helpers shared by the library and the CLI."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def _format(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real:.12e}{x.imag:+.12e}j"
    return f"{float(x):.12e}"


def write_csv(path, columns, rows, meta: dict | None = None) -> Path:
    """Write a CSV file with optional ``# key = value`` header comments."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    if meta:
        for key, value in meta.items():
            lines.append(f"# {key} = {value}")
    lines.append(",".join(columns))
    for row in np.atleast_2d(np.asarray(rows, dtype=object)):
        lines.append(",".join(_format(x) for x in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    def default(obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (np.floating, np.integer)):
            return obj.item()
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        raise TypeError(f"cannot serialize {type(obj)}")

    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=default) + "\n")
    return path
