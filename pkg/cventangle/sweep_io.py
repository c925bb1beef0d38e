"""CSV output and key=value sweep files.

CSV cells are written with a fixed 10 significant digit format and "true"/"false"
booleans so the bytes depend only on the values, never on the locale.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Optional, TextIO

from dotenv import dotenv_values

from .errors import DomainError
from .schemas import PurificationReport, SweepAxis, SweepRow, SweepSpec

SWEEP_HEADER = ("axis1", "axis2", "entropy_bits", "converged", "trace_rel_err")
SCAN_HEADER = ("a", "b", "e_initial", "e_swapped", "gain", "converged")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{float(value):.10g}"


def _write(rows: Iterable[tuple], header: tuple[str, ...], out: str | Path | TextIO) -> None:
    if isinstance(out, (str, Path)):
        with Path(out).open("w", encoding="utf-8", newline="") as f:
            _write(rows, header, f)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def write_csv(rows: Iterable[SweepRow], out: str | Path | TextIO) -> None:
    _write(((r.axis1, r.axis2, r.entropy_bits, r.converged, r.trace_rel_err) for r in rows), SWEEP_HEADER, out)


def write_scan_csv(reports: Iterable[PurificationReport], out: str | Path | TextIO) -> None:
    _write(
        ((r.outcome.a, r.outcome.b, r.e_initial, r.e_swapped, r.gain, r.converged) for r in reports),
        SCAN_HEADER,
        out,
    )


def csv_text(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


# -------- key=value sweep files
def _to_float(s: str | None) -> Optional[float]:
    s = (s or "").strip().replace(",", ".")
    if not s:
        return None
    try:
        return float(s)
    except ValueError:
        raise DomainError(f"not a number: {s!r}") from None


def _to_int(s: str | None) -> Optional[int]:
    v = _to_float(s)
    if v is None:
        return None
    if v != int(v):
        raise DomainError(f"not an integer: {s!r}")
    return int(v)


_VALUE_TYPES = {"float": _to_float, "int": _to_int, "str": lambda s: (s or "").strip() or None}

# key -> value_type
CONFIG_KEYS = {
    "family": "str",
    "axis1": "str",
    "axis1_min": "float",
    "axis1_max": "float",
    "axis1_steps": "int",
    "axis2": "str",
    "axis2_min": "float",
    "axis2_max": "float",
    "axis2_steps": "int",
    "tolerance_sigfigs": "int",
}
FIXED_PREFIX = "fixed_"


def _axis(values: dict, prefix: str) -> SweepAxis | None:
    name = values.get(prefix)
    if name is None:
        return None
    steps = values.get(f"{prefix}_steps")
    return SweepAxis(
        name=name,
        min=values.get(f"{prefix}_min"),
        max=values.get(f"{prefix}_max"),
        **({"steps": steps} if steps is not None else {}),
    )


def read_sweep_config(path: str | Path) -> SweepSpec:
    """Parse a key=value sweep file.

    family=cat
    axis1=d
    axis1_min=0.2
    axis1_max=2.5
    axis1_steps=24
    fixed_phase=0
    """
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"sweep config not found: {path}")
    raw = dotenv_values(path)
    typed: dict[str, object] = {}
    fixed: dict[str, float] = {}
    for key, value in raw.items():
        key = key.strip().lower()
        if key.startswith(FIXED_PREFIX):
            v = _to_float(value)
            if v is not None:
                fixed[key[len(FIXED_PREFIX) :]] = v
        elif key in CONFIG_KEYS:
            typed[key] = _VALUE_TYPES[CONFIG_KEYS[key]](value)
        else:
            raise DomainError(f"unknown key {key!r} in {path}")
    if not typed.get("family") or not typed.get("axis1"):
        raise DomainError(f"{path}: 'family' and 'axis1' are required")
    spec = {
        "family": typed["family"],
        "axis1": _axis(typed, "axis1"),
        "axis2": _axis(typed, "axis2"),
        "fixed": fixed,
    }
    if typed.get("tolerance_sigfigs") is not None:
        spec["tolerance_sigfigs"] = typed["tolerance_sigfigs"]
    return SweepSpec(**spec)
