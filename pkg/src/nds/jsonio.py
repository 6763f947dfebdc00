"""Reproducible JSON and CSV emission.

Every real number leaving the package is printed with 17 significant
digits (format spec ".17g"), enough to round-trip an IEEE double
exactly, so identical computations produce byte-identical artifacts.
The stdlib json encoder uses repr() which is shortest-round-trip, not
fixed-width, hence the small writer here.
"""

import json
import math


def format_real(v: float) -> str:
    # nan/inf never legitimately reach serialization; fail loudly
    if not math.isfinite(v):
        raise ValueError(f"non-finite real in output: {v!r}")
    return format(float(v), ".17g")


def _emit(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_emit(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj, indent: bool = True) -> str:
    """Serialize dict/list trees with 17-significant-digit reals."""
    if indent and isinstance(obj, dict):
        body = ",\n".join(f'  {json.dumps(str(k))}: {_emit(v)}' for k, v in obj.items())
        return "{\n" + body + "\n}"
    return _emit(obj)


def gap_csv_lines(records) -> "list[str]":
    """CSV rows for gap records, header included: x,lo,hi,gap."""
    lines = ["x,lo,hi,gap"]
    for rec in records:
        lines.append(
            f"{rec.x},{format_real(rec.lo)},{format_real(rec.hi)},{format_real(rec.gap)}"
        )
    return lines


def histogram_csv_lines(bin_width: float, counts) -> "list[str]":
    lines = ["bin_lo,bin_hi,count"]
    for i, c in enumerate(counts):
        lines.append(
            f"{format_real(i * bin_width)},{format_real((i + 1) * bin_width)},{int(c)}"
        )
    return lines
