"""Stable serialization: sorted keys, floats with 17 significant digits."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, List, Mapping, Sequence


def fmt_float(v: float) -> str:
    if v is None or not math.isfinite(v):
        return "null"
    text = "%.17g" % v
    return text if any(ch in text for ch in ".e") else text + ".0"


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, Fraction):
        return json.dumps(fmt_rational(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(rows: Sequence[Mapping[str, Any]], columns: List[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        out = []
        for c in columns:
            v = row.get(c)
            if isinstance(v, float):
                out.append(fmt_float(v) if math.isfinite(v) else "")
            elif v is None:
                out.append("")
            else:
                out.append(str(v))
        w.writerow(out)
    return buf.getvalue()
