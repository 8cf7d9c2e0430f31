"""Deterministic JSON and CSV writers.

Floats are always written as %.12e and objects keep their field order, so two
runs of the same configuration produce byte-identical output.
"""

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, TextIO

from pydantic import BaseModel

from steklov.models.scan import CurvePoint

FLOAT_FORMAT = "%.12e"


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return FLOAT_FORMAT % x


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)

    if isinstance(obj, BaseModel):
        obj = obj.model_dump()
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, Enum):
        return json.dumps(obj.value)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, (str, Path)):
        return json.dumps(str(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if hasattr(obj, "item"):
        # numpy scalars
        return _encode(obj.item(), indent, level)
    raise TypeError(f"Cannot serialize {type(obj).__name__}")


def to_json(obj: Any, indent: int = 2) -> str:
    """Serialize dicts, lists, pydantic models, enums and scalars deterministically."""
    return _encode(obj, indent, 0) + "\n"


def write_csv(stream: TextIO, axis: str, points: Iterable[CurvePoint]) -> None:
    """Header ``<axis>,value,est_error`` followed by one row per point."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([axis, "value", "est_error"])
    for p in points:
        writer.writerow([FLOAT_FORMAT % p.x, FLOAT_FORMAT % p.value, FLOAT_FORMAT % p.est_error])
