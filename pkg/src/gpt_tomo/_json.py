"""Conversion of results to deterministic JSON-ready values."""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from typing import Any

import numpy as np

DIGITS = 12


def _float(x: float) -> float:
    x = round(float(x), DIGITS)
    return 0.0 if x == 0 else x


def jsonable(obj: Any) -> Any:
    """Recursively turn arrays, numpy scalars and tuples into JSON values.

    Floats are rounded to ``DIGITS`` decimals so that the last bits of
    floating-point noise do not leak into the output.
    """
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True)
