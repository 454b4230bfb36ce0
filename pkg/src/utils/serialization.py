"""
Stable Serialization
Diff-stable JSON output: fixed float precision, sorted keys, numpy-aware.
"""

import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

import numpy as np

FLOAT_DIGITS = 12


def format_float(value: float, digits: int = FLOAT_DIGITS) -> float:
    """Round a float to a fixed number of significant digits."""
    if not math.isfinite(value) or value == 0.0:
        return float(value)
    return float(f"{value:.{digits}g}")


def normalize_for_json(obj: Any, digits: int = FLOAT_DIGITS) -> Any:
    """Convert numpy values, fractions, tuples and sets into stable JSON data."""
    if isinstance(obj, dict):
        return {str(k): normalize_for_json(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize_for_json(v, digits) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [normalize_for_json(v, digits) for v in sorted(obj)]
    if isinstance(obj, np.ndarray):
        return normalize_for_json(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return format_float(float(obj), digits)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format_float(value, digits)
    if isinstance(obj, Enum):
        return obj.value
    return obj


def dumps_stable(obj: Any, digits: int = FLOAT_DIGITS) -> str:
    """Serialize to byte-stable JSON text."""
    return json.dumps(normalize_for_json(obj, digits), indent=2, sort_keys=True) + "\n"


def write_json(path: Union[str, Path], obj: Any, digits: int = FLOAT_DIGITS) -> Path:
    """Write a stable JSON document to disk."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_stable(obj, digits), encoding="utf-8")
    return path
