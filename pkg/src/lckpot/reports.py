"""JSON helpers shared by the verification reports."""

from __future__ import annotations

import json
import math

import numpy as np

SCHEMA_VERSION = "1.0"


def point_to_json(p):
    if p is None:
        return None
    return [[float(np.real(c)), float(np.imag(c))] for c in np.asarray(p).ravel()]


def point_from_json(p):
    if p is None:
        return None
    return np.array([complex(a, b) for a, b in p])


def number(x):
    """Float for JSON; non-finite values become strings."""
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def _default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if hasattr(o, "to_dict"):
        return o.to_dict()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
