"""Input validation helpers used across the public API."""

from __future__ import annotations

import math
import numbers

import numpy as np


def check_finite(name: str, value) -> float:
    """Cast to float, rejecting NaN and infinities."""
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be a finite real, got {value!r}")
    return x


def check_index(name: str, value) -> int:
    """Validate a nonnegative integer index."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    n = int(value)
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


def as_sequence(values, min_length: int, name: str = "sequence") -> np.ndarray:
    """Coerce a value list (or anything with a ``.values`` tuple, such as a
    generated sequence record) to a finite 1-d float array of at least
    ``min_length`` entries."""
    if hasattr(values, "values") and not isinstance(values, (list, tuple, np.ndarray)):
        values = values.values
    x = np.asarray(values, dtype=float)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x.ravel()
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {x.shape}")
    if len(x) < min_length:
        raise ValueError(f"{name} too short: need at least {min_length} entries, got {len(x)}")
    if not np.all(np.isfinite(x)):
        bad = int(np.flatnonzero(~np.isfinite(x))[0])
        raise ValueError(f"{name} contains a non-finite entry at position {bad}")
    return x
