"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np


def check_stream(xs, n=None) -> tuple[int, ...]:
    """Coerce ``xs`` to a tuple of naturals, each below ``n`` when ``n`` is given."""
    arr = np.asarray(xs)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValueError(f"a stream is one-dimensional, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("stream values must be integers")
    out = tuple(int(x) for x in arr.tolist())
    for x in out:
        if x < 0:
            raise ValueError(f"stream value {x} is negative")
        if n is not None and x >= n:
            raise ValueError(f"stream value {x} outside the universe [0, {n})")
    return out


def check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def exact(value) -> Fraction:
    """Exact rational for a user-supplied number; floats are read by their shortest repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value))


def check_open_unit(name: str, value) -> float:
    v = float(value)
    if not 0 < v < 1:
        raise ValueError(f"{name} must lie in (0, 1), got {value!r}")
    return v
