import numbers

import numpy as np
from sklearn.utils import check_array


def check_positive(value, name, allow_zero=False):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    ok = value >= 0 if allow_zero else value > 0
    if not (ok and np.isfinite(value)):
        bound = ">= 0" if allow_zero else "> 0"
        raise ValueError(f"{name} must be finite and {bound}, got {value!r}")
    return float(value)


def check_coordinates(X, name="X"):
    """1-D float array from a vector or a single-column matrix."""
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] != 1:
        raise ValueError(f"{name} must be 1-D or have a single column, got shape {arr.shape}")
    arr = check_array(arr, ensure_2d=False, dtype=float, input_name=name)
    return arr.reshape(-1)


def check_terminal_positions(X):
    x = check_coordinates(X, "terminal positions")
    if x.size > 1 and np.any(np.diff(x) <= 0):
        raise ValueError("terminal positions must be strictly increasing")
    return x


def check_choice(value, name, choices):
    if value not in choices:
        raise ValueError(f"{name} must be one of {tuple(choices)}, got {value!r}")
    return value
