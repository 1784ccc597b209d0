"""Small input checks shared by the numeric modules."""

from __future__ import annotations

import numpy as np

from .exceptions import ConfigError


def as_vector(x, n=None, name="x"):
    """Return ``x`` as a finite 1-D float array, optionally of length ``n``."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {n}")
    return arr


def as_signal(x, n, name="x"):
    """Accept a single signal (``n``,) or a stack of signals (``T``, ``n``)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim not in (1, 2) or arr.shape[-1] != n:
        raise ValueError(f"{name} has shape {arr.shape}, expected ({n},) or (T, {n})")
    return arr


def as_matrix(x, n_cols=None, name="X"):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if n_cols is not None and arr.shape[1] != n_cols:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_cols}")
    return arr


def as_mask(m, n, name="mask"):
    """Boolean observation mask of length ``n`` (accepts 0/1 or bools)."""
    arr = np.asarray(m)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"{name} has shape {arr.shape}, expected ({n},)")
    if arr.dtype != bool:
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError(f"{name} entries must be 0/1 or boolean")
        arr = arr.astype(bool)
    return arr


def check_bandwidth(k, n, name="bandwidth"):
    if isinstance(k, bool) or int(k) != k:
        raise ConfigError(f"{name} must be an integer, got {k!r}")
    k = int(k)
    if not 1 <= k <= n:
        raise ConfigError(f"{name} must lie in [1, {n}], got {k}")
    return k
