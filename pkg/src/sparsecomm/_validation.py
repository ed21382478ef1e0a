"""Input validation helpers shared by estimators and builders."""

from __future__ import annotations

import numpy as np

from .exceptions import DegenerateMatrixError

__all__ = ["as_matrix", "as_vector", "check_compatible", "column_norms"]


def as_matrix(H, name: str = "H") -> np.ndarray:
    """Return a 2-D complex128 array with finite entries."""
    H = np.asarray(H)
    if H.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {H.shape}")
    if H.size == 0:
        raise ValueError(f"{name} must be nonempty")
    H = H.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(H.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return H


def as_vector(y, name: str = "y") -> np.ndarray:
    """Return a 1-D complex128 array with finite entries."""
    y = np.asarray(y)
    if y.ndim == 2 and 1 in y.shape:
        y = y.ravel()
    if y.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {y.shape}")
    if y.size == 0:
        raise ValueError(f"{name} must be nonempty")
    y = y.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(y.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return y


def check_compatible(H: np.ndarray, y: np.ndarray) -> None:
    if H.shape[0] != y.shape[0]:
        raise ValueError(
            f"incompatible shapes: H has {H.shape[0]} rows but y has length {y.shape[0]}"
        )


def column_norms(H: np.ndarray, *, require_nonzero: bool = False) -> np.ndarray:
    norms = np.linalg.norm(H, axis=0)
    if require_nonzero and np.any(norms == 0.0):
        raise DegenerateMatrixError("matrix has a zero column")
    return norms
