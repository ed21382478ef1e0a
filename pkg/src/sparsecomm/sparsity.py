"""Estimating the unknown sparsity level that greedy solvers need.

Two strategies: stop the greedy loop when the residual power falls under a
threshold, or hold out some measurement rows and pick the sparsity with the
smallest held-out error. A mild inflation of the estimate is usually safer
than running the greedy solver short.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._validation import as_matrix, as_vector, check_compatible
from .rng import as_generator
from .solvers.greedy import omp_path

__all__ = ["CvSplit", "estimate_k_residual", "estimate_k_cv", "inflate_k", "CvEstimate"]


@dataclass(frozen=True)
class CvSplit:
    """Disjoint row split into a training part and a validation part."""

    train_rows: np.ndarray
    validation_rows: np.ndarray

    def __post_init__(self):
        train = np.asarray(self.train_rows, dtype=np.intp)
        val = np.asarray(self.validation_rows, dtype=np.intp)
        if train.size == 0 or val.size == 0:
            raise ValueError("both row sets must be nonempty")
        if set(train.tolist()) & set(val.tolist()):
            raise ValueError("train and validation rows must be disjoint")
        object.__setattr__(self, "train_rows", np.sort(train))
        object.__setattr__(self, "validation_rows", np.sort(val))

    @classmethod
    def random(cls, m: int, train_fraction: float = 0.8, rng=None) -> "CvSplit":
        """Uniformly random split; default 80/20."""
        if not 0.0 < train_fraction < 1.0:
            raise ValueError("train_fraction must lie in (0, 1)")
        gen = as_generator(rng if rng is not None else 0)
        perm = gen.permutation(m)
        n_train = max(1, min(m - 1, int(round(train_fraction * m))))
        return cls(perm[:n_train], perm[n_train:])


def estimate_k_residual(H, y, eps: float) -> int:
    """Greedy iteration count when the residual norm first drops below eps."""
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    if eps <= 0:
        raise ValueError("eps must be positive")
    order, _, _, _ = omp_path(H, y, residual_tol=eps)
    return len(order)


class CvEstimate(NamedTuple):
    k: int
    low_confidence: bool
    validation_errors: np.ndarray


def estimate_k_cv(H, y, split: CvSplit, k_max: int,
                  low_confidence_ratio: float = 0.9) -> CvEstimate:
    """Pick the sparsity whose held-out fit error is smallest.

    For each candidate i in 1..k_max the greedy solver runs on the training
    rows and the estimate is scored on the validation rows; ties resolve to
    the smallest i. When even the best candidate barely improves on the
    zero estimate (ratio >= ``low_confidence_ratio``), the measurement looks
    noise-only and the estimate is flagged low confidence.
    """
    H = as_matrix(H)
    y = as_vector(y)
    check_compatible(H, y)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if split.train_rows.max() >= H.shape[0] or split.validation_rows.max() >= H.shape[0]:
        raise ValueError("split rows out of range")
    if k_max > split.train_rows.size:
        raise ValueError(f"k_max {k_max} exceeds the {split.train_rows.size} training rows")

    H_t = H[split.train_rows, :]
    y_t = y[split.train_rows]
    H_v = H[split.validation_rows, :]
    y_v = y[split.validation_rows]

    order, _, _, _ = omp_path(H_t, y_t, sparsity=k_max)
    errors = np.empty(len(order), dtype=float)
    for i in range(1, len(order) + 1):
        cols = order[:i]
        sol, _, _, _ = np.linalg.lstsq(H_t[:, cols], y_t, rcond=None)
        errors[i - 1] = float(np.linalg.norm(y_v - H_v[:, cols] @ sol))
    if errors.size == 0:
        return CvEstimate(0, True, errors)
    k_hat = int(np.argmin(errors)) + 1
    baseline = float(np.linalg.norm(y_v))
    low_conf = bool(errors[k_hat - 1] >= low_confidence_ratio * baseline)
    return CvEstimate(k_hat, low_conf, errors)


def inflate_k(k_hat: int) -> int:
    """Inflate an estimated sparsity by 20% (ceil), hedging against underfit."""
    if k_hat < 0:
        raise ValueError("k_hat must be nonnegative")
    return -((-6 * int(k_hat)) // 5)
