"""Uniform-linear-array responses on normalized spatial frequencies.

Directions are parameterized by u = sin(angle) in [-1, 1); a grid of L bins
covers that interval uniformly. With L equal to the element count the grid
response matrix is unitary.
"""

from __future__ import annotations

import numpy as np

__all__ = ["steering_vector", "steering_grid", "angle_grid"]


def steering_vector(n_elements: int, u: float) -> np.ndarray:
    """Unit-norm array response exp(j pi p u) / sqrt(n) for elements p."""
    p = np.arange(n_elements)
    return np.exp(1j * np.pi * p * u) / np.sqrt(n_elements)


def angle_grid(n_bins: int) -> np.ndarray:
    """n_bins spatial frequencies uniformly spanning [-1, 1)."""
    return -1.0 + 2.0 * np.arange(n_bins) / n_bins


def steering_grid(n_elements: int, n_bins: int) -> np.ndarray:
    """Matrix of steering vectors on the uniform grid, one per column."""
    us = angle_grid(n_bins)
    p = np.arange(n_elements)
    return np.exp(1j * np.pi * np.outer(p, us)) / np.sqrt(n_elements)
