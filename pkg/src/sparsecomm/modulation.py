"""Finite symbol alphabets and nearest-point slicing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_vector

__all__ = ["Constellation", "constellation", "slice_symbols", "symbol_error_rate"]


@dataclass(frozen=True)
class Constellation:
    """Named symbol set with unit average energy.

    The declared point order matters: distance ties in slicing resolve toward
    the earliest point in ``points``.
    """

    name: str
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a constellation needs at least two points")
        if np.unique(pts).size != pts.size:
            raise ValueError("constellation points must be distinct")
        energy = float(np.mean(np.abs(pts) ** 2))
        if abs(energy - 1.0) > 1e-12:
            raise ValueError(f"average symbol energy must be 1, got {energy!r}")
        object.__setattr__(self, "points", pts)

    def slice(self, v) -> np.ndarray:
        return slice_symbols(v, self)

    def draw(self, size, rng) -> np.ndarray:
        idx = rng.integers(0, self.points.size, size=size)
        return self.points[idx]


def _bpsk() -> Constellation:
    return Constellation("BPSK", np.array([1.0, -1.0]))


def _qpsk() -> Constellation:
    pts = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / np.sqrt(2.0)
    return Constellation("QPSK", pts)


def _qam16() -> Constellation:
    levels = np.array([-3.0, -1.0, 1.0, 3.0])
    pts = (levels[:, None] + 1j * levels[None, :]).ravel() / np.sqrt(10.0)
    return Constellation("QAM16", pts)


_FACTORIES = {"bpsk": _bpsk, "qpsk": _qpsk, "qam16": _qam16}


def constellation(name: str) -> Constellation:
    """Look up a built-in alphabet by name (BPSK, QPSK, QAM16)."""
    try:
        return _FACTORIES[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown constellation {name!r}; choose from {sorted(_FACTORIES)}")


def slice_symbols(v, c: Constellation) -> np.ndarray:
    """Map every entry to its nearest constellation point.

    Ties break toward the earliest point in the constellation's declared
    order, which keeps the operation deterministic and idempotent.
    """
    v = as_vector(v, "v")
    dist = np.abs(v[:, None] - c.points[None, :])
    return c.points[np.argmin(dist, axis=1)]


def symbol_error_rate(detected, sent) -> float:
    detected = as_vector(detected, "detected")
    sent = as_vector(sent, "sent")
    if detected.size != sent.size:
        raise ValueError("symbol vectors must have equal length")
    return float(np.mean(detected != sent))
