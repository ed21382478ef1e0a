"""Complex linear-model primitives.

Everything downstream works on the measurement model ``y = H s + v`` with a
dense complex ``H``. Real-valued problems are carried as complex arrays with
zero imaginary parts so that a single code path serves both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import as_matrix, as_vector, check_compatible
from .exceptions import UndefinedMetricError
from .rng import as_generator

__all__ = [
    "SparseVector",
    "NoiseSpec",
    "make_gaussian_matrix",
    "make_bernoulli_matrix",
    "make_partial_dft_matrix",
    "dft_matrix",
    "synthesize_sparse_vector",
    "measure",
    "snr_noise_variance",
    "nmse",
    "nmse_db",
    "support_metrics",
]


@dataclass(frozen=True)
class SparseVector:
    """Sparse vector as an explicit (support, values) pair over ``n`` entries.

    Indices are strictly increasing, values are nonzero, and the number of
    nonzeros is exactly ``len(support)``.
    """

    n: int
    support: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        support = np.asarray(self.support, dtype=np.intp)
        values = np.asarray(self.values, dtype=np.complex128)
        if support.shape != values.shape or support.ndim != 1:
            raise ValueError("support and values must be 1-D and equal length")
        if support.size:
            if support.min() < 0 or support.max() >= self.n:
                raise ValueError("support indices out of range")
            if np.any(np.diff(support) <= 0):
                raise ValueError("support indices must be strictly increasing")
            if np.any(values == 0):
                raise ValueError("stored values must be nonzero")
        if not np.all(np.isfinite(values.view(np.float64))):
            raise ValueError("values must be finite")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)

    @property
    def sparsity(self) -> int:
        return int(self.support.size)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.n, dtype=np.complex128)
        dense[self.support] = self.values
        return dense

    @classmethod
    def from_dense(cls, x, tol: float = 0.0) -> "SparseVector":
        x = as_vector(x, "x")
        keep = np.flatnonzero(np.abs(x) > tol)
        return cls(x.size, keep, x[keep])


@dataclass(frozen=True)
class NoiseSpec:
    """Additive noise description: per-entry variance plus distribution kind.

    ``complex`` draws circularly symmetric complex Gaussians (variance split
    equally between real and imaginary parts); ``real`` draws plain Gaussians.
    """

    variance: float
    kind: str = "complex"

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError("noise variance must be nonnegative")
        if self.kind not in ("complex", "real"):
            raise ValueError(f"unknown noise kind {self.kind!r}")

    def sample(self, size: int, rng) -> np.ndarray:
        gen = as_generator(rng)
        if self.variance == 0.0:
            return np.zeros(size, dtype=np.complex128)
        sigma = np.sqrt(self.variance)
        if self.kind == "real":
            return (sigma * gen.standard_normal(size)).astype(np.complex128)
        scale = sigma / np.sqrt(2.0)
        return scale * (gen.standard_normal(size) + 1j * gen.standard_normal(size))


def make_gaussian_matrix(m, n, entry_variance, rng, complex_valued=False) -> np.ndarray:
    """i.i.d. Gaussian sensing matrix with a caller-chosen entry variance.

    Common normalizations (1, 1/m, 1/n) are all in use, so the variance is a
    parameter. The complex variant splits the variance equally between the
    real and imaginary parts.
    """
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if entry_variance <= 0:
        raise ValueError("entry variance must be positive")
    gen = as_generator(rng)
    if complex_valued:
        scale = np.sqrt(entry_variance / 2.0)
        return scale * (gen.standard_normal((m, n)) + 1j * gen.standard_normal((m, n)))
    return (np.sqrt(entry_variance) * gen.standard_normal((m, n))).astype(np.complex128)


def make_bernoulli_matrix(m, n, rng) -> np.ndarray:
    """Matrix with equiprobable entries +-1/m (columns then have norm 1/sqrt(m))."""
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    gen = as_generator(rng)
    signs = gen.integers(0, 2, size=(m, n)) * 2 - 1
    return (signs / m).astype(np.complex128)


def dft_matrix(n: int, unitary: bool = True) -> np.ndarray:
    """n-point DFT matrix, unitary (1/sqrt(n)) or unnormalized."""
    idx = np.arange(n)
    W = np.exp(-2j * np.pi * np.outer(idx, idx) / n)
    return W / np.sqrt(n) if unitary else W


def make_partial_dft_matrix(m, n, row_indices=None, rng=None) -> np.ndarray:
    """m rows of the unitary n-point DFT, scaled by sqrt(n/m) for unit columns.

    Rows are either given explicitly (must be distinct) or sampled uniformly
    without replacement.
    """
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if row_indices is None:
        if rng is None:
            raise ValueError("either row_indices or rng must be given")
        row_indices = np.sort(as_generator(rng).choice(n, size=m, replace=False))
    row_indices = np.asarray(row_indices, dtype=np.intp)
    if row_indices.size != m:
        raise ValueError("number of row indices must equal m")
    if row_indices.min() < 0 or row_indices.max() >= n:
        raise ValueError("row indices out of range")
    if np.unique(row_indices).size != m:
        raise ValueError("row indices must be distinct")
    F = dft_matrix(n, unitary=True)
    return np.sqrt(n / m) * F[row_indices, :]


def synthesize_sparse_vector(n, k, value_law, rng) -> SparseVector:
    """Random k-sparse vector: uniform support, values drawn per ``value_law``.

    ``value_law`` is ``"unit-gaussian"`` (real N(0,1)), ``"complex-gaussian"``
    (circular, unit variance), or a constellation whose points are drawn
    uniformly.
    """
    if not 0 <= k <= n:
        raise ValueError(f"sparsity k={k} must lie in [0, n={n}]")
    gen = as_generator(rng)
    support = np.sort(gen.choice(n, size=k, replace=False))
    if k == 0:
        return SparseVector(n, support, np.zeros(0, dtype=np.complex128))
    if isinstance(value_law, str):
        if value_law == "unit-gaussian":
            draw = lambda size: gen.standard_normal(size).astype(np.complex128)
        elif value_law == "complex-gaussian":
            draw = lambda size: (gen.standard_normal(size) + 1j * gen.standard_normal(size)) / np.sqrt(2.0)
        else:
            raise ValueError(f"unknown value law {value_law!r}")
    else:
        points = np.asarray(value_law.points, dtype=np.complex128)
        draw = lambda size: points[gen.integers(0, points.size, size=size)]
    values = draw(k)
    # Gaussian draws are nonzero almost surely; guard the measure-zero event anyway.
    while np.any(values == 0):
        values = np.where(values == 0, draw(k), values)
    return SparseVector(n, support, values)


def measure(H, s, noise: NoiseSpec, rng) -> np.ndarray:
    """Observe ``y = H s + v`` with ``v`` drawn from ``noise``."""
    H = as_matrix(H)
    x = s.to_dense() if isinstance(s, SparseVector) else as_vector(s, "s")
    if H.shape[1] != x.size:
        raise ValueError(f"H has {H.shape[1]} columns but s has length {x.size}")
    return H @ x + noise.sample(H.shape[0], rng)


def snr_noise_variance(H, snr_db, k=None, value_variance=1.0) -> float:
    """Per-entry noise variance realizing SNR = E||Hs||^2 / E||v||^2.

    For a k-of-n uniform-support signal with i.i.d. unit-variance values,
    E||Hs||^2 = (k/n) ||H||_F^2. ``k=None`` means a dense signal (k = n).
    """
    H = as_matrix(H)
    m, n = H.shape
    occupancy = 1.0 if k is None else k / n
    signal_power = occupancy * value_variance * float(np.linalg.norm(H) ** 2)
    return signal_power / (m * 10.0 ** (snr_db / 10.0))


def nmse(estimate, truth) -> float:
    """Normalized squared error ||estimate - truth||^2 / ||truth||^2."""
    estimate = as_vector(estimate, "estimate")
    truth = as_vector(truth, "truth")
    if estimate.size != truth.size:
        raise ValueError("estimate and truth must have equal length")
    denom = float(np.linalg.norm(truth) ** 2)
    if denom == 0.0:
        raise UndefinedMetricError("NMSE is undefined for zero truth")
    return float(np.linalg.norm(estimate - truth) ** 2) / denom


def nmse_db(estimate, truth) -> float:
    return 10.0 * np.log10(max(nmse(estimate, truth), 1e-300))


def support_metrics(est: SparseVector, truth: SparseVector) -> dict:
    """Exact-match flag plus precision/recall of a detected support.

    Precision of an empty estimate (against a nonempty truth) is reported as
    0 rather than NaN so Monte-Carlo curves aggregate cleanly.
    """
    if est.n != truth.n:
        raise ValueError("ambient dimensions differ")
    est_set = set(est.support.tolist())
    true_set = set(truth.support.tolist())
    hits = len(est_set & true_set)
    if not est_set and not true_set:
        return {"exact_match": True, "precision": 1.0, "recall": 1.0}
    precision = hits / len(est_set) if est_set else 0.0
    recall = hits / len(true_set) if true_set else 0.0
    return {
        "exact_match": est_set == true_set,
        "precision": precision,
        "recall": recall,
    }
