"""Overcomplete dictionaries and dictionary learning.

Signals that are dense in the canonical basis often admit k-sparse codes in
a redundant atom set. This module provides fixed Fourier dictionaries, a
batch greedy coder, and an alternating-minimization learner (greedy coding
step, full least-squares dictionary update, atom renormalization).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import as_matrix, as_vector
from .arrays import steering_vector
from .core import SparseVector
from .rng import as_generator

__all__ = [
    "Dictionary",
    "make_overcomplete_dft",
    "sparse_code",
    "batch_sparse_code",
    "mismatch_error",
    "DictionaryLearner",
    "learn_dictionary",
    "clustered_channel_ensemble",
]


@dataclass(frozen=True)
class Dictionary:
    """Atom matrix (one unit-norm column per atom) plus a provenance tag."""

    atoms: np.ndarray
    kind: str = "learned"

    def __post_init__(self):
        atoms = as_matrix(self.atoms, "atoms")
        norms = np.linalg.norm(atoms, axis=0)
        if np.any(norms == 0):
            raise ValueError("dictionary atoms must be nonzero")
        if np.max(np.abs(norms - 1.0)) > 1e-6:
            raise ValueError("dictionary atoms must be unit norm")
        object.__setattr__(self, "atoms", atoms / norms[None, :])

    @property
    def n_atoms(self) -> int:
        return self.atoms.shape[1]

    @property
    def signal_dim(self) -> int:
        return self.atoms.shape[0]


def make_overcomplete_dft(n: int, n_atoms: int) -> Dictionary:
    """Unit-norm complex exponentials at n_atoms uniformly spaced frequencies.

    ``n_atoms == n`` gives the orthonormal Fourier basis; larger values give
    a redundant frame whose adjacent-atom coherence follows the Dirichlet
    kernel.
    """
    if n_atoms < n:
        raise ValueError("need at least n atoms")
    p = np.arange(n)
    freqs = np.arange(n_atoms) / n_atoms
    atoms = np.exp(2j * np.pi * np.outer(p, freqs)) / np.sqrt(n)
    kind = "orthogonal-dft" if n_atoms == n else "overcomplete-dft"
    return Dictionary(atoms, kind)


def _atoms_of(D) -> np.ndarray:
    return D.atoms if isinstance(D, Dictionary) else as_matrix(D, "D")


def batch_sparse_code(D, X, k: int) -> np.ndarray:
    """Exactly-k greedy codes for every column of X, via the atom Gram matrix.

    Selection and the per-iteration least-squares re-fit run batched across
    signals, which is what makes learning on hundreds of signals cheap.
    Returns the (n_atoms, n_signals) coefficient matrix.
    """
    A = _atoms_of(D)
    X = as_matrix(X, "X")
    n, M = A.shape
    if X.shape[0] != n:
        raise ValueError("signal length does not match the atom length")
    L = X.shape[1]
    if not 1 <= k <= M:
        raise ValueError(f"k={k} out of range for {M} atoms")

    norms = np.linalg.norm(A, axis=0)
    G = A.conj().T @ A
    C0 = A.conj().T @ X
    ridge = 1e-12 * float(np.mean(np.real(np.diag(G))))

    supports = np.zeros((L, k), dtype=np.intp)
    taken = np.zeros((M, L), dtype=bool)
    corr = C0.copy()
    coef = None
    cols = np.arange(L)
    eye = None
    for i in range(k):
        score = np.where(taken, -1.0, np.abs(corr) / norms[:, None])
        supports[:, i] = np.argmax(score, axis=0)
        taken[supports[:, i], cols] = True
        sel = supports[:, : i + 1]
        Gs = G[sel[:, :, None], sel[:, None, :]]
        if eye is None or eye.shape[0] != i + 1:
            eye = np.eye(i + 1)
        rhs = C0[sel, cols[:, None]]
        coef = np.linalg.solve(Gs + ridge * eye, rhs[..., None])[..., 0]
        if i + 1 < k:
            corr = C0 - np.einsum("mli,li->ml", G[:, sel], coef)

    codes = np.zeros((M, L), dtype=np.complex128)
    np.put_along_axis(codes, supports.T, coef.T, axis=0)
    return codes


def sparse_code(D, x, k: int) -> SparseVector:
    """Greedy k-sparse code of a single signal against the dictionary."""
    codes = batch_sparse_code(D, as_vector(x, "x")[:, None], k)
    return SparseVector.from_dense(codes[:, 0])


def mismatch_error(D, X, k: int) -> float:
    """Mean squared coding residual at sparsity k: sum_i ||x_i - D s_i||^2 / L."""
    A = _atoms_of(D)
    X = as_matrix(X, "X")
    codes = batch_sparse_code(A, X, k)
    residual = X - A @ codes
    return float(np.mean(np.sum(np.abs(residual) ** 2, axis=0)))


class DictionaryLearner(BaseEstimator):
    """Alternating greedy coding and least-squares dictionary updates.

    Each round codes all signals at the sparsity budget, then solves the
    dictionary that minimizes the Frobenius fit error with the codes fixed,
    renormalizes atoms, and reseeds any atom that went unused from the
    worst-fit signal. A round that would increase the fit error is rolled
    back and learning stops, so the recorded per-round errors never increase.

    Parameters
    ----------
    n_atoms : int
        Dictionary size (may exceed the signal length).
    sparsity : int
        Per-signal coding budget.
    n_rounds : int
        Maximum alternations; 0 returns the initialization.
    random_state : int, Generator, or RngStream
        Controls the signal-sampling initialization.
    """

    def __init__(self, n_atoms, sparsity, n_rounds=30, random_state=0):
        self.n_atoms = n_atoms
        self.sparsity = sparsity
        self.n_rounds = n_rounds
        self.random_state = random_state

    def _init_atoms(self, X, rng):
        n, L = X.shape
        M = int(self.n_atoms)
        picks = rng.choice(L, size=min(M, L), replace=False)
        atoms = X[:, picks].copy()
        if M > L:
            extra = rng.standard_normal((n, M - L)) + 1j * rng.standard_normal((n, M - L))
            atoms = np.hstack([atoms, extra])
        norms = np.linalg.norm(atoms, axis=0)
        dead = norms < 1e-12
        if np.any(dead):
            atoms[:, dead] = rng.standard_normal((n, int(dead.sum())))
            norms = np.linalg.norm(atoms, axis=0)
        return atoms / norms[None, :]

    def fit(self, X):
        X = as_matrix(X, "X")
        n, L = X.shape
        if self.n_atoms < 1:
            raise ValueError("n_atoms must be positive")
        if not 1 <= self.sparsity <= self.n_atoms:
            raise ValueError("sparsity must lie in [1, n_atoms]")
        rng = as_generator(self.random_state)
        atoms = self._init_atoms(X, rng)
        errors = []
        for _ in range(int(self.n_rounds)):
            codes = batch_sparse_code(atoms, X, int(self.sparsity))
            residual = X - atoms @ codes
            err = float(np.mean(np.sum(np.abs(residual) ** 2, axis=0)))
            if errors and err > errors[-1] * (1.0 + 1e-12) + 1e-15:
                break  # greedy coding stopped helping; keep the previous dictionary
            errors.append(err)
            gram = codes @ codes.conj().T
            ridge = 1e-10 * max(float(np.mean(np.real(np.diag(gram)))), 1e-30)
            gram += ridge * np.eye(gram.shape[0])
            updated = np.linalg.solve(gram.T, (X @ codes.conj().T).T).T
            norms = np.linalg.norm(updated, axis=0)
            dead = norms < 1e-10
            if np.any(dead):
                per_signal = np.sum(np.abs(residual) ** 2, axis=0)
                worst = np.argsort(-per_signal)[: int(dead.sum())]
                updated[:, dead] = X[:, worst % L]
                norms = np.linalg.norm(updated, axis=0)
                norms[norms < 1e-12] = 1.0
            atoms = updated / norms[None, :]
        self.atoms_ = atoms
        self.dictionary_ = Dictionary(atoms, "learned")
        self.fit_errors_ = np.asarray(errors)
        return self

    def transform(self, X) -> np.ndarray:
        """Greedy codes of new signals under the learned dictionary."""
        if not hasattr(self, "atoms_"):
            raise RuntimeError("DictionaryLearner is not fitted yet")
        return batch_sparse_code(self.atoms_, as_matrix(X, "X"), int(self.sparsity))

    def fit_transform(self, X):
        return self.fit(X).transform(X)


def learn_dictionary(X, n_atoms, sparsity, n_rounds=30, rng=0) -> Dictionary:
    """Convenience wrapper around DictionaryLearner returning the Dictionary."""
    learner = DictionaryLearner(n_atoms, sparsity, n_rounds=n_rounds, random_state=rng)
    return learner.fit(X).dictionary_


def clustered_channel_ensemble(n, n_signals, rng, n_clusters=6,
                               paths_per_cluster=10, angle_spread=0.05,
                               cluster_centers=None) -> np.ndarray:
    """Synthetic antenna-domain channels from a few scatter clusters.

    Cluster centers (in spatial frequency u) are shared across the ensemble;
    each signal superposes complex-Gaussian path gains on per-path jittered
    angles around the centers. Off-grid angles make these channels dense in
    the Fourier basis, which is exactly what a learned dictionary fixes.
    """
    gen = as_generator(rng)
    if cluster_centers is None:
        cluster_centers = gen.uniform(-1.0, 1.0, size=n_clusters)
    else:
        cluster_centers = np.asarray(cluster_centers, dtype=float)
        n_clusters = cluster_centers.size
    total_paths = n_clusters * paths_per_cluster
    X = np.zeros((n, n_signals), dtype=np.complex128)
    for ell in range(n_signals):
        u = np.repeat(cluster_centers, paths_per_cluster)
        u = u + angle_spread * gen.standard_normal(total_paths)
        gains = (gen.standard_normal(total_paths) + 1j * gen.standard_normal(total_paths))
        gains /= np.sqrt(2.0 * total_paths)
        sig = np.zeros(n, dtype=np.complex128)
        for g, uu in zip(gains, u):
            sig += g * steering_vector(n, uu)
        X[:, ell] = sig
    return X
