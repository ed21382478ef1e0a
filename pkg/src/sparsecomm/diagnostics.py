"""Quality measures of a sensing matrix.

Mutual coherence and its closed-form lower bound are cheap; spark and the
restricted-isometry constants require combinatorial enumeration and are only
intended for small matrices, guarded by explicit budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._validation import as_matrix, column_norms
from .exceptions import DegenerateMatrixError, EnumerationBudgetError

__all__ = [
    "mutual_coherence",
    "welch_lower_bound",
    "spark_bruteforce",
    "rip_constant_bruteforce",
    "uniqueness_certificates",
    "DiagnosticsReport",
    "diagnose_matrix",
]

#: Relative singular-value threshold below which columns count as dependent.
RANK_TOLERANCE = 1e-10


def mutual_coherence(H) -> float:
    """Largest |<h_i, h_j>| / (||h_i|| ||h_j||) over distinct columns."""
    H = as_matrix(H)
    if H.shape[1] < 2:
        raise ValueError("mutual coherence needs at least two columns")
    norms = column_norms(H, require_nonzero=True)
    G = np.abs((H.conj().T @ H) / np.outer(norms, norms))
    np.fill_diagonal(G, 0.0)
    return float(min(G.max(), 1.0))


def welch_lower_bound(m: int, n: int) -> float:
    """Closed-form coherence lower bound sqrt((n-m)/(m(n-1))) for full-rank m x n.

    For n >> m this approaches 1/sqrt(m); for m >= n it degenerates to 0.
    """
    if n <= 1 or m < 1:
        raise ValueError("need n > 1 and m >= 1")
    if m >= n:
        return 0.0
    return math.sqrt((n - m) / (m * (n - 1)))


def _dependent(cols: np.ndarray, tol: float) -> bool:
    s = np.linalg.svd(cols, compute_uv=False)
    return bool(s[-1] <= tol * s[0])


def spark_bruteforce(H, budget: int | None = None, rank_tol: float = RANK_TOLERANCE):
    """Smallest number of linearly dependent columns, by ascending enumeration.

    Enumerates subset sizes in increasing order and short-circuits at the
    first dependent subset. Any m + 1 columns of an m x n matrix are
    dependent by dimension, so reaching size min(m, n) with every subset
    independent is decisive: the result is m + 1 for wide matrices and n + 1
    for matrices whose columns are all independent. A ``budget`` below that
    decisive size yields the string ``"exceeds-budget"``. Cost grows
    combinatorially; keep n small.
    """
    H = as_matrix(H)
    m, n = H.shape
    budget = n if budget is None else min(budget, n)
    norms = column_norms(H)
    if np.any(norms == 0.0):
        return 1
    decisive = min(m, n)
    for size in range(2, min(budget, decisive) + 1):
        for subset in combinations(range(n), size):
            if _dependent(H[:, subset], rank_tol):
                return size
    if budget >= decisive:
        return m + 1 if n > m else n + 1
    return "exceeds-budget"


def rip_constant_bruteforce(H, k: int, normalize_columns: bool = True,
                            max_subsets: int = 10**6) -> float:
    """Exhaustive restricted-isometry constant over all k-column submatrices.

    delta_k = max over subsets S of max(sigma_max(H_S)^2 - 1, 1 - sigma_min(H_S)^2).
    Columns are normalized first unless disabled.
    """
    H = as_matrix(H)
    n = H.shape[1]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} columns")
    count = math.comb(n, k)
    if count > max_subsets:
        raise EnumerationBudgetError(
            f"C({n},{k}) = {count} subsets exceeds the budget of {max_subsets}"
        )
    if normalize_columns:
        H = H / column_norms(H, require_nonzero=True)[None, :]
    delta = 0.0
    for subset in combinations(range(n), k):
        s = np.linalg.svd(H[:, subset], compute_uv=False)
        delta = max(delta, s[0] ** 2 - 1.0, 1.0 - s[-1] ** 2)
    return float(delta)


def uniqueness_certificates(H, k: int, spark_budget: int | None = None) -> dict:
    """Sufficient-condition checks that a k-sparse solution is unique.

    The spark test (spark > 2k) is exact but may come back ``"unknown"`` when
    the enumeration budget is exhausted; the coherence test
    (k < (1 + 1/mu)/2) is always decidable.
    """
    H = as_matrix(H)
    spark = spark_bruteforce(H, budget=spark_budget)
    if spark == "exceeds-budget":
        theorem1 = "unknown"
    else:
        theorem1 = bool(spark > 2 * k)
    mu = mutual_coherence(H)
    if mu == 0.0:
        theorem2 = True
    else:
        theorem2 = bool(k < 0.5 * (1.0 + 1.0 / mu))
    return {"theorem1": theorem1, "theorem2": theorem2}


@dataclass
class DiagnosticsReport:
    """Flat summary of matrix quality measures, serializable as key = value lines."""

    m: int
    n: int
    mu: float
    welch_bound: float
    spark: object
    rip_constants: dict = field(default_factory=dict)
    unique_k_theorem1: int | None = None
    unique_k_theorem2: int = 0

    def to_text(self) -> str:
        lines = [
            f"m = {self.m}",
            f"n = {self.n}",
            f"mu = {self.mu:.12g}",
            f"welch_bound = {self.welch_bound:.12g}",
            f"spark = {self.spark}",
        ]
        for k in sorted(self.rip_constants):
            lines.append(f"rip_delta_{k} = {self.rip_constants[k]:.12g}")
        t1 = "unknown" if self.unique_k_theorem1 is None else self.unique_k_theorem1
        lines.append(f"unique_k_theorem1 = {t1}")
        lines.append(f"unique_k_theorem2 = {self.unique_k_theorem2}")
        return "\n".join(lines) + "\n"


def _max_k_strict(threshold: float) -> int:
    """Largest integer k with k < threshold."""
    k = int(math.floor(threshold))
    if k >= threshold:
        k -= 1
    return max(k, 0)


def diagnose_matrix(H, spark_budget: int | None = None, rip_kmax: int = 0,
                    rip_max_subsets: int = 10**6) -> DiagnosticsReport:
    """Compute the full diagnostics block for a (small) sensing matrix."""
    H = as_matrix(H)
    m, n = H.shape
    mu = mutual_coherence(H)
    welch = welch_lower_bound(m, n)
    spark = spark_bruteforce(H, budget=spark_budget)
    rip = {}
    for k in range(1, rip_kmax + 1):
        try:
            rip[k] = rip_constant_bruteforce(H, k, max_subsets=rip_max_subsets)
        except EnumerationBudgetError:
            break
    if spark == "exceeds-budget":
        unique1 = None
    else:
        unique1 = _max_k_strict(spark / 2.0)
    unique2 = n if mu == 0.0 else _max_k_strict(0.5 * (1.0 + 1.0 / mu))
    return DiagnosticsReport(
        m=m, n=n, mu=mu, welch_bound=welch, spark=spark, rip_constants=rip,
        unique_k_theorem1=unique1, unique_k_theorem2=unique2,
    )
