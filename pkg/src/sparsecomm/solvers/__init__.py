"""Sparse-recovery solvers with a scikit-learn style fit/predict surface."""

from .base import BaseSparseRecovery, RecoveryResult, extract_support
from .baselines import lmmse_solve, ls_solve, min_norm_solve, oracle_ls
from .greedy import (
    OrthogonalMatchingPursuit,
    SlicedParallelGreedy,
    l0_exhaustive,
    omp,
    omp_path,
    sliced_parallel_greedy,
)
from .iht import IterativeHardThresholding, iht
from .lasso import BasisPursuitDenoising, ReweightedBasisPursuit, bpdn, reweighted_l1
from .mmv import MmvProblem, MmvResult, SimultaneousOMP, gsomp_distinct, somp
from .sbl import SparseBayesianLearning, sbl_em

__all__ = [
    "BaseSparseRecovery",
    "RecoveryResult",
    "extract_support",
    "ls_solve",
    "min_norm_solve",
    "lmmse_solve",
    "oracle_ls",
    "OrthogonalMatchingPursuit",
    "omp",
    "omp_path",
    "l0_exhaustive",
    "SlicedParallelGreedy",
    "sliced_parallel_greedy",
    "IterativeHardThresholding",
    "iht",
    "BasisPursuitDenoising",
    "bpdn",
    "ReweightedBasisPursuit",
    "reweighted_l1",
    "SparseBayesianLearning",
    "sbl_em",
    "MmvProblem",
    "MmvResult",
    "SimultaneousOMP",
    "somp",
    "gsomp_distinct",
]
