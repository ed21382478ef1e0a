"""sparsecomm: sparse recovery for wireless links.

Dense complex measurement models (y = H s + v), sensing-matrix diagnostics,
a family of sparse solvers with a scikit-learn style estimator surface,
scenario builders for common wireless problems, and a deterministic
Monte-Carlo experiment harness that writes CSV curves.
"""

from . import arrays, diagnostics, dictionary, modulation, solvers, sparsity, wireless
from .core import (
    NoiseSpec,
    SparseVector,
    dft_matrix,
    make_bernoulli_matrix,
    make_gaussian_matrix,
    make_partial_dft_matrix,
    measure,
    nmse,
    nmse_db,
    snr_noise_variance,
    support_metrics,
    synthesize_sparse_vector,
)
from .diagnostics import (
    DiagnosticsReport,
    diagnose_matrix,
    mutual_coherence,
    rip_constant_bruteforce,
    spark_bruteforce,
    uniqueness_certificates,
    welch_lower_bound,
)
from .dictionary import (
    Dictionary,
    DictionaryLearner,
    batch_sparse_code,
    clustered_channel_ensemble,
    learn_dictionary,
    make_overcomplete_dft,
    mismatch_error,
    sparse_code,
)
from .modulation import Constellation, constellation, slice_symbols, symbol_error_rate
from .rng import RngStream
from .solvers import (
    BasisPursuitDenoising,
    IterativeHardThresholding,
    MmvProblem,
    MmvResult,
    OrthogonalMatchingPursuit,
    RecoveryResult,
    ReweightedBasisPursuit,
    SimultaneousOMP,
    SlicedParallelGreedy,
    SparseBayesianLearning,
    bpdn,
    gsomp_distinct,
    iht,
    l0_exhaustive,
    lmmse_solve,
    ls_solve,
    min_norm_solve,
    omp,
    oracle_ls,
    reweighted_l1,
    sbl_em,
    sliced_parallel_greedy,
    somp,
)
from .sparsity import CvSplit, estimate_k_cv, estimate_k_residual, inflate_k

__version__ = "0.1.0"
