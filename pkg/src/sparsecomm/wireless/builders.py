"""Builders that reduce wireless scenarios to a sensing matrix.

Every builder returns a MeasurementModel wrapping the matrix H of a linear
observation y = H s + v, together with whatever index maps are needed to
interpret the recovered vector (pilot positions, grid geometry, angular
bins).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import convolution_matrix

from .._validation import as_matrix, as_vector
from ..arrays import steering_grid
from ..core import dft_matrix
from ..rng import as_generator

__all__ = [
    "MeasurementModel",
    "build_toeplitz_pilot_model",
    "OfdmConfig",
    "build_ofdm_pilot_model",
    "build_angular_model",
    "subcarrier_selection",
    "offband_projection",
    "MwcConfig",
    "make_mwc_config",
    "build_mwc_model",
    "AudCodebook",
    "make_gaussian_codebook",
    "RssMap",
    "make_rss_map",
    "build_localization_model",
    "MmWaveConfig",
    "make_mmwave_config",
    "build_mmwave_model",
    "mmwave_index_to_pair",
    "mmwave_pair_to_index",
]


@dataclass
class MeasurementModel:
    """A sensing matrix plus the metadata needed to interpret the unknowns."""

    matrix: np.ndarray
    scenario: str
    dictionary: np.ndarray | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.matrix = as_matrix(self.matrix, "matrix")

    @property
    def shape(self):
        return self.matrix.shape


def build_toeplitz_pilot_model(pilot, n_taps: int) -> MeasurementModel:
    """Single-carrier pilot convolution: column j is the pilot delayed by j.

    The product H h equals the full linear convolution of the pilot with the
    tap vector h, so the model observes y = conv(pilot, h) + v.
    """
    pilot = as_vector(pilot, "pilot")
    if n_taps < 1:
        raise ValueError("n_taps must be positive")
    H = convolution_matrix(pilot, n_taps, mode="full")
    return MeasurementModel(H, "toeplitz-pilot", info={"pilot_length": pilot.size})


@dataclass(frozen=True)
class OfdmConfig:
    """Multicarrier frame layout: FFT size, occupied bins, pilots, channel."""

    fft_size: int
    data_positions: np.ndarray | None = None
    pilot_values: np.ndarray | None = None
    channel_taps: np.ndarray | None = None

    def __post_init__(self):
        if self.fft_size < 2:
            raise ValueError("fft_size must be at least 2")
        if self.data_positions is not None:
            pos = np.asarray(self.data_positions, dtype=np.intp)
            if pos.size == 0 or pos.min() < 0 or pos.max() >= self.fft_size:
                raise ValueError("data positions out of range")
            if np.unique(pos).size != pos.size:
                raise ValueError("data positions must be distinct")
            object.__setattr__(self, "data_positions", np.sort(pos))
        if self.pilot_values is not None:
            object.__setattr__(self, "pilot_values", as_vector(self.pilot_values, "pilot_values"))
        if self.channel_taps is not None:
            taps = as_vector(self.channel_taps, "channel_taps")
            if taps.size > self.fft_size:
                raise ValueError("more channel taps than the FFT size")
            object.__setattr__(self, "channel_taps", taps)


def build_ofdm_pilot_model(cfg: OfdmConfig, pilot_positions) -> MeasurementModel:
    """Frequency-domain pilot observation of a time-domain tap vector.

    H = diag(pilots) * (rows of the n-point DFT at the pilot bins), so that
    y holds the pilot-scaled channel frequency response at those bins.
    """
    n = cfg.fft_size
    pos = np.asarray(pilot_positions, dtype=np.intp)
    if pos.size == 0 or pos.min() < 0 or pos.max() >= n:
        raise ValueError("pilot positions out of range")
    if np.unique(pos).size != pos.size:
        raise ValueError("pilot positions must be distinct")
    if cfg.pilot_values is None:
        raise ValueError("OfdmConfig.pilot_values is required for the pilot model")
    if cfg.pilot_values.size != pos.size:
        raise ValueError("one pilot value per pilot position is required")
    D = dft_matrix(n, unitary=False)
    H = cfg.pilot_values[:, None] * D[pos, :]
    return MeasurementModel(H, "ofdm-pilot", info={"pilot_positions": pos})


def build_angular_model(A, n: int) -> MeasurementModel:
    """Angular-domain training model H = A D with D the unitary n-point DFT.

    The columns of D act as steering vectors on n equally spaced directions;
    a channel with few scatterers is sparse in that domain, and the estimate
    maps back through h = D s.
    """
    A = as_matrix(A, "A")
    if A.shape[1] != n:
        raise ValueError(f"pilot matrix must have {n} columns")
    D = dft_matrix(n, unitary=True)
    return MeasurementModel(A @ D, "angular-training", dictionary=D)


def subcarrier_selection(n: int, used) -> np.ndarray:
    """n x q selection matrix placing q symbols onto their subcarriers."""
    used = np.asarray(used, dtype=np.intp)
    Pi = np.zeros((n, used.size), dtype=np.complex128)
    Pi[used, np.arange(used.size)] = 1.0
    return Pi


def offband_projection(n: int, used) -> np.ndarray:
    """Diagonal projector onto the subcarriers carrying no symbols."""
    used = np.asarray(used, dtype=np.intp)
    d = np.ones(n, dtype=np.complex128)
    d[used] = 0.0
    return np.diag(d)


@dataclass(frozen=True)
class MwcConfig:
    """Parallel pseudo-random mixing branches over 2L+1 frequency bins."""

    chip_sequences: np.ndarray  # (n_branches, n_bins) entries +-1

    def __post_init__(self):
        chips = np.asarray(self.chip_sequences, dtype=float)
        if chips.ndim != 2:
            raise ValueError("chip_sequences must be (n_branches, n_bins)")
        if chips.shape[1] % 2 == 0:
            raise ValueError("the bin count 2L+1 must be odd")
        if not np.all(np.isin(chips, (-1.0, 1.0))):
            raise ValueError("chips must be +-1")
        object.__setattr__(self, "chip_sequences", chips)

    @property
    def n_branches(self) -> int:
        return self.chip_sequences.shape[0]

    @property
    def n_bins(self) -> int:
        return self.chip_sequences.shape[1]

    def fourier_coefficients(self) -> np.ndarray:
        """Per-branch coefficients c_k, k = -L..L, from a one-period FFT."""
        M = self.n_bins
        L = (M - 1) // 2
        C = np.fft.fft(self.chip_sequences, axis=1) / M
        ks = np.arange(-L, L + 1)
        return C[:, ks % M]


def make_mwc_config(n_branches: int, n_bins: int, rng) -> MwcConfig:
    """Random +-1 chip sequences, one period per branch."""
    gen = as_generator(rng)
    chips = gen.integers(0, 2, size=(n_branches, n_bins)) * 2.0 - 1.0
    return MwcConfig(chips)


def build_mwc_model(cfg: MwcConfig) -> MeasurementModel:
    """Mixing matrix relating branch outputs to stacked frequency bins.

    Unknown index j holds the spectrum slice shifted by (L - j) bin widths,
    so branch i contributes its mixing coefficient c_{L-j} at column j. The
    branch count must stay below the bin count: the whole point is sensing
    more bins than branches.
    """
    coeffs = cfg.fourier_coefficients()  # (branches, 2L+1), k = -L..L
    M = cfg.n_bins
    if cfg.n_branches >= M:
        raise ValueError("need fewer branches than bins (underdetermined regime)")
    # Column j multiplies s(f - (L - j) f_p): take c_k at k = L - j.
    H = coeffs[:, ::-1].copy()
    return MeasurementModel(H, "mwc-spectrum", info={"n_bins": M})


@dataclass(frozen=True)
class AudCodebook:
    """Per-device signatures (columns) and their transmitted symbols."""

    signatures: np.ndarray  # (m, n_devices)
    symbols: np.ndarray     # (n_devices,)

    def __post_init__(self):
        sig = as_matrix(self.signatures, "signatures")
        sym = as_vector(self.symbols, "symbols")
        if sym.size != sig.shape[1]:
            raise ValueError("one symbol per device is required")
        if np.any(np.linalg.norm(sig, axis=0) == 0):
            raise ValueError("signatures must be nonzero")
        if np.any(sym == 0):
            raise ValueError("symbols must be nonzero")
        object.__setattr__(self, "signatures", sig)
        object.__setattr__(self, "symbols", sym)

    @property
    def n_devices(self) -> int:
        return self.signatures.shape[1]

    @property
    def signature_length(self) -> int:
        return self.signatures.shape[0]


def make_gaussian_codebook(n_devices: int, length: int, rng,
                           symbols=None) -> AudCodebook:
    """Unit-norm complex-Gaussian signatures; unit symbols by default.

    With length < n_devices the signatures are only quasi-orthogonal, which
    is the regime where greedy detection earns its keep.
    """
    gen = as_generator(rng)
    sig = gen.standard_normal((length, n_devices)) + 1j * gen.standard_normal((length, n_devices))
    sig /= np.linalg.norm(sig, axis=0)[None, :]
    if symbols is None:
        symbols = np.ones(n_devices, dtype=np.complex128)
    return AudCodebook(sig, symbols)


@dataclass(frozen=True)
class RssMap:
    """Average received signal strength from every grid cell to every AP."""

    rss: np.ndarray          # (n_aps, n_cells)
    grid_shape: tuple
    ap_positions: np.ndarray
    cell_positions: np.ndarray
    path_loss_exponent: float

    def __post_init__(self):
        object.__setattr__(self, "rss", as_matrix(self.rss, "rss"))


def make_rss_map(grid_side: int, n_aps: int, rng, area: float = 100.0,
                 path_loss_exponent: float = 3.0, ref_power_db: float = 0.0,
                 ref_distance: float = 1.0) -> RssMap:
    """Log-distance path-loss map over a square grid with random AP sites."""
    gen = as_generator(rng)
    coords = (np.arange(grid_side) + 0.5) * (area / grid_side)
    gx, gy = np.meshgrid(coords, coords, indexing="ij")
    cells = np.column_stack([gx.ravel(), gy.ravel()])
    aps = gen.uniform(0.0, area, size=(n_aps, 2))
    d = np.linalg.norm(aps[:, None, :] - cells[None, :, :], axis=2)
    d = np.maximum(d, ref_distance)
    rss = ref_power_db - 10.0 * path_loss_exponent * np.log10(d / ref_distance)
    return RssMap(rss, (grid_side, grid_side), aps, cells, path_loss_exponent)


def build_localization_model(rss_map: RssMap) -> MeasurementModel:
    """Sensing matrix whose column j is the RSS fingerprint of grid cell j."""
    return MeasurementModel(
        rss_map.rss, "rss-localization",
        info={"grid_shape": rss_map.grid_shape},
    )


@dataclass(frozen=True)
class MmWaveConfig:
    """Beam-trained MIMO link: array sizes, angular grids, beam books."""

    n_tx: int
    n_rx: int
    n_tx_bins: int
    n_rx_bins: int
    beamformers: np.ndarray  # (n_tx, T)
    combiners: np.ndarray    # (n_rx, Q)

    def __post_init__(self):
        F = as_matrix(self.beamformers, "beamformers")
        W = as_matrix(self.combiners, "combiners")
        if F.shape[0] != self.n_tx or W.shape[0] != self.n_rx:
            raise ValueError("beam books must match the array sizes")
        object.__setattr__(self, "beamformers", F)
        object.__setattr__(self, "combiners", W)

    @property
    def tx_steering(self) -> np.ndarray:
        return steering_grid(self.n_tx, self.n_tx_bins)

    @property
    def rx_steering(self) -> np.ndarray:
        return steering_grid(self.n_rx, self.n_rx_bins)


def make_mmwave_config(n_tx: int, n_rx: int, n_tx_bins: int, n_rx_bins: int,
                       n_tx_beams: int, n_rx_beams: int) -> MmWaveConfig:
    """Beams and combiners steered to equally spaced directions."""
    F = steering_grid(n_tx, n_tx_beams) * np.sqrt(n_tx)   # unit-modulus phased beams
    W = steering_grid(n_rx, n_rx_beams) * np.sqrt(n_rx)
    return MmWaveConfig(n_tx, n_rx, n_tx_bins, n_rx_bins, F, W)


def build_mmwave_model(cfg: MmWaveConfig) -> MeasurementModel:
    """Kronecker training model for joint departure/arrival bin recovery.

    Stacking the combined observations of all beam transmissions gives
    y = ((F^T conj(A_t)) kron (W^H A_r)) s + v where s vectorizes the
    path-gain matrix column-major, so unknown index i + n_rx_bins * j maps
    to (arrival bin i, departure bin j).
    """
    At = cfg.tx_steering
    Ar = cfg.rx_steering
    left = cfg.beamformers.T @ At.conj()
    right = cfg.combiners.conj().T @ Ar
    H = np.kron(left, right)
    return MeasurementModel(
        H, "mmwave-beam-training",
        info={"n_rx_bins": cfg.n_rx_bins, "n_tx_bins": cfg.n_tx_bins},
    )


def mmwave_pair_to_index(rx_bin: int, tx_bin: int, n_rx_bins: int) -> int:
    """Flatten an (arrival, departure) bin pair column-major."""
    return int(rx_bin + n_rx_bins * tx_bin)


def mmwave_index_to_pair(index: int, n_rx_bins: int) -> tuple:
    """Invert the column-major flattening back to (arrival, departure)."""
    return int(index % n_rx_bins), int(index // n_rx_bins)
