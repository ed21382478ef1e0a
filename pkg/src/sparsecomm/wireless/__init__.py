"""Wireless scenario builders and end-to-end pipelines."""

from .builders import (
    AudCodebook,
    MeasurementModel,
    MmWaveConfig,
    MwcConfig,
    OfdmConfig,
    RssMap,
    build_angular_model,
    build_localization_model,
    build_mmwave_model,
    build_mwc_model,
    build_ofdm_pilot_model,
    build_toeplitz_pilot_model,
    make_gaussian_codebook,
    make_mmwave_config,
    make_mwc_config,
    make_rss_map,
    mmwave_index_to_pair,
    mmwave_pair_to_index,
    offband_projection,
    subcarrier_selection,
)
from .pipelines import (
    aud_pipeline,
    impulse_cancel_pipeline,
    residual_noise_threshold,
    sparse_error_detection_pipeline,
)

__all__ = [
    "MeasurementModel",
    "OfdmConfig",
    "MwcConfig",
    "AudCodebook",
    "RssMap",
    "MmWaveConfig",
    "build_toeplitz_pilot_model",
    "build_ofdm_pilot_model",
    "build_angular_model",
    "build_mwc_model",
    "build_localization_model",
    "build_mmwave_model",
    "make_mwc_config",
    "make_gaussian_codebook",
    "make_rss_map",
    "make_mmwave_config",
    "mmwave_index_to_pair",
    "mmwave_pair_to_index",
    "subcarrier_selection",
    "offband_projection",
    "impulse_cancel_pipeline",
    "aud_pipeline",
    "sparse_error_detection_pipeline",
    "residual_noise_threshold",
]
