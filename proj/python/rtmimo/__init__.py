"""Turbo-coded massive MIMO link simulator with re-transmission combining."""

from ._rtmimo import (
    BerRecord,
    DegeneracyError,
    ParameterError,
    SimConfig,
    bits_per_symbol,
    decode_frame,
    encode,
    min_snr_per_bit,
    noise_variance_from_snr,
    read_csv,
    run_frame,
    run_point,
    run_sweep,
    shannon_limit_db,
    sigma_u_sq,
    simulate_frame,
    spectral_efficiency,
    write_csv,
)

__all__ = [
    "BerRecord",
    "DegeneracyError",
    "ParameterError",
    "SimConfig",
    "bits_per_symbol",
    "decode_frame",
    "encode",
    "min_snr_per_bit",
    "noise_variance_from_snr",
    "read_csv",
    "run_frame",
    "run_point",
    "run_sweep",
    "shannon_limit_db",
    "sigma_u_sq",
    "simulate_frame",
    "spectral_efficiency",
    "write_csv",
]
