// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <numbers>

namespace rtmimo {

/// Minimum SNR per bit for error-free transmission of C bits per complex dimension.
struct CapacityPoint {
    double c = 0.0;           ///< bits per transmission per complex dimension
    double snr_av_b = 0.0;    ///< linear
    double snr_av_b_db = 0.0;
};

/// Limit of (2^C − 1)/C as C → 0⁺.
inline constexpr double kShannonLimitSnrPerBit = std::numbers::ln2;

/// 10·log10(ln 2) ≈ −1.5917 dB.
double shannon_limit_db();

/// (2^C − 1)/C, evaluated through expm1 so small C does not cancel.
CapacityPoint min_snr_per_bit(double c);

/// Information carried by one QPSK symbol: 1/(2·N_rt) bits.
double bits_per_symbol(std::size_t n_rt);

/// Information per vector transmission: N/(2·N_rt) bits/s/Hz.
double spectral_efficiency(std::size_t n, std::size_t n_rt);

}  // namespace rtmimo
