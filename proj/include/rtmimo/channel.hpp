// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rtmimo/numerics.hpp"

namespace rtmimo {

/// Average power of the {±1±j} alphabet.
inline constexpr double kQpskAveragePower = 2.0;

struct ChannelParams {
    std::size_t n = 16;         ///< antennas at each end
    std::size_t n_rt = 2;       ///< re-transmissions per symbol vector
    double sigma_h_sq = 0.5;    ///< fading variance per real dimension
    double snr_av_b_db = 4.0;   ///< average SNR per bit, dB

    void validate() const;
};

/// One re-transmission: N×N fading matrix, N noise samples, and its index k.
struct ChannelRealization {
    ComplexMatrix h;
    std::vector<cplx> w;
    std::size_t k = 0;
};

/// Noise variance per dimension that realises the requested SNR per bit:
/// σ²_W = N_rt · 4Nσ²_H / 10^(SNR/10).
double noise_variance_from_snr(const ChannelParams& params);

/// Inverse of noise_variance_from_snr: 10·log10(4·N·N_rt·σ²_H / σ²_W).
double snr_per_bit_db(const ChannelParams& params, double sigma_w_sq);

/// Draws H (variance σ²_H per dimension) then W (variance σ²_W per dimension)
/// from `stream`. sigma_w_sq == 0 yields a noiseless realization without
/// consuming noise draws.
ChannelRealization draw_realization(const ChannelParams& params, double sigma_w_sq,
                                    RngStream& stream, std::size_t k);

/// R = H·S + W.
std::vector<cplx> transmit(const ChannelRealization& realization, std::span<const cplx> symbols);

}  // namespace rtmimo
