// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "rtmimo/channel.hpp"
#include "rtmimo/numerics.hpp"

namespace rtmimo {

/// Matched-filter output of one re-transmission: y_k = Hᴴ·R and the real
/// diagonal gains f_k[i] = Σ_j |H_{j,i}|².
struct MatchedFilterOutput {
    std::vector<cplx> y;
    std::vector<double> f;
};

/// Effective scalar channel seen by one symbol after averaging: y = f·S + U.
struct CombinedObservation {
    cplx y;
    double f = 0.0;

    friend bool operator==(const CombinedObservation&, const CombinedObservation&) = default;
};

MatchedFilterOutput matched_filter(const ChannelRealization& realization,
                                   std::span<const cplx> received);

/// Per-symbol arithmetic mean over the re-transmissions. Throws when the list
/// is empty, its length differs from n_rt, or the outputs disagree in length.
std::vector<CombinedObservation> combine(std::span<const MatchedFilterOutput> per_k,
                                         std::size_t n_rt);

/// Analytic variance of the averaged interference-plus-noise term:
/// 16N²σ⁴_H / 10^(SNR/10) + 8σ⁴_H·N(N−1)/N_rt.
double sigma_u_sq(const ChannelParams& params);

/// The two summands of sigma_u_sq, for diagnostics.
struct DisturbancePower {
    double noise = 0.0;
    double interference = 0.0;
};
DisturbancePower disturbance_power(const ChannelParams& params);

}  // namespace rtmimo
