// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/combiner.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "rtmimo/errors.hpp"

namespace rtmimo {

MatchedFilterOutput matched_filter(const ChannelRealization& realization,
                                   std::span<const cplx> received) {
    const ComplexMatrix& h = realization.h;
    if (received.size() != h.rows()) {
        throw ParameterError("matched_filter: received length " + std::to_string(received.size()) +
                             " does not match " + std::to_string(h.rows()) + " antennas");
    }
    MatchedFilterOutput out{std::vector<cplx>(h.cols()), std::vector<double>(h.cols(), 0.0)};
    for (std::size_t j = 0; j < h.rows(); ++j) {
        const auto row = h.row(j);
        const cplx rj = received[j];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out.y[i] += std::conj(row[i]) * rj;
            out.f[i] += std::norm(row[i]);
        }
    }
    return out;
}

std::vector<CombinedObservation> combine(std::span<const MatchedFilterOutput> per_k,
                                         std::size_t n_rt) {
    if (per_k.empty()) throw ParameterError("combine: no matched-filter outputs");
    if (per_k.size() != n_rt) {
        throw ParameterError("combine: got " + std::to_string(per_k.size()) +
                             " outputs for n_rt=" + std::to_string(n_rt));
    }
    const std::size_t len = per_k.front().y.size();
    std::vector<CombinedObservation> out(len);
    for (const auto& mf : per_k) {
        if (mf.y.size() != len || mf.f.size() != len)
            throw ParameterError("combine: matched-filter outputs differ in length");
        for (std::size_t i = 0; i < len; ++i) {
            out[i].y += mf.y[i];
            out[i].f += mf.f[i];
        }
    }
    const double scale = 1.0 / static_cast<double>(n_rt);
    for (auto& o : out) {
        o.y *= scale;
        o.f *= scale;
    }
    return out;
}

DisturbancePower disturbance_power(const ChannelParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double s4 = params.sigma_h_sq * params.sigma_h_sq;
    return {16.0 * n * n * s4 / std::pow(10.0, 0.1 * params.snr_av_b_db),
            8.0 * s4 * n * (n - 1.0) / static_cast<double>(params.n_rt)};
}

double sigma_u_sq(const ChannelParams& params) {
    const auto p = disturbance_power(params);
    return p.noise + p.interference;
}

}  // namespace rtmimo
