// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/channel.hpp"

#include <cmath>
#include <string>

#include "rtmimo/errors.hpp"

namespace rtmimo {

void ChannelParams::validate() const {
    if (n == 0) throw ParameterError("channel: antenna count n must be at least 1");
    if (n_rt == 0) throw ParameterError("channel: re-transmission count n_rt must be at least 1");
    if (!(sigma_h_sq > 0.0) || !std::isfinite(sigma_h_sq))
        throw ParameterError("channel: sigma_h_sq must be positive");
    if (!std::isfinite(snr_av_b_db)) throw ParameterError("channel: snr_av_b_db must be finite");
}

double noise_variance_from_snr(const ChannelParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double n_rt = static_cast<double>(params.n_rt);
    return n_rt * 4.0 * n * params.sigma_h_sq / std::pow(10.0, 0.1 * params.snr_av_b_db);
}

double snr_per_bit_db(const ChannelParams& params, double sigma_w_sq) {
    params.validate();
    if (!(sigma_w_sq > 0.0)) throw ParameterError("snr_per_bit_db: sigma_w_sq must be positive");
    const double n = static_cast<double>(params.n);
    const double n_rt = static_cast<double>(params.n_rt);
    return 10.0 * std::log10(4.0 * n * n_rt * params.sigma_h_sq / sigma_w_sq);
}

ChannelRealization draw_realization(const ChannelParams& params, double sigma_w_sq,
                                    RngStream& stream, std::size_t k) {
    params.validate();
    if (k >= params.n_rt) {
        throw ParameterError("draw_realization: k=" + std::to_string(k) +
                             " out of range for n_rt=" + std::to_string(params.n_rt));
    }
    if (sigma_w_sq < 0.0 || !std::isfinite(sigma_w_sq))
        throw ParameterError("draw_realization: sigma_w_sq must be non-negative");

    ChannelRealization out{ComplexMatrix(params.n, params.n), std::vector<cplx>(params.n), k};
    fill_gaussian_complex(stream, out.h.entries(), params.sigma_h_sq);
    if (sigma_w_sq > 0.0) fill_gaussian_complex(stream, out.w, sigma_w_sq);
    return out;
}

std::vector<cplx> transmit(const ChannelRealization& realization, std::span<const cplx> symbols) {
    if (realization.w.size() != realization.h.rows()) {
        throw ParameterError("transmit: noise length does not match channel rows");
    }
    std::vector<cplx> r = multiply(realization.h, symbols);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += realization.w[i];
    return r;
}

}  // namespace rtmimo
