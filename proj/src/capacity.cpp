// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/capacity.hpp"

#include <cmath>
#include <string>

#include "rtmimo/errors.hpp"

namespace rtmimo {

double shannon_limit_db() { return 10.0 * std::log10(kShannonLimitSnrPerBit); }

CapacityPoint min_snr_per_bit(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw ParameterError("min_snr_per_bit: capacity must be positive, got " + std::to_string(c));
    const double snr = std::expm1(c * std::numbers::ln2) / c;
    return {c, snr, 10.0 * std::log10(snr)};
}

double bits_per_symbol(std::size_t n_rt) {
    if (n_rt == 0) throw ParameterError("bits_per_symbol: n_rt must be at least 1");
    return 1.0 / (2.0 * static_cast<double>(n_rt));
}

double spectral_efficiency(std::size_t n, std::size_t n_rt) {
    if (n == 0) throw ParameterError("spectral_efficiency: n must be at least 1");
    return static_cast<double>(n) * bits_per_symbol(n_rt);
}

}  // namespace rtmimo
