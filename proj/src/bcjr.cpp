// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/bcjr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtmimo/errors.hpp"

namespace rtmimo {

namespace {

// Symbols indexed by symbol_index(systematic, parity).
const std::array<cplx, 4> kQpsk = {qpsk_symbol(0, 0), qpsk_symbol(0, 1), qpsk_symbol(1, 0),
                                   qpsk_symbol(1, 1)};

double prior_of(const BitProbabilities& p, Bit input) { return input ? p.minus : p.plus; }

double gamma_of(const Trellis& trellis, const GammaSet& g, std::size_t from, Bit input) {
    return g[symbol_index(input, trellis.transition(from, input).parity)];
}

void normalize_column(StateMetrics& m, std::size_t i, const char* who) {
    double sum = 0.0;
    for (std::size_t n = 0; n < m.states(); ++n) sum += m(i, n);
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw DegeneracyError(std::string(who) + ": state metrics vanished at step " + std::to_string(i));
    }
    const double inv = 1.0 / sum;
    for (std::size_t n = 0; n < m.states(); ++n) m(i, n) *= inv;
}

void check_lengths(std::span<const GammaSet> gammas, std::span<const BitProbabilities> priors) {
    if (gammas.size() != priors.size()) {
        throw ParameterError("bcjr: " + std::to_string(gammas.size()) + " gamma steps but " +
                             std::to_string(priors.size()) + " priors");
    }
}

}  // namespace

BitProbabilities normalized(BitProbabilities p) {
    const double sum = p.plus + p.minus;
    if (!(sum > 0.0) || !std::isfinite(sum)) throw DegeneracyError("bit probability pair vanished");
    return {p.plus / sum, p.minus / sum};
}

double branch_exponent(const CombinedObservation& obs, double sigma_u_sq, cplx symbol) {
    if (!(sigma_u_sq > 0.0)) throw ParameterError("branch metric: sigma_u_sq must be positive");
    return -std::norm(obs.y - obs.f * symbol) / (2.0 * sigma_u_sq);
}

double gamma(const CombinedObservation& obs, double sigma_u_sq, cplx symbol) {
    return std::exp(std::clamp(branch_exponent(obs, sigma_u_sq, symbol), kExponentFloor, 0.0));
}

std::vector<GammaSet> branch_metrics(std::span<const CombinedObservation> observations,
                                     double sigma_u_sq) {
    if (!(sigma_u_sq > 0.0)) throw ParameterError("branch metric: sigma_u_sq must be positive");
    std::vector<GammaSet> out(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        std::array<double, 4> e{};
        for (std::size_t s = 0; s < 4; ++s) e[s] = branch_exponent(observations[i], sigma_u_sq, kQpsk[s]);
        const double top = *std::max_element(e.begin(), e.end());
        for (std::size_t s = 0; s < 4; ++s) out[i][s] = std::exp(std::max(e[s] - top, kExponentFloor));
    }
    return out;
}

// The boundary column is all ones before normalization, i.e. 1/S afterwards.
StateMetrics forward(const Trellis& trellis, std::span<const GammaSet> gammas,
                     std::span<const BitProbabilities> priors) {
    check_lengths(gammas, priors);
    const std::size_t states = trellis.num_states();
    StateMetrics alpha(gammas.size() + 1, states);
    for (std::size_t n = 0; n < states; ++n) alpha(0, n) = 1.0 / static_cast<double>(states);

    for (std::size_t i = 0; i < gammas.size(); ++i) {
        for (std::size_t n = 0; n < states; ++n) {
            double acc = 0.0;
            for (const IncomingEdge& e : trellis.converging(n)) {
                acc += alpha(i, e.from_state) * gamma_of(trellis, gammas[i], e.from_state, e.input) *
                       prior_of(priors[i], e.input);
            }
            alpha(i + 1, n) = acc;
        }
        normalize_column(alpha, i + 1, "forward");
    }
    return alpha;
}

StateMetrics backward(const Trellis& trellis, std::span<const GammaSet> gammas,
                      std::span<const BitProbabilities> priors) {
    check_lengths(gammas, priors);
    const std::size_t states = trellis.num_states();
    const std::size_t steps = gammas.size();
    StateMetrics beta(steps + 1, states);
    for (std::size_t n = 0; n < states; ++n) beta(steps, n) = 1.0 / static_cast<double>(states);

    for (std::size_t i = steps; i-- > 0;) {
        for (std::size_t n = 0; n < states; ++n) {
            double acc = 0.0;
            for (Bit input = 0; input < 2; ++input) {
                const std::size_t m = trellis.transition(n, input).next_state;
                acc += beta(i + 1, m) * gamma_of(trellis, gammas[i], n, input) *
                       prior_of(priors[i], input);
            }
            beta(i, n) = acc;
        }
        normalize_column(beta, i, "backward");
    }
    return beta;
}

std::vector<BitProbabilities> extrinsic_sums(const Trellis& trellis, const StateMetrics& alphas,
                                             const StateMetrics& betas,
                                             std::span<const GammaSet> gammas) {
    const std::size_t steps = gammas.size();
    if (alphas.columns() != steps + 1 || betas.columns() != steps + 1)
        throw ParameterError("extrinsic: state metrics do not match the number of steps");
    std::vector<BitProbabilities> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        double plus = 0.0;
        double minus = 0.0;
        for (std::size_t n = 0; n < trellis.num_states(); ++n) {
            const double a = alphas(i, n);
            plus += a * gamma_of(trellis, gammas[i], n, 0) * betas(i + 1, trellis.successor_plus(n));
            minus += a * gamma_of(trellis, gammas[i], n, 1) * betas(i + 1, trellis.successor_minus(n));
        }
        out[i] = {plus, minus};
    }
    return out;
}

std::vector<BitProbabilities> extrinsic(const Trellis& trellis, const StateMetrics& alphas,
                                        const StateMetrics& betas,
                                        std::span<const GammaSet> gammas) {
    auto g = extrinsic_sums(trellis, alphas, betas, gammas);
    for (auto& p : g) p = normalized(p);
    return g;
}

std::vector<BitProbabilities> constituent_pass(const Trellis& trellis,
                                               std::span<const GammaSet> gammas,
                                               std::span<const BitProbabilities> priors) {
    const StateMetrics alpha = forward(trellis, gammas, priors);
    const StateMetrics beta = backward(trellis, gammas, priors);
    return extrinsic_sums(trellis, alpha, beta, gammas);
}

DecodeResult decode(const SoftFrame& frame, const Trellis& trellis, const Interleaver& interleaver,
                    std::size_t iterations) {
    if (iterations == 0) throw ParameterError("decode: iterations must be at least 1");
    const std::size_t len = interleaver.size();
    if (frame.observations.size() != 2 * len) {
        throw ParameterError("decode: expected " + std::to_string(2 * len) + " observations, got " +
                             std::to_string(frame.observations.size()));
    }
    const std::span<const CombinedObservation> obs(frame.observations);
    const auto gammas_first = branch_metrics(obs.first(len), frame.sigma_u_sq);
    const auto gammas_second = branch_metrics(obs.subspan(len), frame.sigma_u_sq);

    std::vector<BitProbabilities> prior_second(len);  // F₂, data order
    std::vector<BitProbabilities> ext_first;          // F₁, data order
    std::vector<BitProbabilities> g_first;

    for (std::size_t it = 0; it < iterations; ++it) {
        g_first = constituent_pass(trellis, gammas_first, prior_second);
        ext_first = g_first;
        for (auto& p : ext_first) p = normalized(p);
        if (it + 1 == iterations) break;

        const auto prior_interleaved = interleaver.interleave<BitProbabilities>(ext_first);
        auto ext_second = constituent_pass(trellis, gammas_second, prior_interleaved);
        for (auto& p : ext_second) p = normalized(p);
        prior_second = interleaver.deinterleave<BitProbabilities>(ext_second);
    }

    DecodeResult result;
    result.bits.resize(len);
    result.app.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        result.app[i] = normalized({g_first[i].plus * prior_second[i].plus,
                                    g_first[i].minus * prior_second[i].minus});
        result.bits[i] = result.app[i].minus > result.app[i].plus ? 1 : 0;
    }
    result.prior_second = std::move(prior_second);
    result.extrinsic_first = std::move(ext_first);
    return result;
}

}  // namespace rtmimo
