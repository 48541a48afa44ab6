// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "rtmimo/combiner.hpp"
#include "rtmimo/turbo.hpp"

namespace rtmimo {

/// Branch-metric exponents are kept inside [kExponentFloor, 0].
inline constexpr double kExponentFloor = -30.0;

inline constexpr std::size_t kDefaultTurboIterations = 8;

/// Probability pair for one data bit: P(S_b = +1), P(S_b = −1).
struct BitProbabilities {
    double plus = 0.5;
    double minus = 0.5;

    friend bool operator==(const BitProbabilities&, const BitProbabilities&) = default;
};

/// Scales a pair to sum one. Throws DegeneracyError when both entries are zero.
BitProbabilities normalized(BitProbabilities p);

/// γ values of the four QPSK symbols at one trellis step, indexed by symbol_index().
using GammaSet = std::array<double, 4>;

/// Raw exponent −|y − f·S|² / (2σ²_U).
double branch_exponent(const CombinedObservation& obs, double sigma_u_sq, cplx symbol);

/// exp of the raw exponent clamped into [−30, 0].
double gamma(const CombinedObservation& obs, double sigma_u_sq, cplx symbol);

/// Per-step γ for all four symbols: exponents are shifted so the largest is 0,
/// then floored at −30, then exponentiated.
std::vector<GammaSet> branch_metrics(std::span<const CombinedObservation> observations,
                                     double sigma_u_sq);

/// α or β table, (steps + 1) columns of num_states entries, each column summing to one.
class StateMetrics {
public:
    StateMetrics(std::size_t columns, std::size_t states)
        : columns_(columns), states_(states), values_(columns * states, 0.0) {}

    std::size_t columns() const { return columns_; }
    std::size_t states() const { return states_; }

    double& operator()(std::size_t i, std::size_t n) { return values_[i * states_ + n]; }
    double operator()(std::size_t i, std::size_t n) const { return values_[i * states_ + n]; }
    std::span<const double> column(std::size_t i) const {
        return {values_.data() + i * states_, states_};
    }

private:
    std::size_t columns_;
    std::size_t states_;
    std::vector<double> values_;
};

/// Forward recursion. All states start equally likely; every column is normalized.
StateMetrics forward(const Trellis& trellis, std::span<const GammaSet> gammas,
                     std::span<const BitProbabilities> priors);

/// Backward recursion with a uniform final column.
StateMetrics backward(const Trellis& trellis, std::span<const GammaSet> gammas,
                      std::span<const BitProbabilities> priors);

/// Unnormalized G_{i±} = Σ_n α_{i,n} γ_{i,n,ρ±(n)} β_{i+1,ρ±(n)}.
std::vector<BitProbabilities> extrinsic_sums(const Trellis& trellis, const StateMetrics& alphas,
                                             const StateMetrics& betas,
                                             std::span<const GammaSet> gammas);

/// extrinsic_sums, normalized per bit.
std::vector<BitProbabilities> extrinsic(const Trellis& trellis, const StateMetrics& alphas,
                                        const StateMetrics& betas,
                                        std::span<const GammaSet> gammas);

/// One soft-in soft-out pass of a constituent decoder; returns G sums.
std::vector<BitProbabilities> constituent_pass(const Trellis& trellis,
                                               std::span<const GammaSet> gammas,
                                               std::span<const BitProbabilities> priors);

/// Receiver input for one frame: 2L combined observations and the analytic σ²_U.
struct SoftFrame {
    std::vector<CombinedObservation> observations;
    double sigma_u_sq = 1.0;
};

struct DecodeResult {
    std::vector<Bit> bits;                        ///< 0 ↔ +1, 1 ↔ −1
    std::vector<BitProbabilities> app;            ///< normalized posteriors
    std::vector<BitProbabilities> prior_second;   ///< F₂ used by the final decoder-1 pass
    std::vector<BitProbabilities> extrinsic_first;///< normalized F₁ of the final pass
};

/// Iterative turbo decoding. Each iteration runs decoder 1 then decoder 2;
/// the APP is taken from decoder 1 of the last iteration (G·F₂), so the final
/// decoder-2 pass is skipped. Ties resolve to +1.
DecodeResult decode(const SoftFrame& frame, const Trellis& trellis, const Interleaver& interleaver,
                    std::size_t iterations = kDefaultTurboIterations);

}  // namespace rtmimo
