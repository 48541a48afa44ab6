// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtmimo/numerics.hpp"

namespace rtmimo {

using Bit = std::uint8_t;

/// Recursive systematic convolutional code G(D) = [1, ff(D)/fb(D)].
///
/// Tap masks are polynomials in D with bit k holding the coefficient of D^k,
/// e.g. 1 + D + D² is 0b111.
struct RscCode {
    unsigned feedback_taps = 0b111;
    unsigned feedforward_taps = 0b101;
    unsigned memory = 2;

    std::size_t num_states() const { return std::size_t{1} << memory; }
    void validate() const;
};

enum class CodeId { four_state, sixteen_state };

/// [1, (1+D²)/(1+D+D²)]
RscCode four_state_code();
/// [1, (1+D²+D³+D⁴)/(1+D+D⁴)]
RscCode sixteen_state_code();
RscCode code_for(CodeId id);

std::string_view code_name(CodeId id);
/// Accepts "4-state", "4state", "4", "16-state", "16state", "16".
CodeId parse_code_id(std::string_view text);

/// Data bit 0 maps to +1 and bit 1 to −1.
inline constexpr double antipodal(Bit b) { return b ? -1.0 : 1.0; }

/// Systematic bit on the real part, parity bit on the imaginary part.
inline cplx qpsk_symbol(Bit systematic, Bit parity) {
    return {antipodal(systematic), antipodal(parity)};
}

/// Index of a QPSK symbol in {0,1,2,3}: 2·systematic + parity.
inline constexpr std::size_t symbol_index(Bit systematic, Bit parity) {
    return 2u * systematic + parity;
}

struct Transition {
    std::size_t next_state = 0;
    Bit parity = 0;
    cplx symbol;
};

/// Predecessor edge: the transition from `from_state` on `input` lands here.
struct IncomingEdge {
    std::size_t from_state = 0;
    Bit input = 0;
};

/// Full state-transition table of an RSC code.
class Trellis {
public:
    explicit Trellis(const RscCode& code);

    std::size_t num_states() const { return outgoing_.size(); }
    const RscCode& code() const { return code_; }

    const Transition& transition(std::size_t state, Bit input) const {
        return outgoing_[state][input];
    }
    /// ρ⁺(n): successor on input +1 (data bit 0).
    std::size_t successor_plus(std::size_t state) const { return outgoing_[state][0].next_state; }
    /// ρ⁻(n): successor on input −1 (data bit 1).
    std::size_t successor_minus(std::size_t state) const { return outgoing_[state][1].next_state; }

    /// 𝒞_n: the two edges converging to `state`.
    const std::array<IncomingEdge, 2>& converging(std::size_t state) const {
        return incoming_[state];
    }
    /// 𝒟_n: the two states reached from `state` (inputs 0 then 1).
    std::array<std::size_t, 2> diverging(std::size_t state) const {
        return {outgoing_[state][0].next_state, outgoing_[state][1].next_state};
    }

private:
    RscCode code_;
    std::vector<std::array<Transition, 2>> outgoing_;
    std::vector<std::array<IncomingEdge, 2>> incoming_;
};

Trellis build_trellis(const RscCode& code);

/// Permutation used by the second encoder: interleaved[l] = data[forward()[l]].
class Interleaver {
public:
    explicit Interleaver(std::vector<std::size_t> permutation);

    std::size_t size() const { return forward_.size(); }
    std::span<const std::size_t> forward() const { return forward_; }
    std::span<const std::size_t> inverse() const { return inverse_; }

    template <class T>
    std::vector<T> interleave(std::span<const T> in) const {
        check_length(in.size());
        std::vector<T> out(in.size());
        for (std::size_t l = 0; l < out.size(); ++l) out[l] = in[forward_[l]];
        return out;
    }
    template <class T>
    std::vector<T> deinterleave(std::span<const T> in) const {
        check_length(in.size());
        std::vector<T> out(in.size());
        for (std::size_t l = 0; l < in.size(); ++l) out[forward_[l]] = in[l];
        return out;
    }

private:
    void check_length(std::size_t n) const;

    std::vector<std::size_t> forward_;
    std::vector<std::size_t> inverse_;
};

/// Uniform random permutation drawn from `stream`.
Interleaver make_interleaver(std::size_t length, RngStream& stream);

/// QPSK symbols of one frame: encoder-1 output in [0, L), encoder-2 in [L, 2L).
struct FrameSymbols {
    std::vector<cplx> symbols;
    std::size_t data_length = 0;

    std::span<const cplx> first() const { return {symbols.data(), data_length}; }
    std::span<const cplx> second() const { return {symbols.data() + data_length, data_length}; }
};

/// Runs one constituent encoder from state 0 without termination.
std::vector<cplx> encode_constituent(std::span<const Bit> bits, const Trellis& trellis);

FrameSymbols encode(std::span<const Bit> data_bits, const Trellis& trellis,
                    const Interleaver& interleaver);

}  // namespace rtmimo
