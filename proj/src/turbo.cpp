// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/turbo.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "rtmimo/errors.hpp"

namespace rtmimo {

void RscCode::validate() const {
    if (memory == 0 || memory > 12) throw ParameterError("RscCode: memory must be in [1, 12]");
    const unsigned limit = 1u << (memory + 1);
    if (feedback_taps >= limit || feedforward_taps >= limit)
        throw ParameterError("RscCode: tap mask exceeds memory " + std::to_string(memory));
    if ((feedback_taps & 1u) == 0)
        throw ParameterError("RscCode: feedback polynomial must have a constant term");
    if (((feedback_taps | feedforward_taps) >> memory) == 0)
        throw ParameterError("RscCode: neither polynomial reaches degree " + std::to_string(memory));
    if (feedforward_taps == 0) throw ParameterError("RscCode: feedforward polynomial is zero");
}

RscCode four_state_code() { return {0b111, 0b101, 2}; }
RscCode sixteen_state_code() { return {0b10011, 0b11101, 4}; }

RscCode code_for(CodeId id) {
    return id == CodeId::four_state ? four_state_code() : sixteen_state_code();
}

std::string_view code_name(CodeId id) {
    return id == CodeId::four_state ? "4-state" : "16-state";
}

CodeId parse_code_id(std::string_view text) {
    if (text == "4-state" || text == "4state" || text == "4") return CodeId::four_state;
    if (text == "16-state" || text == "16state" || text == "16") return CodeId::sixteen_state;
    throw ParameterError("unknown code '" + std::string(text) + "' (expected 4-state or 16-state)");
}

// State bit k-1 holds the register value delayed by k (a_{t-k}).
Trellis::Trellis(const RscCode& code) : code_(code) {
    code.validate();
    const std::size_t states = code.num_states();
    const unsigned mask = static_cast<unsigned>(states - 1);
    outgoing_.resize(states);
    incoming_.resize(states);
    std::vector<std::size_t> in_count(states, 0);

    for (std::size_t s = 0; s < states; ++s) {
        for (Bit u = 0; u < 2; ++u) {
            const unsigned reg = static_cast<unsigned>(s);
            const unsigned fb = std::popcount((code.feedback_taps >> 1) & reg) & 1u;
            const unsigned a = u ^ fb;
            const unsigned parity =
                ((code.feedforward_taps & 1u) * a) ^ (std::popcount((code.feedforward_taps >> 1) & reg) & 1u);
            const std::size_t next = ((reg << 1) | a) & mask;
            outgoing_[s][u] = {next, static_cast<Bit>(parity), qpsk_symbol(u, static_cast<Bit>(parity))};
            if (in_count[next] >= 2) throw ParameterError("Trellis: state has more than two predecessors");
            incoming_[next][in_count[next]++] = {s, u};
        }
    }
    for (std::size_t s = 0; s < states; ++s) {
        if (in_count[s] != 2) throw ParameterError("Trellis: state is not reached by exactly two edges");
    }
}

Trellis build_trellis(const RscCode& code) { return Trellis(code); }

Interleaver::Interleaver(std::vector<std::size_t> permutation)
    : forward_(std::move(permutation)), inverse_(forward_.size(), forward_.size()) {
    for (std::size_t l = 0; l < forward_.size(); ++l) {
        const std::size_t i = forward_[l];
        if (i >= forward_.size() || inverse_[i] != forward_.size())
            throw ParameterError("Interleaver: input is not a permutation");
        inverse_[i] = l;
    }
}

void Interleaver::check_length(std::size_t n) const {
    if (n != forward_.size()) {
        throw ParameterError("Interleaver: length " + std::to_string(n) + " does not match " +
                             std::to_string(forward_.size()));
    }
}

Interleaver make_interleaver(std::size_t length, RngStream& stream) {
    if (length < 2) throw ParameterError("make_interleaver: length must be at least 2");
    std::vector<std::size_t> perm(length);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), stream.engine());
    return Interleaver(std::move(perm));
}

std::vector<cplx> encode_constituent(std::span<const Bit> bits, const Trellis& trellis) {
    std::vector<cplx> out;
    out.reserve(bits.size());
    std::size_t state = 0;
    for (Bit b : bits) {
        if (b > 1) throw ParameterError("encode: data bits must be 0 or 1");
        const Transition& t = trellis.transition(state, b);
        out.push_back(t.symbol);
        state = t.next_state;
    }
    return out;
}

FrameSymbols encode(std::span<const Bit> data_bits, const Trellis& trellis,
                    const Interleaver& interleaver) {
    if (data_bits.size() != interleaver.size()) {
        throw ParameterError("encode: " + std::to_string(data_bits.size()) +
                             " data bits for interleaver of length " + std::to_string(interleaver.size()));
    }
    FrameSymbols frame;
    frame.data_length = data_bits.size();
    frame.symbols = encode_constituent(data_bits, trellis);
    const auto permuted = interleaver.interleave(data_bits);
    const auto second = encode_constituent(permuted, trellis);
    frame.symbols.insert(frame.symbols.end(), second.begin(), second.end());
    return frame;
}

}  // namespace rtmimo
