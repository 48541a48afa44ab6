// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/random/normal_distribution.hpp>

namespace rtmimo {

using cplx = std::complex<double>;

/// Purpose of a random substream inside one frame. Distinct roles never share draws.
enum class StreamRole : std::uint32_t {
    data = 1,
    channel = 2,
    interleaver = 3,
    test = 0xffff,
};

struct SubstreamId {
    std::uint64_t frame_index = 0;
    StreamRole role = StreamRole::data;
};

/// xoshiro256++ bit generator (Blackman & Vigna). Satisfies
/// UniformRandomBitGenerator; jump() advances by 2^128 draws.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0);
    Xoshiro256pp(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3)
        : state_{s0, s1, s2, s3} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    void jump();

    friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

/// Seeded random stream addressable by (master_seed, frame_index, role).
///
/// The generator state is a SplitMix64 hash of the three coordinates, so any
/// frame can be regenerated in isolation and in any order. Normals come from
/// the ziggurat sampler in Boost.Random.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, SubstreamId id);

    std::uint64_t master_seed() const { return master_seed_; }
    SubstreamId id() const { return id_; }

    std::uint64_t next_u64() { return engine_(); }
    double standard_normal() { return normal_(engine_); }

    Xoshiro256pp& engine() { return engine_; }

private:
    std::uint64_t master_seed_;
    SubstreamId id_;
    Xoshiro256pp engine_;
    boost::random::normal_distribution<double> normal_;
};

/// n complex samples with independent N(0, variance_per_dim) real and imaginary parts.
std::vector<cplx> gaussian_complex(RngStream& stream, std::size_t n, double variance_per_dim);

/// Fills `out` in place; same law as gaussian_complex.
void fill_gaussian_complex(RngStream& stream, std::span<cplx> out, double variance_per_dim);

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix column(std::span<const cplx> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> entries() { return data_; }
    std::span<const cplx> entries() const { return data_; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    ComplexMatrix conjugate_transpose() const;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// aᴴ·b. Throws ParameterError when a.rows() != b.rows().
ComplexMatrix hermitian_times(const ComplexMatrix& a, const ComplexMatrix& b);

/// a·x for a column vector x.
std::vector<cplx> multiply(const ComplexMatrix& a, std::span<const cplx> x);

/// aᴴ·x for a column vector x.
std::vector<cplx> hermitian_multiply(const ComplexMatrix& a, std::span<const cplx> x);

}  // namespace rtmimo
