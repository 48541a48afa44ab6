// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/numerics.hpp"

#include <cmath>
#include <string>

#include "rtmimo/errors.hpp"

namespace rtmimo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Each coordinate is absorbed through a full SplitMix64 round before the
// four state words are squeezed out.
Xoshiro256pp seeded_engine(std::uint64_t master_seed, SubstreamId id) {
    std::uint64_t state = master_seed;
    std::uint64_t h = splitmix64(state);
    state = h ^ id.frame_index;
    h = splitmix64(state);
    state = h ^ static_cast<std::uint64_t>(id.role);
    splitmix64(state);
    const std::uint64_t s0 = splitmix64(state);
    const std::uint64_t s1 = splitmix64(state);
    const std::uint64_t s2 = splitmix64(state);
    const std::uint64_t s3 = splitmix64(state);
    return Xoshiro256pp(s0, s1, s2, s3);
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    for (auto& s : state_) s = splitmix64(seed);
}

void Xoshiro256pp::jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                              0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::uint64_t s[4] = {0, 0, 0, 0};
    for (std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b))
                for (int k = 0; k < 4; ++k) s[k] ^= state_[k];
            (*this)();
        }
    }
    for (int k = 0; k < 4; ++k) state_[k] = s[k];
}

RngStream::RngStream(std::uint64_t master_seed, SubstreamId id)
    : master_seed_(master_seed), id_(id), engine_(seeded_engine(master_seed, id)) {}

void fill_gaussian_complex(RngStream& stream, std::span<cplx> out, double variance_per_dim) {
    if (!(variance_per_dim > 0.0) || !std::isfinite(variance_per_dim)) {
        throw ParameterError("gaussian_complex: variance per dimension must be positive, got " +
                             std::to_string(variance_per_dim));
    }
    const double sd = std::sqrt(variance_per_dim);
    for (cplx& z : out) {
        const double re = stream.standard_normal();
        const double im = stream.standard_normal();
        z = cplx(sd * re, sd * im);
    }
}

std::vector<cplx> gaussian_complex(RngStream& stream, std::size_t n, double variance_per_dim) {
    if (n == 0) throw ParameterError("gaussian_complex: n must be at least 1");
    std::vector<cplx> out(n);
    fill_gaussian_complex(stream, out, variance_per_dim);
    return out;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw ParameterError("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ParameterError("ComplexMatrix: dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw ParameterError("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
    return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

ComplexMatrix hermitian_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ParameterError("hermitian_times: row mismatch " + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()));
    }
    ComplexMatrix out(a.cols(), b.cols());
    // Accumulate row by row so both operands are walked contiguously.
    for (std::size_t l = 0; l < a.rows(); ++l) {
        const auto arow = a.row(l);
        const auto brow = b.row(l);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const cplx ai = std::conj(arow[i]);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ai * brow[j];
        }
    }
    return out;
}

std::vector<cplx> multiply(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) {
        throw ParameterError("multiply: matrix has " + std::to_string(a.cols()) +
                             " columns, vector has " + std::to_string(x.size()) + " entries");
    }
    std::vector<cplx> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        cplx acc = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
    return out;
}

std::vector<cplx> hermitian_multiply(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.rows() != x.size()) {
        throw ParameterError("hermitian_multiply: matrix has " + std::to_string(a.rows()) +
                             " rows, vector has " + std::to_string(x.size()) + " entries");
    }
    std::vector<cplx> out(a.cols());
    for (std::size_t l = 0; l < a.rows(); ++l) {
        const auto row = a.row(l);
        const cplx xl = x[l];
        for (std::size_t i = 0; i < row.size(); ++i) out[i] += std::conj(row[i]) * xl;
    }
    return out;
}

}  // namespace rtmimo
