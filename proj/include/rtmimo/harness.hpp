// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtmimo/bcjr.hpp"
#include "rtmimo/channel.hpp"
#include "rtmimo/turbo.hpp"

namespace rtmimo {

/// Frames are scheduled in chunks of this size; the stopping rule is checked
/// only between chunks so the outcome does not depend on the worker count.
inline constexpr std::uint64_t kFrameChunk = 16;

struct SimConfig {
    std::size_t n = 16;
    std::size_t n_rt = 2;
    CodeId code = CodeId::four_state;
    std::size_t frame_bits = 1024;  ///< L_d1; the frame carries 2·L_d1 QPSK symbols
    std::vector<double> snr_db_list;
    std::uint64_t max_frames = 10000;
    std::uint64_t min_bit_errors = 100;
    std::size_t turbo_iterations = kDefaultTurboIterations;
    std::uint64_t master_seed = 1;
    std::string output_path;  ///< empty: standard output
    double sigma_h_sq = 0.5;
    std::size_t threads = 1;
    bool record_timing = true;  ///< false writes 0 in the seconds column
    bool noiseless = false;     ///< force σ²_W = 0 (σ²_U keeps its analytic value)

    void validate() const;
    ChannelParams channel_params(double snr_db) const;
};

struct BerRecord {
    double snr_db = 0.0;
    std::size_t n = 0;
    std::size_t n_rt = 0;
    CodeId code = CodeId::four_state;
    std::size_t frame_bits = 0;
    std::size_t iterations = 0;
    std::uint64_t frames_run = 0;
    std::uint64_t bits_simulated = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double wall_seconds = 0.0;

    friend bool operator==(const BerRecord&, const BerRecord&) = default;
};

/// Everything produced while simulating one frame.
struct FrameOutcome {
    std::vector<Bit> data;
    FrameSymbols symbols;
    SoftFrame received;
    DecodeResult decoded;
    std::uint64_t bit_errors = 0;
};

/// Holds the trellis and interleaver shared by every frame of a run.
class Simulator {
public:
    explicit Simulator(SimConfig config);

    const SimConfig& config() const { return config_; }
    const Trellis& trellis() const { return trellis_; }
    const Interleaver& interleaver() const { return interleaver_; }

    /// Data, channel and noise draws depend only on (master_seed, frame_index).
    FrameOutcome simulate_frame(double snr_db, std::uint64_t frame_index) const;
    std::uint64_t run_frame(double snr_db, std::uint64_t frame_index) const;

    BerRecord run_point(double snr_db) const;
    std::vector<BerRecord> run_sweep() const;

private:
    SimConfig config_;
    Trellis trellis_;
    Interleaver interleaver_;
};

std::uint64_t run_frame(const SimConfig& config, double snr_db, std::uint64_t frame_index);
std::vector<BerRecord> run_sweep(const SimConfig& config);

inline constexpr std::string_view kCsvHeader =
    "snr_db,n,n_rt,code,frame_bits,iterations,frames,bits,bit_errors,ber,seconds";

void write_csv(std::span<const BerRecord> records, std::ostream& out);
void write_csv(std::span<const BerRecord> records, const std::filesystem::path& path);
std::vector<BerRecord> read_csv(std::istream& in);
std::vector<BerRecord> read_csv(const std::filesystem::path& path);

/// Parses "a,b,c" into dB values.
std::vector<double> parse_snr_list(std::string_view text);

/// Applies `key = value` lines onto `config`. Unknown keys and bad values
/// raise ConfigError naming the key and line.
void apply_config(std::istream& in, SimConfig& config);
SimConfig read_config(const std::filesystem::path& path, SimConfig base = {});

}  // namespace rtmimo
