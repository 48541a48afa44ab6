// SPDX-License-Identifier: Apache-2.0
#include "rtmimo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "rtmimo/combiner.hpp"
#include "rtmimo/errors.hpp"

namespace rtmimo {

namespace {

Interleaver run_interleaver(const SimConfig& config) {
    RngStream stream(config.master_seed, {0, StreamRole::interleaver});
    return make_interleaver(config.frame_bits, stream);
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_integer(std::string_view text, std::string_view what) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value))
        throw ConfigError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("invalid boolean for " + std::string(what) + ": '" + std::string(text) + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

void SimConfig::validate() const {
    if (n == 0) throw ParameterError("config: n must be at least 1");
    if (n_rt == 0) throw ParameterError("config: n_rt must be at least 1");
    if (frame_bits < 2) throw ParameterError("config: frame_bits must be at least 2");
    if ((2 * frame_bits) % n != 0) {
        throw ParameterError("config: 2*frame_bits=" + std::to_string(2 * frame_bits) +
                             " is not a multiple of n=" + std::to_string(n));
    }
    if (max_frames == 0) throw ParameterError("config: max_frames must be at least 1");
    if (min_bit_errors == 0) throw ParameterError("config: min_bit_errors must be at least 1");
    if (turbo_iterations == 0) throw ParameterError("config: turbo_iterations must be at least 1");
    if (threads == 0) throw ParameterError("config: threads must be at least 1");
    if (!(sigma_h_sq > 0.0) || !std::isfinite(sigma_h_sq))
        throw ParameterError("config: sigma_h_sq must be positive");
    for (double s : snr_db_list)
        if (!std::isfinite(s)) throw ParameterError("config: SNR values must be finite");
}

ChannelParams SimConfig::channel_params(double snr_db) const {
    ChannelParams p{n, n_rt, sigma_h_sq, snr_db};
    p.validate();
    return p;
}

Simulator::Simulator(SimConfig config)
    : config_((config.validate(), std::move(config))),
      trellis_(code_for(config_.code)),
      interleaver_(run_interleaver(config_)) {}

FrameOutcome Simulator::simulate_frame(double snr_db, std::uint64_t frame_index) const {
    const ChannelParams params = config_.channel_params(snr_db);
    const std::size_t len = config_.frame_bits;
    const std::size_t n = config_.n;

    FrameOutcome out;
    RngStream data_stream(config_.master_seed, {frame_index, StreamRole::data});
    out.data.resize(len);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) word = data_stream.next_u64();
        out.data[i] = static_cast<Bit>((word >> (i % 64)) & 1u);
    }
    out.symbols = encode(out.data, trellis_, interleaver_);

    const double sigma_w_sq = config_.noiseless ? 0.0 : noise_variance_from_snr(params);
    RngStream channel_stream(config_.master_seed, {frame_index, StreamRole::channel});
    out.received.sigma_u_sq = sigma_u_sq(params);
    out.received.observations.reserve(out.symbols.symbols.size());

    // Block fading: fresh H for every N-symbol slot and every re-transmission.
    std::vector<MatchedFilterOutput> per_k(config_.n_rt);
    const std::span<const cplx> all(out.symbols.symbols);
    for (std::size_t slot = 0; slot * n < all.size(); ++slot) {
        const auto s = all.subspan(slot * n, n);
        for (std::size_t k = 0; k < config_.n_rt; ++k) {
            const ChannelRealization real = draw_realization(params, sigma_w_sq, channel_stream, k);
            per_k[k] = matched_filter(real, transmit(real, s));
        }
        const auto combined = combine(per_k, config_.n_rt);
        out.received.observations.insert(out.received.observations.end(), combined.begin(),
                                         combined.end());
    }

    out.decoded = decode(out.received, trellis_, interleaver_, config_.turbo_iterations);
    for (std::size_t i = 0; i < len; ++i) out.bit_errors += out.decoded.bits[i] != out.data[i];
    return out;
}

std::uint64_t Simulator::run_frame(double snr_db, std::uint64_t frame_index) const {
    try {
        return simulate_frame(snr_db, frame_index).bit_errors;
    } catch (const DegeneracyError& e) {
        throw DegeneracyError(std::string(e.what()) + " (replay: seed=" +
                              std::to_string(config_.master_seed) + " frame_index=" +
                              std::to_string(frame_index) + " snr_db=" + format_double(snr_db) + ")");
    }
}

BerRecord Simulator::run_point(double snr_db) const {
    const auto start = std::chrono::steady_clock::now();
    BerRecord rec;
    rec.snr_db = snr_db;
    rec.n = config_.n;
    rec.n_rt = config_.n_rt;
    rec.code = config_.code;
    rec.frame_bits = config_.frame_bits;
    rec.iterations = config_.turbo_iterations;

    std::vector<std::uint64_t> errors;
    std::vector<std::exception_ptr> failures;
    while (rec.frames_run < config_.max_frames && rec.bit_errors < config_.min_bit_errors) {
        const std::uint64_t first = rec.frames_run;
        const std::uint64_t count = std::min(kFrameChunk, config_.max_frames - first);
        errors.assign(count, 0);
        failures.assign(count, nullptr);

        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t j = next++; j < count; j = next++) {
                try {
                    errors[j] = run_frame(snr_db, first + j);
                } catch (...) {
                    failures[j] = std::current_exception();
                }
            }
        };
        {
            const std::size_t extra = std::min<std::size_t>(config_.threads, count) - 1;
            std::vector<std::jthread> pool;
            pool.reserve(extra);
            for (std::size_t t = 0; t < extra; ++t) pool.emplace_back(worker);
            worker();
        }
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);
        for (std::uint64_t e : errors) rec.bit_errors += e;
        rec.frames_run += count;
    }
    rec.bits_simulated = rec.frames_run * config_.frame_bits;
    rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_simulated);
    if (config_.record_timing) {
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

std::vector<BerRecord> Simulator::run_sweep() const {
    std::vector<BerRecord> out;
    out.reserve(config_.snr_db_list.size());
    for (double snr : config_.snr_db_list) out.push_back(run_point(snr));
    return out;
}

std::uint64_t run_frame(const SimConfig& config, double snr_db, std::uint64_t frame_index) {
    return Simulator(config).run_frame(snr_db, frame_index);
}

std::vector<BerRecord> run_sweep(const SimConfig& config) {
    if (config.snr_db_list.empty()) {
        config.validate();
        return {};
    }
    return Simulator(config).run_sweep();
}

void write_csv(std::span<const BerRecord> records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_double(r.snr_db) << ',' << r.n << ',' << r.n_rt << ',' << code_name(r.code)
            << ',' << r.frame_bits << ',' << r.iterations << ',' << r.frames_run << ','
            << r.bits_simulated << ',' << r.bit_errors << ',' << format_double(r.ber) << ','
            << format_double(r.wall_seconds) << '\n';
    }
}

void write_csv(std::span<const BerRecord> records, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(records, file);
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<BerRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader)
        throw ConfigError("CSV: missing or unexpected header");
    std::vector<BerRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11)
            throw ConfigError("CSV line " + std::to_string(line_no) + ": expected 11 fields");
        BerRecord r;
        r.snr_db = parse_double(f[0], "snr_db");
        r.n = parse_integer<std::size_t>(f[1], "n");
        r.n_rt = parse_integer<std::size_t>(f[2], "n_rt");
        try {
            r.code = parse_code_id(f[3]);
        } catch (const ParameterError& e) {
            throw ConfigError(std::string("CSV: ") + e.what());
        }
        r.frame_bits = parse_integer<std::size_t>(f[4], "frame_bits");
        r.iterations = parse_integer<std::size_t>(f[5], "iterations");
        r.frames_run = parse_integer<std::uint64_t>(f[6], "frames");
        r.bits_simulated = parse_integer<std::uint64_t>(f[7], "bits");
        r.bit_errors = parse_integer<std::uint64_t>(f[8], "bit_errors");
        r.ber = parse_double(f[9], "ber");
        r.wall_seconds = parse_double(f[10], "seconds");
        out.push_back(r);
    }
    return out;
}

std::vector<BerRecord> read_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "'");
    return read_csv(file);
}

std::vector<double> parse_snr_list(std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& item : split(text, ',')) out.push_back(parse_double(item, "snr_db"));
    return out;
}

void apply_config(std::istream& in, SimConfig& config) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const std::string where = "'" + key + "' (line " + std::to_string(line_no) + ")";

        if (key == "n") config.n = parse_integer<std::size_t>(value, where);
        else if (key == "n_rt") config.n_rt = parse_integer<std::size_t>(value, where);
        else if (key == "code") {
            try {
                config.code = parse_code_id(value);
            } catch (const ParameterError& e) {
                throw ConfigError(where + ": " + e.what());
            }
        }
        else if (key == "frame_bits") config.frame_bits = parse_integer<std::size_t>(value, where);
        else if (key == "snr_db") config.snr_db_list = parse_snr_list(value);
        else if (key == "max_frames") config.max_frames = parse_integer<std::uint64_t>(value, where);
        else if (key == "min_bit_errors") config.min_bit_errors = parse_integer<std::uint64_t>(value, where);
        else if (key == "turbo_iterations") config.turbo_iterations = parse_integer<std::size_t>(value, where);
        else if (key == "master_seed") config.master_seed = parse_integer<std::uint64_t>(value, where);
        else if (key == "output_path") config.output_path = value;
        else if (key == "sigma_h_sq") config.sigma_h_sq = parse_double(value, where);
        else if (key == "threads") config.threads = parse_integer<std::size_t>(value, where);
        else if (key == "record_timing") config.record_timing = parse_bool(value, where);
        else if (key == "noiseless") config.noiseless = parse_bool(value, where);
        else throw ConfigError("unknown config key " + where);
    }
}

SimConfig read_config(const std::filesystem::path& path, SimConfig base) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config '" + path.string() + "'");
    apply_config(file, base);
    return base;
}

}  // namespace rtmimo
