// SPDX-License-Identifier: Apache-2.0
//
// rtmimo_sim: BER-vs-SNR sweep for turbo-coded massive MIMO with
// re-transmission combining. Writes one CSV row per SNR point.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rtmimo/errors.hpp"
#include "rtmimo/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo BER sweep for single-user massive MIMO with re-transmissions"};

    std::optional<std::string> config_path;
    std::optional<std::size_t> n, n_rt, frame_bits, iters, threads;
    std::optional<std::string> code, snr, out;
    std::optional<std::uint64_t> frames, min_errors, seed;
    bool no_timing = false;

    app.add_option("--config", config_path, "key = value config file; flags override it");
    app.add_option("--n", n, "antennas at each end (N)");
    app.add_option("--n-rt", n_rt, "re-transmissions per symbol vector (N_rt)");
    app.add_option("--code", code, "constituent code: 4-state or 16-state");
    app.add_option("--snr", snr, "comma-separated SNR per bit values in dB");
    app.add_option("--frames", frames, "maximum frames per SNR point");
    app.add_option("--min-errors", min_errors, "stop a point after this many bit errors");
    app.add_option("--iters", iters, "turbo iterations");
    app.add_option("--frame-bits", frame_bits, "data bits per frame (L_d1)");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out, "CSV output path (default: stdout)");
    app.add_option("--threads", threads, "worker threads; results do not depend on it");
    app.add_flag("--no-timing", no_timing, "write 0 in the seconds column");

    CLI11_PARSE(app, argc, argv);

    try {
        rtmimo::SimConfig cfg;
        if (config_path) cfg = rtmimo::read_config(*config_path);
        if (n) cfg.n = *n;
        if (n_rt) cfg.n_rt = *n_rt;
        if (code) cfg.code = rtmimo::parse_code_id(*code);
        if (snr) cfg.snr_db_list = rtmimo::parse_snr_list(*snr);
        if (frames) cfg.max_frames = *frames;
        if (min_errors) cfg.min_bit_errors = *min_errors;
        if (iters) cfg.turbo_iterations = *iters;
        if (frame_bits) cfg.frame_bits = *frame_bits;
        if (seed) cfg.master_seed = *seed;
        if (out) cfg.output_path = *out;
        if (threads) cfg.threads = *threads;
        if (no_timing) cfg.record_timing = false;
        cfg.validate();

        const auto records = rtmimo::run_sweep(cfg);
        if (cfg.output_path.empty()) {
            rtmimo::write_csv(records, std::cout);
        } else {
            rtmimo::write_csv(records, std::filesystem::path(cfg.output_path));
        }
    } catch (const std::exception& e) {
        std::cerr << "rtmimo_sim: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
