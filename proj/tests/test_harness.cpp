// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rtmimo/errors.hpp"
#include "rtmimo/harness.hpp"

using namespace rtmimo;

namespace {
SimConfig small_config() {
    SimConfig c;
    c.n = 16;
    c.n_rt = 2;
    c.frame_bits = 256;
    c.max_frames = 40;
    c.min_bit_errors = 1000000;
    c.turbo_iterations = 6;
    c.master_seed = 2024;
    c.record_timing = false;
    return c;
}
}  // namespace

TEST_CASE("noise-free single-antenna frames decode without error") {
    SimConfig c = small_config();
    c.n = 1;
    c.n_rt = 1;
    c.noiseless = true;
    const Simulator sim(c);
    for (std::uint64_t f = 0; f < 10; ++f) CHECK(sim.run_frame(20.0, f) == 0);
}

TEST_CASE("frames are reproducible from (seed, frame_index)") {
    const SimConfig c = small_config();
    const Simulator sim(c);
    const auto a = sim.simulate_frame(2.0, 7);
    const auto b = sim.simulate_frame(2.0, 7);
    CHECK(a.data == b.data);
    CHECK(a.received.observations == b.received.observations);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(run_frame(c, 2.0, 7) == a.bit_errors);

    const auto other = sim.simulate_frame(2.0, 8);
    CHECK(other.data != a.data);
    CHECK(a.received.observations.size() == 2 * c.frame_bits);
    CHECK(a.received.sigma_u_sq == doctest::Approx(sigma_u_sq(c.channel_params(2.0))));
}

TEST_CASE("sweep bookkeeping") {
    SimConfig c = small_config();
    CHECK(run_sweep(c).empty());

    c.snr_db_list = {0.0, 1.0};
    c.max_frames = 200;
    c.min_bit_errors = 100;
    const auto recs = run_sweep(c);
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) {
        CHECK(r.frames_run < c.max_frames);
        CHECK(r.frames_run % kFrameChunk == 0);
        CHECK(r.bit_errors >= c.min_bit_errors);
        CHECK(r.bits_simulated == r.frames_run * c.frame_bits);
        CHECK(r.ber == static_cast<double>(r.bit_errors) / static_cast<double>(r.bits_simulated));
        CHECK(r.ber >= 0.0);
        CHECK(r.ber <= 1.0);
        CHECK(r.wall_seconds == 0.0);
    }

    c.max_frames = 5;
    c.min_bit_errors = 1000000;
    const auto capped = run_sweep(c);
    CHECK(capped[0].frames_run == 5);
}

TEST_CASE("worker count does not change results") {
    SimConfig c = small_config();
    c.snr_db_list = {1.5, 3.0};
    c.max_frames = 48;
    c.min_bit_errors = 200;
    const auto one = run_sweep(c);
    c.threads = 3;
    const auto three = run_sweep(c);
    CHECK(one == three);
}

TEST_CASE("BER falls with SNR and with re-transmissions") {
    SimConfig c = small_config();
    c.snr_db_list = {1.0, 2.0, 3.0};
    c.max_frames = 160;
    const auto rt2 = run_sweep(c);
    c.n_rt = 1;
    const auto rt1 = run_sweep(c);
    for (std::size_t i = 0; i + 1 < rt2.size(); ++i) {
        CHECK(rt2[i + 1].ber <= rt2[i].ber);
        CHECK(rt1[i + 1].ber <= rt1[i].ber);
    }
    for (std::size_t i = 1; i < rt2.size(); ++i) CHECK(rt2[i].ber <= rt1[i].ber);
}

TEST_CASE("config validation") {
    SimConfig c = small_config();
    c.n = 3;  // 512 symbols do not split into 3-antenna slots
    CHECK_THROWS_AS(c.validate(), ParameterError);
    CHECK_THROWS_AS(Simulator{c}, ParameterError);
    c = small_config();
    c.turbo_iterations = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = small_config();
    c.sigma_h_sq = -1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("CSV round trip and header") {
    std::vector<BerRecord> recs(2);
    recs[0] = {2.5, 16, 2, CodeId::four_state, 1024, 8, 100, 102400, 17, 17.0 / 102400, 1.25};
    recs[1] = {-0.1, 512, 4, CodeId::sixteen_state, 1024, 3, 7, 7168, 0, 0.0, 0.0};
    std::ostringstream out;
    write_csv(recs, out);
    const std::string text = out.str();
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(text.find("snr_db", 1) == std::string::npos);
    CHECK(text.find('\r') == std::string::npos);

    std::istringstream in(text);
    CHECK(read_csv(in) == recs);

    std::ostringstream empty;
    write_csv({}, empty);
    CHECK(empty.str() == std::string(kCsvHeader) + "\n");

    const auto path = std::filesystem::temp_directory_path() / "rtmimo_roundtrip.csv";
    write_csv(recs, path);
    CHECK(read_csv(path) == recs);
    std::filesystem::remove(path);

    std::istringstream bad("snr,n\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
}

TEST_CASE("config file parsing") {
    std::istringstream in(
        "# sweep\n"
        "n = 64\n"
        "n_rt=4\n"
        "code = 16-state\n"
        "frame_bits = 512   # trailing comment\n"
        "snr_db = 1, 2.5,4\n"
        "max_frames = 300\n"
        "min_bit_errors = 50\n"
        "turbo_iterations = 5\n"
        "master_seed = 99\n"
        "output_path = out.csv\n"
        "sigma_h_sq = 1.0\n"
        "threads = 2\n"
        "record_timing = false\n");
    SimConfig c;
    apply_config(in, c);
    CHECK(c.n == 64);
    CHECK(c.n_rt == 4);
    CHECK(c.code == CodeId::sixteen_state);
    CHECK(c.frame_bits == 512);
    CHECK(c.snr_db_list == std::vector<double>{1.0, 2.5, 4.0});
    CHECK(c.max_frames == 300);
    CHECK(c.min_bit_errors == 50);
    CHECK(c.turbo_iterations == 5);
    CHECK(c.master_seed == 99);
    CHECK(c.output_path == "out.csv");
    CHECK(c.sigma_h_sq == 1.0);
    CHECK(c.threads == 2);
    CHECK_FALSE(c.record_timing);

    std::istringstream unknown("n = 4\nantennas = 8\n");
    try {
        apply_config(unknown, c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("'antennas'") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream bad_value("n = four\n");
    CHECK_THROWS_AS(apply_config(bad_value, c), ConfigError);
    std::istringstream no_eq("n 4\n");
    CHECK_THROWS_AS(apply_config(no_eq, c), ConfigError);
    CHECK_THROWS_AS(read_config("/nonexistent/rtmimo.cfg"), ConfigError);
}
