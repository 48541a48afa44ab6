// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "rtmimo/bcjr.hpp"
#include "rtmimo/capacity.hpp"
#include "rtmimo/channel.hpp"
#include "rtmimo/combiner.hpp"
#include "rtmimo/errors.hpp"
#include "rtmimo/harness.hpp"

namespace py = pybind11;
using namespace rtmimo;

namespace {

ChannelParams params_from(std::size_t n, std::size_t n_rt, double sigma_h_sq, double snr_db) {
    ChannelParams p{n, n_rt, sigma_h_sq, snr_db};
    p.validate();
    return p;
}

std::vector<Bit> to_bits(const std::vector<int>& bits) {
    std::vector<Bit> out;
    out.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) throw ParameterError("bits must be 0 or 1");
        out.push_back(static_cast<Bit>(b));
    }
    return out;
}

std::vector<int> from_bits(const std::vector<Bit>& bits) { return {bits.begin(), bits.end()}; }

}  // namespace

PYBIND11_MODULE(_rtmimo, m) {
    m.doc() = "Turbo-coded massive MIMO link simulator";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("n_rt", &SimConfig::n_rt)
        .def_property(
            "code", [](const SimConfig& c) { return std::string(code_name(c.code)); },
            [](SimConfig& c, const std::string& s) { c.code = parse_code_id(s); })
        .def_readwrite("frame_bits", &SimConfig::frame_bits)
        .def_readwrite("snr_db_list", &SimConfig::snr_db_list)
        .def_readwrite("max_frames", &SimConfig::max_frames)
        .def_readwrite("min_bit_errors", &SimConfig::min_bit_errors)
        .def_readwrite("turbo_iterations", &SimConfig::turbo_iterations)
        .def_readwrite("master_seed", &SimConfig::master_seed)
        .def_readwrite("sigma_h_sq", &SimConfig::sigma_h_sq)
        .def_readwrite("threads", &SimConfig::threads)
        .def_readwrite("record_timing", &SimConfig::record_timing)
        .def_readwrite("noiseless", &SimConfig::noiseless)
        .def("validate", &SimConfig::validate);

    py::class_<BerRecord>(m, "BerRecord")
        .def_readonly("snr_db", &BerRecord::snr_db)
        .def_readonly("n", &BerRecord::n)
        .def_readonly("n_rt", &BerRecord::n_rt)
        .def_property_readonly("code", [](const BerRecord& r) { return std::string(code_name(r.code)); })
        .def_readonly("frame_bits", &BerRecord::frame_bits)
        .def_readonly("iterations", &BerRecord::iterations)
        .def_readonly("frames_run", &BerRecord::frames_run)
        .def_readonly("bits_simulated", &BerRecord::bits_simulated)
        .def_readonly("bit_errors", &BerRecord::bit_errors)
        .def_readonly("ber", &BerRecord::ber)
        .def_readonly("wall_seconds", &BerRecord::wall_seconds)
        .def("__eq__", [](const BerRecord& a, const BerRecord& b) { return a == b; })
        .def("__repr__", [](const BerRecord& r) {
            std::ostringstream os;
            os << "BerRecord(snr_db=" << r.snr_db << ", frames=" << r.frames_run
               << ", bit_errors=" << r.bit_errors << ", ber=" << r.ber << ")";
            return os.str();
        });

    m.def("shannon_limit_db", &shannon_limit_db);
    m.def(
        "min_snr_per_bit",
        [](double c) {
            const auto p = min_snr_per_bit(c);
            return py::make_tuple(p.snr_av_b, p.snr_av_b_db);
        },
        py::arg("c"), "Returns (linear, dB) minimum SNR per bit for C bits per dimension.");
    m.def("bits_per_symbol", &bits_per_symbol, py::arg("n_rt"));
    m.def("spectral_efficiency", &spectral_efficiency, py::arg("n"), py::arg("n_rt"));

    m.def(
        "noise_variance_from_snr",
        [](std::size_t n, std::size_t n_rt, double snr_db, double sigma_h_sq) {
            return noise_variance_from_snr(params_from(n, n_rt, sigma_h_sq, snr_db));
        },
        py::arg("n"), py::arg("n_rt"), py::arg("snr_db"), py::arg("sigma_h_sq") = 0.5);
    m.def(
        "sigma_u_sq",
        [](std::size_t n, std::size_t n_rt, double snr_db, double sigma_h_sq) {
            return sigma_u_sq(params_from(n, n_rt, sigma_h_sq, snr_db));
        },
        py::arg("n"), py::arg("n_rt"), py::arg("snr_db"), py::arg("sigma_h_sq") = 0.5);

    m.def(
        "encode",
        [](const std::vector<int>& bits, const std::string& code, std::uint64_t seed) {
            const auto data = to_bits(bits);
            const Trellis t = build_trellis(code_for(parse_code_id(code)));
            RngStream s(seed, {0, StreamRole::interleaver});
            const Interleaver il = make_interleaver(data.size(), s);
            return encode(data, t, il).symbols;
        },
        py::arg("bits"), py::arg("code") = "4-state", py::arg("seed") = 1,
        "Turbo-encodes bits into 2L QPSK symbols using the interleaver drawn from seed.");
    m.def(
        "decode_frame",
        [](const std::vector<cplx>& y, const std::vector<double>& f, double sigma_u_sq_value,
           const std::string& code, std::uint64_t seed, std::size_t iterations) {
            if (y.size() != f.size() || y.size() % 2 != 0)
                throw ParameterError("decode_frame: y and f must have the same even length");
            SoftFrame frame;
            frame.sigma_u_sq = sigma_u_sq_value;
            for (std::size_t i = 0; i < y.size(); ++i) frame.observations.push_back({y[i], f[i]});
            const Trellis t = build_trellis(code_for(parse_code_id(code)));
            RngStream s(seed, {0, StreamRole::interleaver});
            const Interleaver il = make_interleaver(y.size() / 2, s);
            return from_bits(decode(frame, t, il, iterations).bits);
        },
        py::arg("y"), py::arg("f"), py::arg("sigma_u_sq"), py::arg("code") = "4-state",
        py::arg("seed") = 1, py::arg("iterations") = kDefaultTurboIterations);

    m.def(
        "simulate_frame",
        [](const SimConfig& cfg, double snr_db, std::uint64_t frame_index) {
            const auto o = Simulator(cfg).simulate_frame(snr_db, frame_index);
            py::dict d;
            d["data"] = from_bits(o.data);
            d["decoded"] = from_bits(o.decoded.bits);
            d["bit_errors"] = o.bit_errors;
            d["sigma_u_sq"] = o.received.sigma_u_sq;
            return d;
        },
        py::arg("config"), py::arg("snr_db"), py::arg("frame_index") = 0);
    m.def("run_frame", py::overload_cast<const SimConfig&, double, std::uint64_t>(&run_frame),
          py::arg("config"), py::arg("snr_db"), py::arg("frame_index") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_point", [](const SimConfig& cfg, double snr_db) { return Simulator(cfg).run_point(snr_db); },
        py::arg("config"), py::arg("snr_db"), py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep", py::overload_cast<const SimConfig&>(&run_sweep), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.def("write_csv", [](const std::vector<BerRecord>& records) {
        std::ostringstream os;
        write_csv(records, os);
        return os.str();
    });
    m.def("read_csv", [](const std::string& text) {
        std::istringstream is(text);
        return read_csv(is);
    });
}
