#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fec/sweep.hpp"

namespace {

std::vector<double> parse_ebn0_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo FER/UER sweeps for short LTE turbo-CRC codes"};

    std::size_t k = 0;
    std::string scheme, ebn0, osd_start, detection, out_path, format, config_path;
    std::uint64_t frames_max = 0, errors_min = 0, seed = 0;
    double eta = -1.0, accum_alpha = -1.0;
    std::size_t osd_order = 99, max_iters = 0;

    auto* k_opt = app.add_option("--k", k, "Code-block length (an LTE interleaver size)");
    auto* scheme_opt = app.add_option("--scheme", scheme,
                                      "Decoding scheme, e.g. STD, MLD, STD+OSD(2,1,0)+CRC-aided");
    auto* ebn0_opt = app.add_option("--ebn0", ebn0, "Comma-separated Eb/N0 list in dB");
    auto* fmax_opt = app.add_option("--frames-max", frames_max, "Frame cap per point");
    auto* emin_opt = app.add_option("--errors-min", errors_min, "Stop after this many frame errors");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    auto* eta_opt = app.add_option("--eta", eta, "NED rejection threshold");
    auto* order_opt = app.add_option("--osd-order", osd_order, "OSD re-encoding order (0..2)");
    auto* start_opt = app.add_option("--osd-start-iter", osd_start, "First OSD iteration (number or T)");
    auto* alpha_opt = app.add_option("--accum-alpha", accum_alpha, "LLR accumulation factor");
    auto* iters_opt = app.add_option("--max-iters", max_iters, "Turbo iteration cap");
    auto* det_opt = app.add_option("--detection", detection, "Error detection: crc, ned or genie");
    auto* out_opt = app.add_option("--out", out_path, "Output file (default stdout)");
    auto* format_opt = app.add_option("--format", format, "Output format: csv or json");
    app.add_option("--config", config_path, "JSON config file; its fields win over flags");

    CLI11_PARSE(app, argc, argv);

    try {
        fec::RawOptions flags;
        if (*k_opt) flags.k = k;
        if (*scheme_opt) flags.scheme = scheme;
        if (*ebn0_opt) flags.ebn0_db = parse_ebn0_list(ebn0);
        if (*fmax_opt) flags.max_frames = frames_max;
        if (*emin_opt) flags.min_frame_errors = errors_min;
        if (*seed_opt) flags.seed = seed;
        if (*eta_opt) flags.eta = eta;
        if (*order_opt) flags.osd_order = osd_order;
        if (*start_opt) flags.osd_start_iter = osd_start;
        if (*alpha_opt) flags.accum_alpha = accum_alpha;
        if (*iters_opt) flags.max_iters = max_iters;
        if (*det_opt) flags.detection = detection;
        if (*out_opt) flags.out_path = out_path;
        if (*format_opt) flags.format = format;

        fec::RawOptions merged = flags;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "error: cannot read config file '" << config_path << "'\n";
                return 1;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            std::vector<std::string> overridden;
            merged = fec::merge_options(flags, fec::options_from_json_text(buf.str()),
                                        &overridden);
            for (const std::string& name : overridden) {
                std::cerr << "warning: config file overrides --" << name << "\n";
            }
        }

        const fec::SweepSpec spec = fec::resolve_spec(merged);
        fec::run_sweep(spec, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
