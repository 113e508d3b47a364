#include "fec/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace fec {

namespace {

using nlohmann::json;

Detection parse_detection(const std::string& s) {
    if (s == "crc") return Detection::crc;
    if (s == "ned") return Detection::ned;
    if (s == "genie") return Detection::genie;
    throw std::invalid_argument("detection: expected crc, ned or genie, got '" + s + "'");
}

std::string detection_name(Detection d) {
    switch (d) {
        case Detection::crc: return "crc";
        case Detection::ned: return "ned";
        case Detection::genie: return "genie";
    }
    return "?";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

}  // namespace

SweepSpec resolve_spec(const RawOptions& opts) {
    SweepSpec spec;
    spec.k = opts.k.value_or(40);
    if (!is_valid_block_length(spec.k)) {
        throw std::invalid_argument("k: " + std::to_string(spec.k) +
                                    " is not a supported block length");
    }
    spec.scheme_name = opts.scheme.value_or("STD");
    spec.scheme = parse_scheme(spec.scheme_name, spec.k);

    HybridConfig& hc = spec.scheme.hybrid;
    if (opts.max_iters) {
        if (*opts.max_iters < 1) throw std::invalid_argument("max-iters: must be >= 1");
        hc.t_max = *opts.max_iters;
    }
    if (opts.osd_order) hc.osd_order = *opts.osd_order;
    if (opts.osd_start_iter) {
        hc.start_iteration =
            (*opts.osd_start_iter == "T") ? hc.t_max : std::stoul(*opts.osd_start_iter);
    }
    if (opts.accum_alpha) hc.accum_alpha = *opts.accum_alpha;
    if (opts.detection) hc.detection = parse_detection(*opts.detection);
    if (opts.eta) {
        if (*opts.eta < 0.0 || *opts.eta > 1.0)
            throw std::invalid_argument("eta: must be within [0, 1]");
        hc.eta = *opts.eta;
    }
    if (spec.scheme.kind == SchemeConfig::Kind::hybrid) hc.validate();

    spec.ebn0_db = opts.ebn0_db.value_or(std::vector<double>{0.0, 1.0, 2.0, 3.0});
    if (spec.ebn0_db.empty() && opts.ebn0_db) {
        // an explicitly empty sweep is allowed: header-only output
    }
    if (opts.max_frames) spec.stop.max_frames = *opts.max_frames;
    if (opts.min_frame_errors) spec.stop.min_frame_errors = *opts.min_frame_errors;
    spec.master_seed = opts.seed.value_or(1);
    spec.out_path = opts.out_path.value_or("");
    spec.format = opts.format.value_or("csv");
    if (spec.format != "csv" && spec.format != "json") {
        throw std::invalid_argument("format: expected csv or json, got '" + spec.format + "'");
    }
    return spec;
}

RawOptions options_from_json_text(const std::string& text) {
    json j = json::parse(text);
    RawOptions o;
    if (j.contains("k")) o.k = j["k"].get<std::size_t>();
    if (j.contains("scheme")) o.scheme = j["scheme"].get<std::string>();
    if (j.contains("ebn0")) o.ebn0_db = j["ebn0"].get<std::vector<double>>();
    if (j.contains("frames_max")) o.max_frames = j["frames_max"].get<std::uint64_t>();
    if (j.contains("errors_min")) o.min_frame_errors = j["errors_min"].get<std::uint64_t>();
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("eta")) o.eta = j["eta"].get<double>();
    if (j.contains("osd_order")) o.osd_order = j["osd_order"].get<std::size_t>();
    if (j.contains("osd_start_iter")) {
        const json& v = j["osd_start_iter"];
        o.osd_start_iter = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::size_t>());
    }
    if (j.contains("accum_alpha")) o.accum_alpha = j["accum_alpha"].get<double>();
    if (j.contains("max_iters")) o.max_iters = j["max_iters"].get<std::size_t>();
    if (j.contains("detection")) o.detection = j["detection"].get<std::string>();
    if (j.contains("out")) o.out_path = j["out"].get<std::string>();
    if (j.contains("format")) o.format = j["format"].get<std::string>();
    return o;
}

std::string options_to_json_text(const SweepSpec& spec) {
    json j;
    j["k"] = spec.k;
    j["scheme"] = spec.scheme_name;
    j["ebn0"] = spec.ebn0_db;
    j["frames_max"] = spec.stop.max_frames;
    j["errors_min"] = spec.stop.min_frame_errors;
    j["seed"] = spec.master_seed;
    j["format"] = spec.format;
    if (spec.scheme.kind == SchemeConfig::Kind::hybrid) {
        const HybridConfig& hc = spec.scheme.hybrid;
        j["eta"] = hc.eta;
        j["osd_order"] = hc.osd_order;
        j["osd_start_iter"] = hc.start_iteration;
        j["accum_alpha"] = hc.accum_alpha;
        j["max_iters"] = hc.t_max;
        j["detection"] = detection_name(hc.detection);
    } else {
        j["max_iters"] = spec.scheme.hybrid.t_max;
    }
    return j.dump(2);
}

RawOptions merge_options(const RawOptions& flags, const RawOptions& file,
                         std::vector<std::string>* overridden) {
    RawOptions out = flags;
    auto take = [&](auto RawOptions::* field, const char* name) {
        if ((file.*field).has_value()) {
            if ((out.*field).has_value() && overridden) overridden->push_back(name);
            out.*field = file.*field;
        }
    };
    take(&RawOptions::k, "k");
    take(&RawOptions::scheme, "scheme");
    take(&RawOptions::ebn0_db, "ebn0");
    take(&RawOptions::max_frames, "frames_max");
    take(&RawOptions::min_frame_errors, "errors_min");
    take(&RawOptions::seed, "seed");
    take(&RawOptions::eta, "eta");
    take(&RawOptions::osd_order, "osd_order");
    take(&RawOptions::osd_start_iter, "osd_start_iter");
    take(&RawOptions::accum_alpha, "accum_alpha");
    take(&RawOptions::max_iters, "max_iters");
    take(&RawOptions::detection, "detection");
    take(&RawOptions::out_path, "out");
    take(&RawOptions::format, "format");
    return out;
}

std::string csv_header() {
    return "ebn0_db,frames,frame_errors,undetected_errors,fer,uer,seed,scheme,k";
}

std::string csv_row(const SweepPoint& pt, const SweepSpec& spec) {
    char head[160];
    std::snprintf(head, sizeof(head), "%g,%llu,%llu,%llu,", pt.ebn0_db,
                  static_cast<unsigned long long>(pt.frames_run),
                  static_cast<unsigned long long>(pt.frame_errors),
                  static_cast<unsigned long long>(pt.undetected_errors));
    std::string row = head;
    row += fmt(pt.fer) + "," + fmt(pt.uer) + ",";
    row += std::to_string(pt.seed) + ",\"" + spec.scheme_name + "\"," + std::to_string(spec.k);
    return row;
}

std::string json_document(const std::vector<SweepPoint>& points, const SweepSpec& spec) {
    json j;
    j["config"] = json::parse(options_to_json_text(spec));
    j["points"] = json::array();
    for (const SweepPoint& pt : points) {
        json p;
        p["ebn0_db"] = pt.ebn0_db;
        p["frames"] = pt.frames_run;
        p["frame_errors"] = pt.frame_errors;
        p["undetected_errors"] = pt.undetected_errors;
        p["fer"] = pt.fer;
        p["uer"] = pt.uer;
        p["seed"] = pt.seed;
        p["scheme"] = spec.scheme_name;
        p["k"] = spec.k;
        j["points"].push_back(p);
    }
    return j.dump(2);
}

namespace {

// Rewrites the whole target on every completed point so an interrupted run
// still leaves a well-formed file behind.
void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw std::runtime_error("out: cannot write to '" + path + "'");
    }
    f << content;
    f.flush();
}

}  // namespace

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, std::ostream& fallback) {
    const CodeConfig cfg = CodeConfig::for_block_length(spec.k);
    if (!spec.out_path.empty()) {
        // fail early on an unwritable path
        write_file(spec.out_path, spec.format == "csv" ? csv_header() + "\n"
                                                       : json_document({}, spec));
    }

    std::vector<std::future<SweepPoint>> futures;
    futures.reserve(spec.ebn0_db.size());
    for (std::size_t i = 0; i < spec.ebn0_db.size(); ++i) {
        const double ebn0 = spec.ebn0_db[i];
        const std::uint64_t seed = derive_seed(spec.master_seed, i);
        futures.push_back(std::async(std::launch::async, [&, ebn0, seed] {
            return run_point(spec.scheme, cfg, ebn0, spec.stop, seed);
        }));
    }

    std::vector<SweepPoint> points;
    std::string csv = csv_header() + "\n";
    if (spec.out_path.empty() && spec.format == "csv") fallback << csv;
    for (auto& fut : futures) {
        points.push_back(fut.get());
        if (spec.format == "csv") {
            const std::string row = csv_row(points.back(), spec) + "\n";
            csv += row;
            if (spec.out_path.empty()) {
                fallback << row << std::flush;
            } else {
                write_file(spec.out_path, csv);
            }
        } else {
            const std::string doc = json_document(points, spec);
            if (!spec.out_path.empty()) write_file(spec.out_path, doc);
        }
    }
    if (spec.format == "json" && spec.out_path.empty()) {
        fallback << json_document(points, spec) << "\n";
    }
    return points;
}

}  // namespace fec
