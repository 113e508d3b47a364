#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fec/linksim.hpp"

namespace fec {

/// Raw options as they arrive from flags or a config file; unset fields fall
/// back to defaults during resolution.
struct RawOptions {
    std::optional<std::size_t> k;
    std::optional<std::string> scheme;
    std::optional<std::vector<double>> ebn0_db;
    std::optional<std::uint64_t> max_frames;
    std::optional<std::uint64_t> min_frame_errors;
    std::optional<std::uint64_t> seed;
    std::optional<double> eta;
    std::optional<std::size_t> osd_order;
    std::optional<std::string> osd_start_iter;  // number or "T"
    std::optional<double> accum_alpha;
    std::optional<std::size_t> max_iters;
    std::optional<std::string> detection;  // crc | ned | genie
    std::optional<std::string> out_path;
    std::optional<std::string> format;  // csv | json
};

struct SweepSpec {
    std::size_t k = 40;
    std::string scheme_name = "STD";
    SchemeConfig scheme;
    std::vector<double> ebn0_db;
    StopRule stop;
    std::uint64_t master_seed = 1;
    std::string out_path;  // empty: stdout
    std::string format = "csv";
};

/// Validates and resolves options into a runnable spec; throws with the
/// offending field named.
SweepSpec resolve_spec(const RawOptions& opts);

RawOptions options_from_json_text(const std::string& text);
std::string options_to_json_text(const SweepSpec& spec);

/// Merge: any field present in `file` overrides `flags`; returns the names of
/// overridden fields so the caller can warn.
RawOptions merge_options(const RawOptions& flags, const RawOptions& file,
                         std::vector<std::string>* overridden = nullptr);

std::string csv_header();
std::string csv_row(const SweepPoint& pt, const SweepSpec& spec);

/// JSON document for a (possibly partial) set of completed points.
std::string json_document(const std::vector<SweepPoint>& points, const SweepSpec& spec);

/// Runs every point (points run concurrently; emission is serialized in
/// Eb/N0 order). Writes to spec.out_path, or `fallback` when the path is
/// empty. Completed points are flushed as they finish.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, std::ostream& fallback);

}  // namespace fec
