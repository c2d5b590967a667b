#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "softhand/bench.hpp"
#include "softhand/calibrate.hpp"
#include "softhand/closure.hpp"
#include "softhand/workspace.hpp"

namespace softhand {

// Fixed-point decimal with '.' separator, independent of the process locale;
// all CSV output goes through this so reruns are byte-identical.
std::string fmt_fixed(double v, int decimals = 6);

// ---- CSV ----
std::string workspace_csv(const WorkspaceCloud& cloud);
std::string workspace_stats_csv(const WorkspaceStats& stats);
std::string opposition_csv(const WorkspaceStats& stats);
std::string trace_csv(const HandConfig& config, const GraspReport& report);
std::string contacts_csv(const HandConfig& config, const GraspReport& report);
std::string bench_csv(const BenchResult& result);
std::string calibration_curve_csv(const std::vector<CurveSample>& curve);

// ---- SVG (1 mm = 1 px) ----
// top_view: palm plane (X right, Y up); otherwise side view (Y right, Z up).
std::string workspace_svg(const HandConfig& config, const WorkspaceCloud& cloud, bool top_view);
std::string grasp_svg(const HandConfig& config, const GraspReport& report,
                      const GraspObject* object, bool top_view);
std::string finger_svg(const FingerConfig& finger, const FingerPose& pose);  // root-frame side view
std::string bench_svg(const BenchResult& result);

// ---- files & manifest ----
void write_text_file(const std::string& path, const std::string& content);  // IoError

struct RunManifest {
    std::string subcommand;
    std::string config_path = "builtin-default";
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> outputs;  // paths written, relative to out_dir
    std::vector<std::pair<std::string, std::string>> parameters;
};

std::string manifest_json(const RunManifest& m);  // adds tool version + UTC timestamp

}  // namespace softhand
