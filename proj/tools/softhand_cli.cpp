#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "softhand/bench.hpp"
#include "softhand/calibrate.hpp"
#include "softhand/closure.hpp"
#include "softhand/errors.hpp"
#include "softhand/hand_spec_io.hpp"
#include "softhand/report_io.hpp"
#include "softhand/version.hpp"
#include "softhand/workspace.hpp"

namespace {

using namespace softhand;

HandConfig load_config(const std::string& path) {
    return path.empty() ? default_bpi_config() : load_hand_spec(path);
}

std::string config_label(const std::string& path) {
    return path.empty() ? "builtin-default" : path;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void finish_manifest(RunManifest& manifest) {
    write_text_file(join(manifest.out_dir, "manifest.json"), manifest_json(manifest));
    manifest.outputs.push_back("manifest.json");
    for (const auto& name : manifest.outputs)
        std::cout << "wrote " << join(manifest.out_dir, name) << "\n";
}

std::string vec_str(const Vec3& v) {
    return fmt_fixed(v.x()) + ", " + fmt_fixed(v.y()) + ", " + fmt_fixed(v.z());
}

// ----------------------------------------------------------------------- fk

void run_fk(const std::string& config_path, const std::string& finger_name, double theta1_deg,
            std::vector<double> theta23_deg, const std::string& svg_path) {
    const HandConfig config = load_config(config_path);
    const int fi = config.finger_index(finger_name);
    if (fi < 0)
        throw ValidationError("unknown finger '" + finger_name +
                              "' (expected thumb|index|middle|third|little)");
    const FingerConfig& finger = config.fingers[static_cast<size_t>(fi)];

    std::array<double, 3> angles{};
    bool clamped = false;
    if (!theta23_deg.empty()) {
        angles = {deg2rad(theta1_deg), deg2rad(theta23_deg.at(0)), deg2rad(theta23_deg.at(1))};
    } else {
        angles = couple_angles(deg2rad(theta1_deg), finger.joints);
        for (size_t j = 1; j < 3; ++j) {
            if (angles[j] > finger.joints[j].limit_angle_rad) {
                angles[j] = finger.joints[j].limit_angle_rad;
                clamped = true;
            }
        }
    }

    const FingerPose root_pose = finger_fk_root(finger, angles);
    const FingerPose hand_pose = finger_fk(finger, angles);

    std::cout << "finger: " << finger.name << "\n";
    std::cout << "theta_deg: " << fmt_fixed(rad2deg(angles[0])) << ", "
              << fmt_fixed(rad2deg(angles[1])) << ", " << fmt_fixed(rad2deg(angles[2]))
              << (clamped ? "  (coupled values clamped at joint limits)" : "") << "\n";
    std::cout << "root frame:\n";
    const char* labels[4] = {"MCP", "PIP", "DIP", "tip"};
    for (int k = 0; k < 4; ++k)
        std::cout << "  " << labels[k] << "_mm: "
                  << vec_str(root_pose.joint_positions[static_cast<size_t>(k)]) << "\n";
    std::cout << "hand frame:\n";
    std::cout << "  mount_mm: " << vec_str(finger.mount_position) << "\n";
    for (int k = 0; k < 4; ++k)
        std::cout << "  " << labels[k] << "_mm: "
                  << vec_str(hand_pose.joint_positions[static_cast<size_t>(k)]) << "\n";

    if (!svg_path.empty()) {
        write_text_file(svg_path, finger_svg(finger, root_pose));
        std::cout << "wrote " << svg_path << "\n";
    }
}

// ---------------------------------------------------------------- workspace

void run_workspace(const std::string& config_path, long samples, std::uint64_t seed,
                   const std::string& out_dir) {
    const HandConfig config = load_config(config_path);
    const WorkspaceCloud cloud = sample_workspace(config, samples, seed);
    const WorkspaceStats stats = workspace_stats(cloud);

    ensure_dir(out_dir);
    RunManifest manifest;
    manifest.subcommand = "workspace";
    manifest.config_path = config_label(config_path);
    manifest.has_seed = true;
    manifest.seed = seed;
    manifest.out_dir = out_dir;
    manifest.parameters = {{"samples", std::to_string(samples)}};

    write_text_file(join(out_dir, "workspace.csv"), workspace_csv(cloud));
    write_text_file(join(out_dir, "workspace_xy.svg"), workspace_svg(config, cloud, true));
    write_text_file(join(out_dir, "workspace_yz.svg"), workspace_svg(config, cloud, false));
    write_text_file(join(out_dir, "stats.csv"), workspace_stats_csv(stats));
    write_text_file(join(out_dir, "opposition.csv"), opposition_csv(stats));
    manifest.outputs = {"workspace.csv", "workspace_xy.svg", "workspace_yz.svg", "stats.csv",
                        "opposition.csv"};

    std::cout << "samples per finger: " << samples << "\n";
    for (const auto& f : stats.fingers)
        std::cout << f.finger << ": centroid_mm (" << vec_str(f.centroid) << "), flexion_depth_mm "
                  << fmt_fixed(f.flexion_depth_mm) << ", clamped " << f.clamped << "/" << f.count
                  << "\n";
    std::cout << "thumb-little centroid distance_mm: "
              << fmt_fixed(stats.thumb_little_centroid_distance_mm) << "\n";
    for (const auto& o : stats.opposition)
        std::cout << "thumb vs " << o.finger << ": min_distance_mm "
                  << fmt_fixed(o.min_distance_mm) << ", bbox_overlap_mm3 "
                  << fmt_fixed(o.bbox_overlap_volume_mm3) << "\n";
    finish_manifest(manifest);
}

// -------------------------------------------------------------------- grasp

GraspObject resolve_object(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        const std::vector<GraspObject> objects = load_objects_file(arg);
        if (objects.size() != 1)
            throw ValidationError("object file '" + arg + "' must contain exactly one object " +
                                  "(found " + std::to_string(objects.size()) + ")");
        return objects.front();
    }
    return builtin_object(arg);
}

void run_grasp(const std::string& config_path, const std::string& object_arg, double step_mm,
               double max_displacement_mm, const std::string& out_dir) {
    const HandConfig config = load_config(config_path);
    ClosureOptions options;
    options.step_mm = step_mm;
    options.max_displacement_mm = max_displacement_mm;

    GraspObject object;
    const bool has_object = object_arg != "none";
    if (has_object) object = resolve_object(object_arg);
    const GraspReport report = close_hand(config, has_object ? &object : nullptr, options);

    std::cout << "object: " << report.object_name << "\n";
    std::cout << "fingers_in_contact: " << report.fingers_in_contact << "\n";
    std::cout << "contacts: " << report.contacts.size() << "\n";
    std::cout << "holding_force_N: " << fmt_fixed(report.holding_force_N) << "\n";
    std::cout << "success: " << (report.success ? "true" : "false") << "\n";
    std::cout << "stop_reason: " << stop_reason_name(report.stop_reason) << "\n";
    std::cout << "all_joints_stopped: " << (report.all_joints_stopped ? "true" : "false") << "\n";
    std::cout << "final_displacement_mm: "
              << fmt_fixed(report.final_state.actuator_displacement_mm) << "\n";
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";

    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        RunManifest manifest;
        manifest.subcommand = "grasp";
        manifest.config_path = config_label(config_path);
        manifest.out_dir = out_dir;
        manifest.parameters = {{"object", object_arg},
                               {"step_mm", fmt_fixed(step_mm)},
                               {"max_displacement_mm", fmt_fixed(max_displacement_mm)}};
        write_text_file(join(out_dir, "trace.csv"), trace_csv(config, report));
        write_text_file(join(out_dir, "contacts.csv"), contacts_csv(config, report));
        write_text_file(join(out_dir, "grasp_xy.svg"),
                        grasp_svg(config, report, has_object ? &object : nullptr, true));
        write_text_file(join(out_dir, "grasp_yz.svg"),
                        grasp_svg(config, report, has_object ? &object : nullptr, false));
        manifest.outputs = {"trace.csv", "contacts.csv", "grasp_xy.svg", "grasp_yz.svg"};
        finish_manifest(manifest);
    }
}

// -------------------------------------------------------------------- bench

void run_bench_cmd(const std::string& config_path, const std::string& corpus_arg, int trials,
                   double jitter_mm, double jitter_deg, std::uint64_t seed,
                   const std::string& out_dir) {
    const HandConfig config = load_config(config_path);
    const std::vector<GraspObject> corpus =
        corpus_arg == "builtin" ? builtin_corpus() : load_objects_file(corpus_arg);

    BenchOptions options;
    options.trials = trials;
    options.jitter_mm = jitter_mm;
    options.jitter_deg = jitter_deg;
    options.seed = seed;
    const BenchResult result = run_bench(config, corpus, options);

    for (const auto& row : result.rows)
        std::cout << row.object << ": mean_contacts " << fmt_fixed(row.mean_contacts, 2)
                  << ", successes " << row.successes << "/" << row.trials << ", holding_N "
                  << fmt_fixed(row.mean_holding_N, 2) << "\n";
    std::cout << "overall: " << result.total_successes << "/" << result.total_trials
              << " success_rate " << fmt_fixed(result.success_rate, 4) << "\n";

    ensure_dir(out_dir);
    RunManifest manifest;
    manifest.subcommand = "bench";
    manifest.config_path = config_label(config_path);
    manifest.has_seed = true;
    manifest.seed = seed;
    manifest.out_dir = out_dir;
    manifest.parameters = {{"corpus", corpus_arg},
                           {"trials", std::to_string(trials)},
                           {"jitter_mm", fmt_fixed(jitter_mm)},
                           {"jitter_deg", fmt_fixed(jitter_deg)}};
    write_text_file(join(out_dir, "bench.csv"), bench_csv(result));
    write_text_file(join(out_dir, "bench.svg"), bench_svg(result));
    manifest.outputs = {"bench.csv", "bench.svg"};
    finish_manifest(manifest);
}

// ---------------------------------------------------------------- calibrate

int run_calibrate(const std::string& config_path, double target_holding, double target_finger,
                  const std::string& out_dir) {
    const HandConfig config = load_config(config_path);
    CalibrationTargets targets;
    targets.holding_N = target_holding;
    targets.finger_press_N = target_finger;
    const CalibrationResult result = calibrate(config, targets);

    std::cout << "pulley_radius_mm: " << fmt_fixed(result.pulley_radius_mm) << "\n";
    std::cout << "efficiency: " << fmt_fixed(result.efficiency) << "\n";
    std::cout << "holding_N: " << fmt_fixed(result.holding_N) << " (target "
              << fmt_fixed(target_holding, 2) << ", rel_err "
              << fmt_fixed(result.holding_rel_err, 4) << ")\n";
    std::cout << "press_N: " << fmt_fixed(result.press_N) << " (target "
              << fmt_fixed(target_finger, 2) << ", rel_err " << fmt_fixed(result.press_rel_err, 4)
              << ")\n";
    std::cout << "within_tolerance: " << (result.within_tolerance ? "true" : "false") << "\n";

    ensure_dir(out_dir);
    RunManifest manifest;
    manifest.subcommand = "calibrate";
    manifest.config_path = config_label(config_path);
    manifest.out_dir = out_dir;
    manifest.parameters = {{"target_holding_force_N", fmt_fixed(target_holding, 2)},
                           {"target_finger_force_N", fmt_fixed(target_finger, 2)}};
    write_text_file(join(out_dir, "calibration_curve.csv"),
                    calibration_curve_csv(result.curve));
    manifest.outputs = {"calibration_curve.csv"};
    if (result.within_tolerance) {
        write_text_file(join(out_dir, "overlay.json"), result.overlay_text);
        manifest.outputs.push_back("overlay.json");
    }
    finish_manifest(manifest);
    if (!result.within_tolerance) {
        std::cerr << "calibration failed to reach both targets; see calibration_curve.csv\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BPI SoftHand simulator: single-actuator adaptive-synergy hand"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int exit_status = 0;

    std::string config_path;
    std::string finger_name;
    double theta1_deg = 0.0;
    double theta2_deg = 0.0;
    double theta3_deg = 0.0;
    std::string fk_svg_path;
    auto* fk = app.add_subcommand("fk", "Forward kinematics of one finger");
    fk->add_option("--config", config_path, "hand-spec JSON (defaults to the built-in hand)");
    fk->add_option("--finger", finger_name, "thumb|index|middle|third|little")->required();
    fk->add_option("--theta1-deg", theta1_deg, "MCP angle; theta2/theta3 follow the coupling")
        ->required();
    auto* opt2 = fk->add_option("--theta2-deg", theta2_deg,
                                "explicit PIP angle (requires --theta3-deg)");
    auto* opt3 = fk->add_option("--theta3-deg", theta3_deg,
                                "explicit DIP angle (requires --theta2-deg)");
    opt2->needs(opt3);
    opt3->needs(opt2);
    fk->add_option("--svg", fk_svg_path, "write a side-view SVG of the posed finger");
    fk->callback([&]() {
        std::vector<double> theta23;
        if (opt2->count() > 0) theta23 = {theta2_deg, theta3_deg};
        run_fk(config_path, finger_name, theta1_deg, theta23, fk_svg_path);
    });

    long ws_samples = 10000;
    std::uint64_t ws_seed = 0;
    std::string ws_out = "out/workspace";
    auto* ws = app.add_subcommand("workspace", "Monte Carlo fingertip workspace");
    ws->add_option("--config", config_path, "hand-spec JSON");
    ws->add_option("--samples", ws_samples, "samples per finger")->check(CLI::PositiveNumber);
    ws->add_option("--seed", ws_seed, "RNG seed");
    ws->add_option("--out", ws_out, "output directory");
    ws->callback([&]() { run_workspace(config_path, ws_samples, ws_seed, ws_out); });

    std::string grasp_object = "none";
    double grasp_step = 0.05;
    double grasp_maxdisp = 200.0;
    std::string grasp_out;
    auto* grasp = app.add_subcommand("grasp", "Close the hand around one object");
    grasp->add_option("--config", config_path, "hand-spec JSON");
    grasp->add_option("--object", grasp_object,
                      "builtin object name, objects JSON with one entry, or 'none'");
    grasp->add_option("--step", grasp_step, "actuator displacement step, mm");
    grasp->add_option("--max-displacement", grasp_maxdisp, "actuator travel limit, mm");
    grasp->add_option("--out", grasp_out, "directory for trace CSV and SVG snapshots");
    grasp->callback(
        [&]() { run_grasp(config_path, grasp_object, grasp_step, grasp_maxdisp, grasp_out); });

    std::string bench_corpus = "builtin";
    int bench_trials = 5;
    double bench_jitter_mm = 5.0;
    double bench_jitter_deg = 10.0;
    std::uint64_t bench_seed = 0;
    std::string bench_out = "out/bench";
    auto* bench = app.add_subcommand("bench", "Grasp bench over an object corpus");
    bench->add_option("--config", config_path, "hand-spec JSON");
    bench->add_option("--corpus", bench_corpus, "objects JSON or 'builtin'");
    bench->add_option("--trials", bench_trials, "trials per object")->check(CLI::PositiveNumber);
    bench->add_option("--jitter", bench_jitter_mm, "pose jitter, +/- mm in the palm plane");
    bench->add_option("--jitter-deg", bench_jitter_deg, "pose jitter, +/- deg yaw");
    bench->add_option("--seed", bench_seed, "RNG seed");
    bench->add_option("--out", bench_out, "output directory");
    bench->callback([&]() {
        run_bench_cmd(config_path, bench_corpus, bench_trials, bench_jitter_mm, bench_jitter_deg,
                      bench_seed, bench_out);
    });

    double target_holding = 19.8;
    double target_finger = 5.5;
    std::string cal_out = "out/calibrate";
    auto* cal = app.add_subcommand("calibrate", "Tune pulley radius and efficiency to the "
                                                "holding-force targets");
    cal->add_option("--config", config_path, "hand-spec JSON");
    cal->add_option("--target-holding-force", target_holding, "full-grasp target, N")
        ->check(CLI::PositiveNumber);
    cal->add_option("--target-finger-force", target_finger, "single-finger target, N")
        ->check(CLI::PositiveNumber);
    cal->add_option("--out", cal_out, "output directory");
    cal->callback([&]() {
        exit_status = run_calibrate(config_path, target_holding, target_finger, cal_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return exit_status;
}
