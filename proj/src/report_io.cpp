#include "softhand/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "softhand/errors.hpp"
#include "softhand/version.hpp"

namespace softhand {

std::string fmt_fixed(double v, int decimals) {
    if (v == 0.0) v = 0.0;  // avoid "-0.000000"
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

// ------------------------------------------------------------------- CSV ----

std::string workspace_csv(const WorkspaceCloud& cloud) {
    std::ostringstream os;
    os << "finger,sample_id,theta1_deg,theta2_deg,theta3_deg,x_mm,y_mm,z_mm\n";
    for (size_t fi = 0; fi < cloud.per_finger.size(); ++fi)
        for (const auto& s : cloud.per_finger[fi]) {
            os << cloud.finger_names[fi] << ',' << s.id;
            for (double a : s.theta_rad) os << ',' << fmt_fixed(rad2deg(a));
            os << ',' << fmt_fixed(s.tip.x()) << ',' << fmt_fixed(s.tip.y()) << ','
               << fmt_fixed(s.tip.z()) << '\n';
        }
    return os.str();
}

std::string workspace_stats_csv(const WorkspaceStats& stats) {
    std::ostringstream os;
    os << "finger,count,clamped,centroid_x_mm,centroid_y_mm,centroid_z_mm,"
          "bbox_min_x_mm,bbox_min_y_mm,bbox_min_z_mm,"
          "bbox_max_x_mm,bbox_max_y_mm,bbox_max_z_mm,flexion_depth_mm\n";
    for (const auto& f : stats.fingers) {
        os << f.finger << ',' << f.count << ',' << f.clamped;
        for (int k = 0; k < 3; ++k) os << ',' << fmt_fixed(f.centroid[k]);
        for (int k = 0; k < 3; ++k) os << ',' << fmt_fixed(f.bbox_min[k]);
        for (int k = 0; k < 3; ++k) os << ',' << fmt_fixed(f.bbox_max[k]);
        os << ',' << fmt_fixed(f.flexion_depth_mm) << '\n';
    }
    return os.str();
}

std::string opposition_csv(const WorkspaceStats& stats) {
    std::ostringstream os;
    os << "finger,min_distance_mm,bbox_overlap_volume_mm3\n";
    for (const auto& o : stats.opposition)
        os << o.finger << ',' << fmt_fixed(o.min_distance_mm) << ','
           << fmt_fixed(o.bbox_overlap_volume_mm3) << '\n';
    return os.str();
}

std::string trace_csv(const HandConfig& config, const GraspReport& report) {
    std::ostringstream os;
    os << "record,displacement_mm,new_contacts";
    for (const auto& f : config.fingers)
        os << ',' << f.name << "_theta1_deg," << f.name << "_theta2_deg," << f.name
           << "_theta3_deg," << f.name << "_blocked";
    for (const auto& t : config.tendons) os << ",tension_" << t.id << "_N";
    os << '\n';
    for (size_t i = 0; i < report.trace.size(); ++i) {
        const TraceRecord& r = report.trace[i];
        os << i << ',' << fmt_fixed(r.displacement_mm) << ',' << r.new_contacts.size();
        for (size_t fi = 0; fi < config.fingers.size(); ++fi) {
            for (int j = 0; j < 3; ++j)
                os << ',' << fmt_fixed(rad2deg(r.state.joint_angles_rad[fi][j]));
            os << ',';
            for (int j = 0; j < 3; ++j) os << (r.state.joint_blocked[fi][j] ? '1' : '0');
        }
        for (double T : r.state.tendon_tension_N) os << ',' << fmt_fixed(T);
        os << '\n';
    }
    return os.str();
}

std::string contacts_csv(const HandConfig& config, const GraspReport& report) {
    std::ostringstream os;
    os << "finger,phalanx,primitive,at_displacement_mm,x_mm,y_mm,z_mm,nx,ny,nz,"
          "penetration_mm,normal_force_N\n";
    for (const auto& c : report.contacts) {
        os << config.fingers[static_cast<size_t>(c.finger)].name << ',' << c.phalanx << ','
           << c.primitive << ',' << fmt_fixed(c.at_displacement_mm);
        for (int k = 0; k < 3; ++k) os << ',' << fmt_fixed(c.point[k]);
        for (int k = 0; k < 3; ++k) os << ',' << fmt_fixed(c.normal[k]);
        os << ',' << fmt_fixed(c.penetration_mm) << ',' << fmt_fixed(c.normal_force_N) << '\n';
    }
    return os.str();
}

std::string bench_csv(const BenchResult& result) {
    std::ostringstream os;
    os << "object,mean_contacts,successes,trials,holding_force_N\n";
    for (const auto& row : result.rows)
        os << row.object << ',' << fmt_fixed(row.mean_contacts) << ',' << row.successes << ','
           << row.trials << ',' << fmt_fixed(row.mean_holding_N) << '\n';
    return os.str();
}

std::string calibration_curve_csv(const std::vector<CurveSample>& curve) {
    std::ostringstream os;
    os << "stage,pulley_radius_mm,efficiency,holding_N,press_N,sse\n";
    for (const auto& s : curve)
        os << s.stage << ',' << fmt_fixed(s.pulley_radius_mm) << ',' << fmt_fixed(s.efficiency)
           << ',' << fmt_fixed(s.holding_N) << ',' << fmt_fixed(s.press_N) << ','
           << fmt_fixed(s.sse) << '\n';
    return os.str();
}

// ------------------------------------------------------------------- SVG ----

namespace {

// Minimal SVG builder in world mm (1 mm = 1 px), v axis pointing up.
class SvgCanvas {
  public:
    SvgCanvas(double min_u, double min_v, double max_u, double max_v, double margin = 12.0)
        : min_u_(min_u - margin), min_v_(min_v - margin), max_u_(max_u + margin),
          max_v_(max_v + margin) {}

    double sx(double u) const { return u - min_u_; }
    double sy(double v) const { return max_v_ - v; }

    void line(double u1, double v1, double u2, double v2, const std::string& style) {
        body_ << "  <line x1=\"" << fmt_fixed(sx(u1), 2) << "\" y1=\"" << fmt_fixed(sy(v1), 2)
              << "\" x2=\"" << fmt_fixed(sx(u2), 2) << "\" y2=\"" << fmt_fixed(sy(v2), 2) << "\" "
              << style << "/>\n";
    }

    void circle(double u, double v, double r, const std::string& style) {
        body_ << "  <circle cx=\"" << fmt_fixed(sx(u), 2) << "\" cy=\"" << fmt_fixed(sy(v), 2)
              << "\" r=\"" << fmt_fixed(r, 2) << "\" " << style << "/>\n";
    }

    void rect(double u, double v, double w, double h, const std::string& style) {
        body_ << "  <rect x=\"" << fmt_fixed(sx(u), 2) << "\" y=\"" << fmt_fixed(sy(v + h), 2)
              << "\" width=\"" << fmt_fixed(w, 2) << "\" height=\"" << fmt_fixed(h, 2) << "\" "
              << style << "/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        body_ << "  <polygon points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << fmt_fixed(sx(pts[i].first), 2) << ',' << fmt_fixed(sy(pts[i].second), 2);
        }
        body_ << "\" " << style << "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        body_ << "  <polyline points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << fmt_fixed(sx(pts[i].first), 2) << ',' << fmt_fixed(sy(pts[i].second), 2);
        }
        body_ << "\" " << style << "/>\n";
    }

    void text(double u, double v, const std::string& s, const std::string& style) {
        body_ << "  <text x=\"" << fmt_fixed(sx(u), 2) << "\" y=\"" << fmt_fixed(sy(v), 2)
              << "\" " << style << ">" << s << "</text>\n";
    }

    std::string finish() const {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
           << fmt_fixed(max_u_ - min_u_, 2) << "\" height=\"" << fmt_fixed(max_v_ - min_v_, 2)
           << "\">\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

  private:
    double min_u_, min_v_, max_u_, max_v_;
    std::ostringstream body_;
};

const char* finger_color(const std::string& name) {
    if (name == "thumb") return "#d62728";
    if (name == "index") return "#1f77b4";
    if (name == "middle") return "#2ca02c";
    if (name == "third") return "#ff7f0e";
    return "#9467bd";  // little (and anything else)
}

// Project a hand-frame point onto the view plane.
std::pair<double, double> project(const Vec3& p, bool top_view) {
    return top_view ? std::make_pair(p.x(), p.y()) : std::make_pair(p.y(), p.z());
}

// Andrew monotone-chain hull of projected points, for box outlines.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                    const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

void draw_palm(SvgCanvas& svg, const HandConfig& config, bool top_view) {
    const std::string style = "fill=\"#f2f2f2\" stroke=\"#999999\" stroke-width=\"1\"";
    if (top_view)
        svg.rect(-0.5 * config.palm_width_mm, 0.0, config.palm_width_mm, config.palm_length_mm,
                 style);
    else
        svg.rect(0.0, -4.0, config.palm_length_mm, 4.0, style);  // side: palm slab below z=0
}

void draw_primitive(SvgCanvas& svg, const Primitive& prim, bool top_view,
                    const std::string& style) {
    if (std::holds_alternative<SpherePrim>(prim)) {
        const auto& s = std::get<SpherePrim>(prim);
        const auto c = project(s.center, top_view);
        svg.circle(c.first, c.second, s.radius, style);
    } else if (std::holds_alternative<CapsulePrim>(prim)) {
        const auto& cp = std::get<CapsulePrim>(prim);
        const auto a = project(cp.p0, top_view);
        const auto b = project(cp.p1, top_view);
        std::ostringstream st;
        st << style << " stroke-width=\"" << fmt_fixed(2.0 * cp.radius, 2)
           << "\" stroke-linecap=\"round\"";
        svg.line(a.first, a.second, b.first, b.second, st.str());
        if (std::hypot(a.first - b.first, a.second - b.second) < 1e-9)
            svg.circle(a.first, a.second, cp.radius, style);
    } else {
        const auto& bx = std::get<BoxPrim>(prim);
        std::vector<std::pair<double, double>> corners;
        for (int i = 0; i < 8; ++i) {
            const Vec3 sign((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0);
            const Vec3 p = bx.center + bx.rot * sign.cwiseProduct(bx.half).eval();
            corners.push_back(project(p, top_view));
        }
        svg.polygon(convex_hull(corners), style);
    }
}

void view_bounds(bool top_view, const HandConfig& config, double& min_u, double& min_v,
                 double& max_u, double& max_v) {
    const double reach = 130.0;  // finger length + radius headroom
    if (top_view) {
        min_u = -0.5 * config.palm_width_mm - reach * 0.5;
        max_u = 0.5 * config.palm_width_mm + reach * 0.5;
        min_v = -10.0;
        max_v = config.palm_length_mm + reach;
    } else {
        min_u = -10.0;
        max_u = config.palm_length_mm + reach;
        min_v = -20.0;
        max_v = reach;
    }
}

}  // namespace

std::string workspace_svg(const HandConfig& config, const WorkspaceCloud& cloud, bool top_view) {
    double min_u, min_v, max_u, max_v;
    view_bounds(top_view, config, min_u, min_v, max_u, max_v);
    for (const auto& samples : cloud.per_finger)
        for (const auto& s : samples) {
            const auto p = project(s.tip, top_view);
            min_u = std::min(min_u, p.first);
            max_u = std::max(max_u, p.first);
            min_v = std::min(min_v, p.second);
            max_v = std::max(max_v, p.second);
        }
    SvgCanvas svg(min_u, min_v, max_u, max_v);
    draw_palm(svg, config, top_view);
    for (size_t fi = 0; fi < cloud.per_finger.size(); ++fi) {
        std::ostringstream style;
        style << "fill=\"" << finger_color(cloud.finger_names[fi]) << "\" fill-opacity=\"0.5\"";
        for (const auto& s : cloud.per_finger[fi]) {
            const auto p = project(s.tip, top_view);
            svg.circle(p.first, p.second, 1.0, style.str());
        }
        svg.text(min_u + 4.0, max_v - 10.0 * static_cast<double>(fi) - 4.0,
                 cloud.finger_names[fi],
                 std::string("font-size=\"9\" fill=\"") + finger_color(cloud.finger_names[fi]) +
                     "\"");
    }
    return svg.finish();
}

std::string grasp_svg(const HandConfig& config, const GraspReport& report,
                      const GraspObject* object, bool top_view) {
    double min_u, min_v, max_u, max_v;
    view_bounds(top_view, config, min_u, min_v, max_u, max_v);
    SvgCanvas svg(min_u, min_v, max_u, max_v);
    draw_palm(svg, config, top_view);
    if (object != nullptr)
        for (const auto& prim : object->primitives)
            draw_primitive(svg, prim, top_view,
                           "fill=\"#bbbbbb\" fill-opacity=\"0.6\" stroke=\"#777777\"");
    for (size_t fi = 0; fi < report.final_poses.size(); ++fi) {
        const FingerPose& pose = report.final_poses[fi];
        const FingerConfig& f = config.fingers[fi];
        std::vector<std::pair<double, double>> pts;
        pts.push_back(project(f.mount_position, top_view));
        for (const Vec3& p : pose.joint_positions) pts.push_back(project(p, top_view));
        std::ostringstream style;
        style << "fill=\"none\" stroke=\"" << finger_color(f.name) << "\" stroke-width=\""
              << fmt_fixed(2.0 * f.phalanx_radius_mm, 2)
              << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" stroke-opacity=\"0.75\"";
        svg.polyline(pts, style.str());
    }
    for (const auto& c : report.contacts) {
        const auto p = project(c.point, top_view);
        svg.circle(p.first, p.second, 2.5, "fill=\"#000000\"");
    }
    return svg.finish();
}

std::string finger_svg(const FingerConfig& finger, const FingerPose& pose) {
    double reach = 0.0;
    for (double l : finger.phalanx_lengths_mm) reach += l;
    reach += finger.phalanx_radius_mm;
    SvgCanvas svg(-reach * 0.2, -reach, reach * 1.1, reach);
    svg.line(-reach * 0.2, 0.0, reach * 1.1, 0.0, "stroke=\"#cccccc\" stroke-width=\"0.5\"");
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    // Root frame: pointing axis right, curl axis up.
    for (const Vec3& p : pose.joint_positions) pts.push_back({p.x(), p.y()});
    std::ostringstream style;
    style << "fill=\"none\" stroke=\"" << finger_color(finger.name) << "\" stroke-width=\""
          << fmt_fixed(2.0 * finger.phalanx_radius_mm, 2)
          << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" stroke-opacity=\"0.8\"";
    svg.polyline(pts, style.str());
    for (const auto& p : pts) svg.circle(p.first, p.second, 1.5, "fill=\"#333333\"");
    return svg.finish();
}

std::string bench_svg(const BenchResult& result) {
    const double bar_w = 16.0, group_w = 44.0, chart_h = 150.0, label_h = 80.0;
    const double width = group_w * static_cast<double>(result.rows.size()) + 60.0;
    SvgCanvas svg(0.0, -label_h, width, chart_h + 30.0);
    svg.line(30.0, 0.0, width - 10.0, 0.0, "stroke=\"#333333\" stroke-width=\"1\"");
    svg.text(2.0, chart_h, "5", "font-size=\"9\" fill=\"#333333\"");
    svg.text(2.0, 0.0, "0", "font-size=\"9\" fill=\"#333333\"");
    for (size_t i = 0; i < result.rows.size(); ++i) {
        const BenchRow& row = result.rows[i];
        const double x0 = 34.0 + group_w * static_cast<double>(i);
        const double contacts_h = chart_h * row.mean_contacts / 5.0;
        const double success_h =
            row.trials > 0 ? chart_h * static_cast<double>(row.successes) /
                                 static_cast<double>(row.trials)
                           : 0.0;
        svg.rect(x0, 0.0, bar_w, contacts_h, "fill=\"#1f77b4\"");
        svg.rect(x0 + bar_w + 2.0, 0.0, bar_w, success_h, "fill=\"#ff7f0e\"");
        svg.text(x0, -10.0, row.object,
                 "font-size=\"8\" fill=\"#333333\" transform=\"rotate(45 " +
                     fmt_fixed(svg.sx(x0), 2) + " " + fmt_fixed(svg.sy(-10.0), 2) + ")\"");
    }
    svg.rect(34.0, chart_h + 12.0, 10.0, 8.0, "fill=\"#1f77b4\"");
    svg.text(48.0, chart_h + 12.0, "mean contacts (of 5)", "font-size=\"9\" fill=\"#333333\"");
    svg.rect(170.0, chart_h + 12.0, 10.0, 8.0, "fill=\"#ff7f0e\"");
    svg.text(184.0, chart_h + 12.0, "successes / trials", "font-size=\"9\" fill=\"#333333\"");
    return svg.finish();
}

// --------------------------------------------------------- files, manifest ----

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("failed writing: " + path);
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["tool_version"] = kVersion;
    j["subcommand"] = m.subcommand;
    j["config_path"] = m.config_path;
    if (m.has_seed)
        j["seed"] = m.seed;
    else
        j["seed"] = nullptr;
    j["out_dir"] = m.out_dir;
    j["outputs"] = m.outputs;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& kv : m.parameters) params[kv.first] = kv.second;
    j["parameters"] = params;
    char stamp[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["timestamp_utc"] = stamp;
    return j.dump(2) + "\n";
}

}  // namespace softhand
