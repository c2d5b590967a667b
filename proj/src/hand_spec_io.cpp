#include "softhand/hand_spec_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "softhand/errors.hpp"

namespace softhand {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& ctx, const std::string& msg) {
    throw ValidationError("hand-spec " + ctx + ": " + msg);
}

void expect_object(const json& j, const std::string& ctx) {
    if (!j.is_object()) bad(ctx, "expected an object");
}

void expect_keys(const json& j, const std::string& ctx, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad(ctx, "unknown key '" + it.key() + "'");
}

double as_number(const json& v, const std::string& ctx) {
    if (!v.is_number()) bad(ctx, "expected a number");
    return v.get<double>();
}

void read_num(const json& j, const std::string& ctx, const char* key, double& out) {
    if (j.contains(key)) out = as_number(j.at(key), ctx + "." + key);
}

void read_angle_deg(const json& j, const std::string& ctx, const char* key, double& out_rad) {
    if (j.contains(key)) out_rad = deg2rad(as_number(j.at(key), ctx + "." + key));
}

Vec3 as_vec3(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 3) bad(ctx, "expected an array of 3 numbers");
    return Vec3(as_number(v[0], ctx), as_number(v[1], ctx), as_number(v[2], ctx));
}

void apply_joint(const json& j, const std::string& ctx, JointParams& p, bool allow_name) {
    expect_object(j, ctx);
    std::set<std::string> allowed = {"moment_arm_mm",
                                     "coupling_m_mm",
                                     "rest_angle_deg",
                                     "limit_angle_deg",
                                     "restoring_stiffness_Nmm_per_rad",
                                     "restoring_preload_Nmm",
                                     "efficiency"};
    if (allow_name) allowed.insert("joint");
    expect_keys(j, ctx, allowed);
    read_num(j, ctx, "moment_arm_mm", p.moment_arm_mm);
    read_num(j, ctx, "coupling_m_mm", p.coupling_m_mm);
    read_angle_deg(j, ctx, "rest_angle_deg", p.rest_angle_rad);
    read_angle_deg(j, ctx, "limit_angle_deg", p.limit_angle_rad);
    read_num(j, ctx, "restoring_stiffness_Nmm_per_rad", p.restoring_stiffness);
    read_num(j, ctx, "restoring_preload_Nmm", p.restoring_preload);
    read_num(j, ctx, "efficiency", p.efficiency);
}

void apply_finger(const json& j, const std::string& ctx, FingerConfig& f) {
    expect_keys(j, ctx,
                {"name", "mount_position_mm", "mount_yaw_deg", "mount_pitch_deg", "mount_roll_deg",
                 "phalanx_lengths_mm", "phalanx_radius_mm", "joints"});
    if (j.contains("mount_position_mm"))
        f.mount_position = as_vec3(j.at("mount_position_mm"), ctx + ".mount_position_mm");
    read_angle_deg(j, ctx, "mount_yaw_deg", f.mount_yaw_rad);
    read_angle_deg(j, ctx, "mount_pitch_deg", f.mount_pitch_rad);
    read_angle_deg(j, ctx, "mount_roll_deg", f.mount_roll_rad);
    if (j.contains("phalanx_lengths_mm")) {
        const json& jl = j.at("phalanx_lengths_mm");
        if (!jl.is_array() || jl.size() != 4)
            bad(ctx + ".phalanx_lengths_mm", "expected an array of 4 numbers");
        for (size_t k = 0; k < 4; ++k)
            f.phalanx_lengths_mm[k] = as_number(jl[k], ctx + ".phalanx_lengths_mm");
    }
    read_num(j, ctx, "phalanx_radius_mm", f.phalanx_radius_mm);

    if (!j.contains("joints")) return;
    const json& ja = j.at("joints");
    if (!ja.is_array()) bad(ctx + ".joints", "expected an array");
    bool all_named = !ja.empty();
    for (const json& je : ja)
        if (!je.is_object() || !je.contains("joint")) all_named = false;
    if (all_named) {
        std::set<int> seen;
        for (const json& je : ja) {
            const json& name = je.at("joint");
            if (!name.is_string()) bad(ctx + ".joints", "'joint' must be MCP|PIP|DIP");
            const int id = static_cast<int>(joint_from_name(name.get<std::string>()));
            if (!seen.insert(id).second)
                bad(ctx + ".joints", "duplicate joint '" + name.get<std::string>() + "'");
            apply_joint(je, ctx + ".joints[" + name.get<std::string>() + "]",
                        f.joints[static_cast<size_t>(id)], true);
        }
    } else {
        // Positional form: a full joint list, MCP then PIP then DIP.
        if (ja.size() != 3) bad(ctx + ".joints", "finger must have exactly 3 joints");
        for (size_t k = 0; k < 3; ++k)
            apply_joint(ja[k], ctx + ".joints[" + std::to_string(k) + "]", f.joints[k], false);
    }
}

void apply_tendons(const json& ja, HandConfig& c) {
    if (!ja.is_array() || ja.empty()) bad("tendons", "expected a non-empty array");
    std::vector<TendonRoute> routes;
    for (size_t i = 0; i < ja.size(); ++i) {
        const json& jt = ja[i];
        const std::string ctx = "tendons[" + std::to_string(i) + "]";
        expect_object(jt, ctx);
        expect_keys(jt, ctx, {"id", "served", "spring_stiffness_N_per_mm", "pretension_N"});
        TendonRoute r;
        if (!jt.contains("id") || !jt.at("id").is_string()) bad(ctx, "requires a string 'id'");
        r.id = jt.at("id").get<std::string>();
        if (!jt.contains("served")) bad(ctx, "requires a 'served' list");
        const json& js = jt.at("served");
        if (!js.is_array() || js.empty()) bad(ctx + ".served", "expected a non-empty array");
        for (const json& je : js) {
            if (!je.is_array() || je.size() != 2 || !je[0].is_string() || !je[1].is_string())
                bad(ctx + ".served", "each entry must be a [finger, joint] name pair");
            TendonEntry e;
            const std::string fname = je[0].get<std::string>();
            e.finger = c.finger_index(fname);
            if (e.finger < 0) bad(ctx + ".served", "unknown finger '" + fname + "'");
            e.joint = joint_from_name(je[1].get<std::string>());
            r.served.push_back(e);
        }
        read_num(jt, ctx, "spring_stiffness_N_per_mm", r.spring_stiffness);
        read_num(jt, ctx, "pretension_N", r.pretension);
        routes.push_back(std::move(r));
    }
    c.tendons = std::move(routes);
}

// Sections apply in a fixed order (defaults before per-finger overrides), so
// the result does not depend on JSON key order.
void apply_spec_json(HandConfig& c, const json& spec) {
    expect_object(spec, "root");
    expect_keys(spec, "root",
                {"palm", "rest_dimensions", "friction_coefficient", "actuator", "joint_defaults",
                 "fingers", "tendons"});
    if (spec.contains("palm")) {
        const json& jp = spec.at("palm");
        expect_object(jp, "palm");
        expect_keys(jp, "palm", {"width_mm", "length_mm"});
        read_num(jp, "palm", "width_mm", c.palm_width_mm);
        read_num(jp, "palm", "length_mm", c.palm_length_mm);
    }
    if (spec.contains("rest_dimensions")) {
        const json& jr = spec.at("rest_dimensions");
        expect_object(jr, "rest_dimensions");
        expect_keys(jr, "rest_dimensions", {"overall_length_mm", "span_mm"});
        read_num(jr, "rest_dimensions", "overall_length_mm", c.overall_length_rest_mm);
        read_num(jr, "rest_dimensions", "span_mm", c.rest_span_mm);
    }
    read_num(spec, "root", "friction_coefficient", c.friction_coefficient);
    if (spec.contains("actuator")) {
        const json& jact = spec.at("actuator");
        expect_object(jact, "actuator");
        expect_keys(jact, "actuator", {"max_torque_Nm", "pulley_radius_mm"});
        if (jact.contains("max_torque_Nm"))
            c.actuator.max_torque_Nmm =
                1000.0 * as_number(jact.at("max_torque_Nm"), "actuator.max_torque_Nm");
        read_num(jact, "actuator", "pulley_radius_mm", c.actuator.pulley_radius_mm);
    }
    if (spec.contains("joint_defaults")) {
        for (auto& f : c.fingers)
            for (auto& p : f.joints) apply_joint(spec.at("joint_defaults"), "joint_defaults", p, false);
    }
    if (spec.contains("fingers")) {
        const json& jf = spec.at("fingers");
        if (!jf.is_array()) bad("fingers", "expected an array");
        for (const json& je : jf) {
            expect_object(je, "fingers[]");
            if (!je.contains("name") || !je.at("name").is_string())
                bad("fingers[]", "each finger override requires a string 'name'");
            const std::string name = je.at("name").get<std::string>();
            const int fi = c.finger_index(name);
            if (fi < 0) bad("fingers", "unknown finger '" + name + "'");
            apply_finger(je, "fingers[" + name + "]", c.fingers[static_cast<size_t>(fi)]);
        }
    }
    if (spec.contains("tendons")) apply_tendons(spec.at("tendons"), c);
}

json joint_to_json(const JointParams& p, JointId id) {
    return json{{"joint", joint_name(id)},
                {"moment_arm_mm", p.moment_arm_mm},
                {"coupling_m_mm", p.coupling_m_mm},
                {"rest_angle_deg", rad2deg(p.rest_angle_rad)},
                {"limit_angle_deg", rad2deg(p.limit_angle_rad)},
                {"restoring_stiffness_Nmm_per_rad", p.restoring_stiffness},
                {"restoring_preload_Nmm", p.restoring_preload},
                {"efficiency", p.efficiency}};
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

}  // namespace

HandConfig apply_spec_text(const HandConfig& base, const std::string& text) {
    json spec;
    try {
        spec = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("hand-spec parse error: ") + e.what());
    }
    HandConfig c = base;
    apply_spec_json(c, spec);
    validate(c);
    return c;
}

HandConfig config_from_spec_text(const std::string& text) {
    return apply_spec_text(default_bpi_config(), text);
}

HandConfig load_hand_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open hand-spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_spec_text(ss.str());
}

std::string config_to_spec_text(const HandConfig& c) {
    json j;
    j["palm"] = {{"width_mm", c.palm_width_mm}, {"length_mm", c.palm_length_mm}};
    j["rest_dimensions"] = {{"overall_length_mm", c.overall_length_rest_mm},
                            {"span_mm", c.rest_span_mm}};
    j["friction_coefficient"] = c.friction_coefficient;
    j["actuator"] = {{"max_torque_Nm", c.actuator.max_torque_Nmm / 1000.0},
                     {"pulley_radius_mm", c.actuator.pulley_radius_mm}};
    j["fingers"] = json::array();
    for (const auto& f : c.fingers) {
        json jf;
        jf["name"] = f.name;
        jf["mount_position_mm"] = {f.mount_position.x(), f.mount_position.y(),
                                   f.mount_position.z()};
        jf["mount_yaw_deg"] = rad2deg(f.mount_yaw_rad);
        jf["mount_pitch_deg"] = rad2deg(f.mount_pitch_rad);
        jf["mount_roll_deg"] = rad2deg(f.mount_roll_rad);
        jf["phalanx_lengths_mm"] = f.phalanx_lengths_mm;
        jf["phalanx_radius_mm"] = f.phalanx_radius_mm;
        jf["joints"] = json::array();
        for (size_t k = 0; k < 3; ++k)
            jf["joints"].push_back(joint_to_json(f.joints[k], static_cast<JointId>(k)));
        j["fingers"].push_back(std::move(jf));
    }
    j["tendons"] = json::array();
    for (const auto& r : c.tendons) {
        json jt;
        jt["id"] = r.id;
        jt["served"] = json::array();
        for (const auto& e : r.served)
            jt["served"].push_back(
                {c.fingers[static_cast<size_t>(e.finger)].name, joint_name(e.joint)});
        jt["spring_stiffness_N_per_mm"] = r.spring_stiffness;
        jt["pretension_N"] = r.pretension;
        j["tendons"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

void save_hand_spec(const std::string& path, const HandConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write hand-spec file: " + path);
    out << config_to_spec_text(config);
    if (!out) throw IoError("failed writing hand-spec file: " + path);
}

bool approx_equal(const HandConfig& a, const HandConfig& b, double tol) {
    if (!near(a.palm_width_mm, b.palm_width_mm, tol) ||
        !near(a.palm_length_mm, b.palm_length_mm, tol) ||
        !near(a.overall_length_rest_mm, b.overall_length_rest_mm, tol) ||
        !near(a.rest_span_mm, b.rest_span_mm, tol) ||
        !near(a.friction_coefficient, b.friction_coefficient, tol) ||
        !near(a.actuator.max_torque_Nmm, b.actuator.max_torque_Nmm, tol) ||
        !near(a.actuator.pulley_radius_mm, b.actuator.pulley_radius_mm, tol))
        return false;
    if (a.fingers.size() != b.fingers.size() || a.tendons.size() != b.tendons.size()) return false;
    for (size_t i = 0; i < a.fingers.size(); ++i) {
        const auto& fa = a.fingers[i];
        const auto& fb = b.fingers[i];
        if (fa.name != fb.name) return false;
        if ((fa.mount_position - fb.mount_position).norm() > tol) return false;
        if (!near(fa.mount_yaw_rad, fb.mount_yaw_rad, tol) ||
            !near(fa.mount_pitch_rad, fb.mount_pitch_rad, tol) ||
            !near(fa.mount_roll_rad, fb.mount_roll_rad, tol) ||
            !near(fa.phalanx_radius_mm, fb.phalanx_radius_mm, tol))
            return false;
        for (size_t k = 0; k < 4; ++k)
            if (!near(fa.phalanx_lengths_mm[k], fb.phalanx_lengths_mm[k], tol)) return false;
        for (size_t k = 0; k < 3; ++k) {
            const auto& pa = fa.joints[k];
            const auto& pb = fb.joints[k];
            if (!near(pa.moment_arm_mm, pb.moment_arm_mm, tol) ||
                !near(pa.coupling_m_mm, pb.coupling_m_mm, tol) ||
                !near(pa.rest_angle_rad, pb.rest_angle_rad, tol) ||
                !near(pa.limit_angle_rad, pb.limit_angle_rad, tol) ||
                !near(pa.restoring_stiffness, pb.restoring_stiffness, tol) ||
                !near(pa.restoring_preload, pb.restoring_preload, tol) ||
                !near(pa.efficiency, pb.efficiency, tol))
                return false;
        }
    }
    for (size_t t = 0; t < a.tendons.size(); ++t) {
        const auto& ra = a.tendons[t];
        const auto& rb = b.tendons[t];
        if (ra.id != rb.id || ra.served != rb.served) return false;
        if (!near(ra.spring_stiffness, rb.spring_stiffness, tol) ||
            !near(ra.pretension, rb.pretension, tol))
            return false;
    }
    return true;
}

}  // namespace softhand
