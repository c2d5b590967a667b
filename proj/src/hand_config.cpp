#include "softhand/hand_config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand {

const char* joint_name(JointId j) {
    switch (j) {
        case JointId::MCP: return "MCP";
        case JointId::PIP: return "PIP";
        case JointId::DIP: return "DIP";
    }
    return "?";
}

JointId joint_from_name(const std::string& name) {
    if (name == "MCP") return JointId::MCP;
    if (name == "PIP") return JointId::PIP;
    if (name == "DIP") return JointId::DIP;
    throw ValidationError("unknown joint name '" + name + "' (expected MCP|PIP|DIP)");
}

int HandConfig::finger_index(const std::string& name) const {
    for (size_t i = 0; i < fingers.size(); ++i) {
        if (fingers[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

FingerConfig make_standard_finger(const std::string& name, const Vec3& mount,
                                  double yaw_deg, double roll_deg) {
    FingerConfig f;
    f.name = name;
    f.mount_position = mount;
    f.mount_yaw_rad = deg2rad(yaw_deg);
    f.mount_pitch_rad = 0.0;
    f.mount_roll_rad = deg2rad(roll_deg);
    f.phalanx_lengths_mm = {35.0, 30.0, 25.0, 25.0};  // 115 mm standard finger
    f.phalanx_radius_mm = 10.0;                       // 20 mm finger width

    const double limits_deg[3] = {90.0, 100.0, 80.0};
    for (int j = 0; j < 3; ++j) {
        JointParams p;
        p.moment_arm_mm = 5.0;
        p.coupling_m_mm = 5.0;
        p.rest_angle_rad = 0.0;
        p.limit_angle_rad = deg2rad(limits_deg[j]);
        p.restoring_stiffness = 7.84;  // 0.49 N/mm rubber over a 4 mm arm
        p.restoring_preload = 0.0;
        p.efficiency = 1.0;
        f.joints[j] = p;
    }
    return f;
}

TendonRoute make_route(const std::string& id, std::initializer_list<int> fingers) {
    TendonRoute t;
    t.id = id;
    for (int fi : fingers) {
        for (int j = 0; j < 3; ++j) {
            t.served.push_back({fi, static_cast<JointId>(j)});
        }
    }
    t.spring_stiffness = 2.0;
    t.pretension = 0.0;
    return t;
}

}  // namespace

HandConfig default_bpi_config() {
    HandConfig c;
    c.palm_width_mm = 90.0;
    c.palm_length_mm = 91.0;
    c.overall_length_rest_mm = 200.0;
    c.rest_span_mm = 215.0;
    c.actuator.max_torque_Nmm = 4500.0;
    c.actuator.pulley_radius_mm = 10.0;

    // Mount positions reverse-engineered to the 200 mm overall length and
    // 215 mm thumb-to-little span; splay angles measured from the vertical:
    // thumb 58 (= 90 - 32 from horizontal), index 10, middle 0, third 9,
    // little 12 degrees. Finger axes ride 15 mm above the palm plane.
    c.fingers.push_back(make_standard_finger("thumb", Vec3(40.0, 36.0, 15.0), 58.0, 65.0));
    c.fingers.push_back(make_standard_finger("index", Vec3(30.0, 85.0, 15.0), 10.0, 0.0));
    c.fingers.push_back(make_standard_finger("middle", Vec3(10.0, 85.0, 15.0), 0.0, 0.0));
    c.fingers.push_back(make_standard_finger("third", Vec3(-10.0, 85.0, 15.0), 9.0, 0.0));
    c.fingers.push_back(make_standard_finger("little", Vec3(-30.0, 85.0, 15.0), 12.0, 0.0));

    c.tendons.push_back(make_route("t1", {0, 1}));  // thumb + index
    c.tendons.push_back(make_route("t2", {2, 3}));  // middle + third
    c.tendons.push_back(make_route("t3", {4}));     // little
    return c;
}

double actuator_capacity(const ActuatorParams& a) {
    return a.max_torque_Nmm / a.pulley_radius_mm;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& rule) {
    throw ValidationError(path + ": " + rule);
}

}  // namespace

void validate(const HandConfig& c) {
    if (c.palm_width_mm <= 0.0) fail("palm.width", "must be positive");
    if (c.palm_length_mm <= 0.0) fail("palm.length", "must be positive");
    if (c.overall_length_rest_mm <= 0.0) fail("rest_dimensions.overall_length", "must be positive");
    if (c.rest_span_mm <= 0.0) fail("rest_dimensions.span", "must be positive");
    if (c.friction_coefficient < 0.0) fail("friction_coefficient", "must be non-negative");
    if (c.actuator.pulley_radius_mm <= 0.0) fail("actuator.pulley_radius", "must be positive");
    if (c.actuator.max_torque_Nmm < 750.0 || c.actuator.max_torque_Nmm > 4500.0) {
        fail("actuator.max_torque", "must lie in the motor range [0.75, 4.5] N*m");
    }

    const std::set<std::string> expected = {"thumb", "index", "middle", "third", "little"};
    if (c.fingers.size() != 5) fail("fingers", "hand must have exactly 5 fingers");
    std::set<std::string> seen;
    for (size_t i = 0; i < c.fingers.size(); ++i) {
        const FingerConfig& f = c.fingers[i];
        const std::string path = "fingers[" + std::to_string(i) + "]";
        if (!expected.count(f.name)) {
            fail(path + ".name", "unknown finger '" + f.name +
                                 "' (expected thumb|index|middle|third|little)");
        }
        if (!seen.insert(f.name).second) fail(path + ".name", "duplicate finger '" + f.name + "'");
        for (int k = 0; k < 4; ++k) {
            if (!(f.phalanx_lengths_mm[k] > 0.0)) {
                fail(path + ".phalanx_lengths[" + std::to_string(k) + "]", "must be positive");
            }
        }
        if (!(f.phalanx_radius_mm > 0.0)) fail(path + ".phalanx_radius", "must be positive");
        for (int j = 0; j < 3; ++j) {
            const JointParams& p = f.joints[j];
            const std::string jp = path + ".joints[" + joint_name(static_cast<JointId>(j)) + "]";
            if (!(p.moment_arm_mm > 0.0)) fail(jp + ".moment_arm", "must be positive");
            if (!(p.coupling_m_mm > 0.0)) fail(jp + ".coupling_m", "must be positive");
            if (p.rest_angle_rad < 0.0 || p.rest_angle_rad >= p.limit_angle_rad) {
                fail(jp + ".rest_angle", "must satisfy 0 <= rest < limit");
            }
            if (p.limit_angle_rad > kPi) fail(jp + ".limit_angle", "must not exceed 180 deg");
            if (p.restoring_stiffness < 0.0) fail(jp + ".restoring_stiffness", "must be non-negative");
            if (p.efficiency < 0.0 || p.efficiency > 1.0) fail(jp + ".efficiency", "must lie in [0, 1]");
        }
    }

    if (c.tendons.empty()) fail("tendons", "at least one tendon route required");
    std::set<std::pair<int, int>> covered;
    for (size_t t = 0; t < c.tendons.size(); ++t) {
        const TendonRoute& route = c.tendons[t];
        const std::string path = "tendons[" + std::to_string(t) + "]";
        if (route.id.empty()) fail(path + ".id", "must be non-empty");
        if (!(route.spring_stiffness > 0.0)) fail(path + ".spring_stiffness", "must be positive");
        if (route.pretension < 0.0) fail(path + ".pretension", "must be non-negative");
        if (route.served.empty()) fail(path + ".served", "must serve at least one joint");
        for (const TendonEntry& e : route.served) {
            if (e.finger < 0 || e.finger >= static_cast<int>(c.fingers.size())) {
                fail(path + ".served", "references a finger that does not exist");
            }
            if (!covered.insert({e.finger, static_cast<int>(e.joint)}).second) {
                fail(path + ".served", "joint " + c.fingers[e.finger].name + "." +
                                       joint_name(e.joint) + " served by more than one tendon");
            }
        }
    }
    if (covered.size() != c.fingers.size() * 3) {
        std::ostringstream os;
        os << "tendons: routes must cover all " << c.fingers.size() * 3
           << " joints exactly once (covered " << covered.size() << ")";
        throw ValidationError(os.str());
    }
}

}  // namespace softhand
