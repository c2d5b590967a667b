#pragma once

#include <array>
#include <string>
#include <vector>

#include "softhand/geometry.hpp"

namespace softhand {

// Internal units: mm, N, rad, N*mm (torque). Degrees and N*m appear only at
// external interfaces (spec files, CLI flags, printed reports).

enum class JointId { MCP = 0, PIP = 1, DIP = 2 };

const char* joint_name(JointId j);
JointId joint_from_name(const std::string& name);

struct JointParams {
    double moment_arm_mm = 5.0;      // tendon moment arm r
    double coupling_m_mm = 5.0;      // empirical coupling constant m
    double rest_angle_rad = 0.0;
    double limit_angle_rad = 0.0;
    double restoring_stiffness = 7.84;  // N*mm/rad, rubber band k*r^2
    double restoring_preload = 0.0;     // N*mm
    double efficiency = 1.0;            // lumped transmission efficiency, 0..1

    bool operator==(const JointParams&) const = default;
};

// Mount angles, all about the finger root:
//   mount_yaw   - in-palm splay, positive = outward from the palm centerline
//                 (outward is +X for fingers mounted at x >= 0, else -X)
//   mount_pitch - elevation of the pointing direction out of the palm plane
//   mount_roll  - rotation about the pointing axis; positive tilts the curl
//                 direction from the palm normal toward the palm centerline
//                 (this is what lets the thumb oppose the fingers)
struct FingerConfig {
    std::string name;
    Vec3 mount_position = Vec3::Zero();  // hand frame, mm
    double mount_yaw_rad = 0.0;
    double mount_pitch_rad = 0.0;
    double mount_roll_rad = 0.0;
    std::array<double, 4> phalanx_lengths_mm{};  // base, mid1, mid2, tip
    double phalanx_radius_mm = 10.0;
    std::array<JointParams, 3> joints{};  // MCP, PIP, DIP

    bool operator==(const FingerConfig&) const = default;
};

struct TendonEntry {
    int finger = 0;  // index into HandConfig::fingers
    JointId joint = JointId::MCP;

    bool operator==(const TendonEntry&) const = default;
};

struct TendonRoute {
    std::string id;
    std::vector<TendonEntry> served;     // ordered proximal->distal
    double spring_stiffness = 2.0;       // series spring, N/mm
    double pretension = 0.0;             // N

    bool operator==(const TendonRoute&) const = default;
};

struct ActuatorParams {
    double max_torque_Nmm = 4500.0;  // gearmotor rating: 0.75..4.5 N*m
    double pulley_radius_mm = 10.0;

    bool operator==(const ActuatorParams&) const = default;
};

struct HandConfig {
    double palm_width_mm = 90.0;
    double palm_length_mm = 91.0;
    double overall_length_rest_mm = 200.0;  // reference value, checked by FK
    double rest_span_mm = 215.0;            // reference value, checked by FK
    double friction_coefficient = 0.8;      // rubber fingertip, holding-force estimate only
    ActuatorParams actuator;
    std::vector<FingerConfig> fingers;   // thumb, index, middle, third, little
    std::vector<TendonRoute> tendons;

    int finger_index(const std::string& name) const;  // -1 if absent

    bool operator==(const HandConfig&) const = default;
};

// The default BRL/Pisa/IIT hand: 15 DOF, three tendons rigidly coupled at the
// actuator pulley ({thumb,index}, {middle,third}, {little}).
HandConfig default_bpi_config();

// Checks every structural invariant; throws ValidationError naming the field
// path and the violated rule.
void validate(const HandConfig& config);

// Actuator capacity: max tendon force at the coupling pulley, N.
double actuator_capacity(const ActuatorParams& a);

}  // namespace softhand
