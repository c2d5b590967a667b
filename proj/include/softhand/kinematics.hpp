#pragma once

#include <array>
#include <vector>

#include "softhand/hand_config.hpp"

namespace softhand {

// Empirical inter-phalangeal coupling of the single-tendon finger:
//   theta2 = (1.08 + |(m1 - m2)/m2|) * theta1
//   theta3 = (theta2/theta1 + |(m3 - m2)/m3|) * theta2
// The theta2/theta1 ratio is evaluated as its analytic constant, so theta1 = 0
// is regular (all angles zero).
struct CouplingRatios {
    double c2 = 1.08;  // theta2 / theta1
    double c3 = 0.0;   // theta3 / theta1

    double ratio(JointId j) const;  // theta_j / theta1 (1 for MCP)
};

CouplingRatios coupling_ratios(const std::array<JointParams, 3>& joints);

// theta1 >= 0 and positive m-values required; no limit clamping here.
std::array<double, 3> couple_angles(double theta1_rad,
                                    const std::array<JointParams, 3>& joints);

struct FingerPose {
    std::array<double, 3> joint_angles{};      // rad
    std::array<Vec3, 4> joint_positions{};     // MCP, PIP, DIP, fingertip
    std::array<Segment, 4> phalanx_segments{}; // base, mid1, mid2, tip
    double phalanx_radius_mm = 0.0;
};

// Finger root frame: x along the rest pointing direction, y along the curl
// direction, z the (common) joint axis. Mount yaw/pitch/roll place this frame
// in the hand frame; see FingerConfig for the sign conventions.
Mat3 finger_root_rotation(const FingerConfig& finger);

// FK of the planar 3R chain in the finger root frame (root at the origin).
// The base phalanx is a rigid offset before the MCP. Throws on angles outside
// [0, limit].
FingerPose finger_fk_root(const FingerConfig& finger, const std::array<double, 3>& angles_rad);

// Same chain placed by the finger's mount, in the hand frame.
FingerPose finger_fk(const FingerConfig& finger, const std::array<double, 3>& angles_rad);

// All fingers; angle errors are rethrown with the finger name attached.
std::vector<FingerPose> hand_fk(const HandConfig& config,
                                const std::vector<std::array<double, 3>>& angles_rad);

// Rest-pose dimensional summary used to check the config against the real hand.
struct RestDimensions {
    double overall_length_mm = 0.0;  // palm-base origin to middle fingertip
    double span_mm = 0.0;            // thumb fingertip to little fingertip
};
RestDimensions rest_dimensions(const HandConfig& config);

}  // namespace softhand
