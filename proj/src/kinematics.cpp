#include "softhand/kinematics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "softhand/errors.hpp"

namespace softhand {

double CouplingRatios::ratio(JointId j) const {
    switch (j) {
        case JointId::MCP: return 1.0;
        case JointId::PIP: return c2;
        case JointId::DIP: return c3;
    }
    return 1.0;
}

CouplingRatios coupling_ratios(const std::array<JointParams, 3>& joints) {
    const double m1 = joints[0].coupling_m_mm;
    const double m2 = joints[1].coupling_m_mm;
    const double m3 = joints[2].coupling_m_mm;
    if (m1 <= 0.0 || m2 <= 0.0 || m3 <= 0.0) {
        throw std::domain_error("coupling m-values must be positive");
    }
    CouplingRatios r;
    r.c2 = 1.08 + std::abs((m1 - m2) / m2);
    r.c3 = (r.c2 + std::abs((m3 - m2) / m3)) * r.c2;
    return r;
}

std::array<double, 3> couple_angles(double theta1_rad,
                                    const std::array<JointParams, 3>& joints) {
    if (theta1_rad < 0.0) {
        throw std::domain_error("couple_angles: theta1 must be non-negative");
    }
    const CouplingRatios r = coupling_ratios(joints);
    return {theta1_rad, r.c2 * theta1_rad, r.c3 * theta1_rad};
}

Mat3 finger_root_rotation(const FingerConfig& finger) {
    // Base frame at zero angles: point along +Y, curl toward +Z (palm normal),
    // joint axis +X.
    Mat3 base;
    base.col(0) = Vec3::UnitY();
    base.col(1) = Vec3::UnitZ();
    base.col(2) = Vec3::UnitX();

    const double outward = (finger.mount_position.x() >= 0.0) ? 1.0 : -1.0;
    const double yaw_eff = outward * finger.mount_yaw_rad;    // + leans toward +X
    const double roll_eff = -outward * finger.mount_roll_rad; // + curls inward

    using Eigen::AngleAxisd;
    // Intrinsic: splay about the palm normal, then elevate about the local
    // joint axis, then roll about the local pointing axis.
    return AngleAxisd(-yaw_eff, Vec3::UnitZ()).toRotationMatrix() * base *
           AngleAxisd(finger.mount_pitch_rad, Vec3::UnitZ()).toRotationMatrix() *
           AngleAxisd(roll_eff, Vec3::UnitX()).toRotationMatrix();
}

namespace {

void check_angles(const FingerConfig& finger, const std::array<double, 3>& angles) {
    for (int j = 0; j < 3; ++j) {
        const double limit = finger.joints[j].limit_angle_rad;
        if (angles[j] < 0.0 || angles[j] > limit + 1e-12) {
            std::ostringstream os;
            os << joint_name(static_cast<JointId>(j)) << " angle " << angles[j]
               << " rad outside [0, " << limit << "]";
            throw std::out_of_range(os.str());
        }
    }
}

FingerPose chain_fk(const FingerConfig& finger, const std::array<double, 3>& angles,
                    const Vec3& origin, const Mat3& rot) {
    FingerPose pose;
    pose.joint_angles = angles;
    pose.phalanx_radius_mm = finger.phalanx_radius_mm;

    // Planar chain in the local (pointing, curl) plane.
    double a = finger.phalanx_lengths_mm[0];  // rigid base offset to the MCP
    double b = 0.0;
    double cum = 0.0;

    std::array<Vec3, 5> pts;  // root, MCP, PIP, DIP, tip
    pts[0] = origin;
    pts[1] = origin + rot * Vec3(a, b, 0.0);
    for (int j = 0; j < 3; ++j) {
        cum += angles[j];
        a += finger.phalanx_lengths_mm[j + 1] * std::cos(cum);
        b += finger.phalanx_lengths_mm[j + 1] * std::sin(cum);
        pts[j + 2] = origin + rot * Vec3(a, b, 0.0);
    }
    for (int k = 0; k < 4; ++k) {
        pose.joint_positions[k] = pts[k + 1];
        pose.phalanx_segments[k] = Segment{pts[k], pts[k + 1]};
    }
    return pose;
}

}  // namespace

FingerPose finger_fk_root(const FingerConfig& finger, const std::array<double, 3>& angles_rad) {
    check_angles(finger, angles_rad);
    return chain_fk(finger, angles_rad, Vec3::Zero(), Mat3::Identity());
}

FingerPose finger_fk(const FingerConfig& finger, const std::array<double, 3>& angles_rad) {
    check_angles(finger, angles_rad);
    return chain_fk(finger, angles_rad, finger.mount_position, finger_root_rotation(finger));
}

std::vector<FingerPose> hand_fk(const HandConfig& config,
                                const std::vector<std::array<double, 3>>& angles_rad) {
    if (angles_rad.size() != config.fingers.size()) {
        throw std::invalid_argument("hand_fk: need one angle triple per finger");
    }
    std::vector<FingerPose> poses;
    poses.reserve(config.fingers.size());
    for (size_t i = 0; i < config.fingers.size(); ++i) {
        try {
            poses.push_back(finger_fk(config.fingers[i], angles_rad[i]));
        } catch (const std::out_of_range& e) {
            throw std::out_of_range(config.fingers[i].name + ": " + e.what());
        }
    }
    return poses;
}

RestDimensions rest_dimensions(const HandConfig& config) {
    std::vector<std::array<double, 3>> rest(config.fingers.size(), {0.0, 0.0, 0.0});
    for (size_t i = 0; i < config.fingers.size(); ++i) {
        for (int j = 0; j < 3; ++j) rest[i][j] = config.fingers[i].joints[j].rest_angle_rad;
    }
    const std::vector<FingerPose> poses = hand_fk(config, rest);

    RestDimensions dims;
    const int middle = config.finger_index("middle");
    const int thumb = config.finger_index("thumb");
    const int little = config.finger_index("little");
    if (middle >= 0) {
        dims.overall_length_mm = poses[middle].joint_positions[3].norm();
    }
    if (thumb >= 0 && little >= 0) {
        dims.span_mm = (poses[thumb].joint_positions[3] - poses[little].joint_positions[3]).norm();
    }
    return dims;
}

}  // namespace softhand
