#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softhand/hand_config.hpp"
#include "softhand/kinematics.hpp"

namespace softhand {

struct WorkspaceSample {
    long id = 0;
    std::array<double, 3> theta_rad{};  // after coupling and limit clamping
    Vec3 tip = Vec3::Zero();            // hand frame, mm
    bool clamped = false;               // theta2/theta3 hit a joint limit
};

struct WorkspaceCloud {
    std::vector<std::string> finger_names;
    std::vector<double> theta1_max_rad;  // sampling range [0, max] per finger
    std::vector<std::vector<WorkspaceSample>> per_finger;
    long samples_per_finger = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo fingertip workspace: per finger and sample, theta1 is drawn
// uniformly in [0, MCP limit], theta2/theta3 follow the coupling formula
// clamped at their limits, and the fingertip comes from forward kinematics.
// The random stream is keyed by (seed, finger, sample), so regeneration and
// any parallel partitioning reproduce the cloud exactly.
WorkspaceCloud sample_workspace(const HandConfig& config, long n, std::uint64_t seed);

struct FingerWorkspaceStats {
    std::string finger;
    long count = 0;
    long clamped = 0;
    Vec3 bbox_min = Vec3::Zero();
    Vec3 bbox_max = Vec3::Zero();
    Vec3 centroid = Vec3::Zero();
    double flexion_depth_mm = 0.0;  // bbox extent along the palm normal
};

struct OppositionStats {
    std::string finger;                    // vs the thumb cloud
    double min_distance_mm = 0.0;          // closest fingertip-envelope approach
    double bbox_overlap_volume_mm3 = 0.0;  // thumb bbox intersection volume
};

struct WorkspaceStats {
    std::vector<FingerWorkspaceStats> fingers;
    std::vector<OppositionStats> opposition;
    double thumb_little_centroid_distance_mm = 0.0;
};

// Throws ValidationError on an empty cloud. The thumb/finger minimum distance
// is measured on a deterministic subsample (every k-th point, at most 2000
// per cloud) to keep the pairwise scan cheap.
WorkspaceStats workspace_stats(const WorkspaceCloud& cloud);

}  // namespace softhand
