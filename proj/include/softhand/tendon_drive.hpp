#pragma once

#include <vector>

#include "softhand/hand_config.hpp"

namespace softhand {

// Snapshot of the actuated hand: one actuator displacement drives all tendons
// (rigid coupling at the pulley); differential behavior comes only from the
// series springs.
struct HandState {
    double actuator_displacement_mm = 0.0;
    std::vector<std::array<double, 3>> joint_angles_rad;  // per finger
    std::vector<std::array<bool, 3>> joint_blocked;       // per finger
    std::vector<double> tendon_tension_N;                 // per tendon

    static HandState rest(const HandConfig& config);
};

// Geometric tendon shortening e = sum r_j * (theta_j - rest_j) over the served
// joints, mm. Zero at rest by construction.
double tendon_excursion(const TendonRoute& route, const HandConfig& config,
                        const HandState& state);

// Series-spring tension: max(0, k * (displacement - excursion) + pretension).
// The tendon is slack (zero tension) when the spring term goes non-positive.
double tendon_tension(const TendonRoute& route, double actuator_displacement_mm,
                      double excursion_mm);

// Net flexion torque about one joint: tension * moment_arm - (restoring
// stiffness * angle + preload). N*mm.
double joint_net_torque(const JointParams& joint, double tension_N, double angle_rad);

struct ForceBudget {
    double capacity_N = 0.0;  // max_torque / pulley_radius
    double total_N = 0.0;     // sum of tendon tensions
    double margin_N = 0.0;    // capacity - total
    bool feasible = true;     // total <= capacity
};

ForceBudget actuator_force_budget(const HandConfig& config,
                                  const std::vector<double>& tendon_tensions_N);

}  // namespace softhand
