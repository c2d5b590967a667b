#include "softhand/tendon_drive.hpp"

#include <algorithm>
#include <stdexcept>

#include "softhand/errors.hpp"

namespace softhand {

HandState HandState::rest(const HandConfig& config) {
    HandState s;
    s.actuator_displacement_mm = 0.0;
    s.joint_angles_rad.resize(config.fingers.size());
    s.joint_blocked.resize(config.fingers.size());
    for (size_t i = 0; i < config.fingers.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
            s.joint_angles_rad[i][j] = config.fingers[i].joints[j].rest_angle_rad;
            s.joint_blocked[i][j] = false;
        }
    }
    s.tendon_tension_N.assign(config.tendons.size(), 0.0);
    return s;
}

double tendon_excursion(const TendonRoute& route, const HandConfig& config,
                        const HandState& state) {
    double e = 0.0;
    for (const TendonEntry& entry : route.served) {
        if (entry.finger < 0 || entry.finger >= static_cast<int>(config.fingers.size()) ||
            entry.finger >= static_cast<int>(state.joint_angles_rad.size())) {
            throw std::out_of_range("tendon route references finger " +
                                    std::to_string(entry.finger) + " which does not exist");
        }
        const int j = static_cast<int>(entry.joint);
        const JointParams& p = config.fingers[entry.finger].joints[j];
        e += p.moment_arm_mm * (state.joint_angles_rad[entry.finger][j] - p.rest_angle_rad);
    }
    return e;
}

double tendon_tension(const TendonRoute& route, double actuator_displacement_mm,
                      double excursion_mm) {
    const double t = route.spring_stiffness * (actuator_displacement_mm - excursion_mm) +
                     route.pretension;
    return std::max(0.0, t);
}

double joint_net_torque(const JointParams& joint, double tension_N, double angle_rad) {
    return tension_N * joint.moment_arm_mm -
           (joint.restoring_stiffness * angle_rad + joint.restoring_preload);
}

ForceBudget actuator_force_budget(const HandConfig& config,
                                  const std::vector<double>& tendon_tensions_N) {
    ForceBudget b;
    b.capacity_N = actuator_capacity(config.actuator);
    for (double t : tendon_tensions_N) b.total_N += t;
    b.margin_N = b.capacity_N - b.total_N;
    b.feasible = b.total_N <= b.capacity_N + 1e-9;
    return b;
}

}  // namespace softhand
