#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softhand/contact.hpp"
#include "softhand/grasp_objects.hpp"
#include "softhand/tendon_drive.hpp"

namespace softhand {

struct ClosureOptions {
    double step_mm = 0.05;            // actuator displacement step
    double max_displacement_mm = 200.0;
    double bisection_tol_mm = 1e-3;   // touch-instant refinement tolerance
};

enum class StopReason { ForceBudget, MaxDisplacement };

const char* stop_reason_name(StopReason r);

// One committed engine step: displacement, full hand state, and the contacts
// first registered at this instant (indices into GraspReport::contacts).
struct TraceRecord {
    double displacement_mm = 0.0;
    HandState state;
    std::vector<int> new_contacts;
};

using ClosureTrace = std::vector<TraceRecord>;

// Extends Contact with closure bookkeeping: the displacement at first touch
// and the joint the contact blocked (-1 for base-phalanx contacts, which
// block nothing and carry no force).
struct GraspContact : Contact {
    double at_displacement_mm = 0.0;
    int force_joint = -1;  // 0 MCP, 1 PIP, 2 DIP
};

struct GraspReport {
    std::string object_name = "none";
    bool has_object = false;
    double object_weight_N = 0.0;
    std::vector<GraspContact> contacts;
    HandState final_state;
    std::vector<FingerPose> final_poses;
    int fingers_in_contact = 0;
    double holding_force_N = 0.0;
    bool success = false;
    bool all_joints_stopped = false;
    StopReason stop_reason = StopReason::MaxDisplacement;
    ClosureTrace trace;
    std::vector<std::string> warnings;

    double total_flexion_rad(int finger) const;
    double last_contact_displacement_mm(int finger) const;  // -1 if none
};

// Quasi-static closure under the adaptive synergy. The actuator displacement
// advances in steps; unblocked joints follow the inter-phalangeal coupling
// trajectory consistent with their tendon's excursion budget; first touch is
// refined by bisection and blocks the contacted phalanx's parent joint (on
// re-penetration, the next unblocked joint toward the palm). Terminates at
// max displacement, with all joints stopped, or when the summed tendon
// tensions exhaust the actuator force budget.
GraspReport close_hand(const HandConfig& config, const GraspObject* object,
                       const ClosureOptions& options = {});

// Contact normal forces from the final tensions:
//   normal_force = tension * moment_arm * efficiency / lever
// with the lever measured from the blocking joint to the contact point.
// Degenerate levers (< 1 mm) are excluded with a warning; base-phalanx
// contacts are palm-supported and carry no tendon force. The holding force is
// the magnitude of the net squeeze along the palm normal plus the friction
// capacity of the horizontally loaded contacts; it is stored in the report
// and returned.
double estimate_holding_force(GraspReport& report, const HandConfig& config);

struct PressResult {
    double fingertip_force_N = 0.0;
    GraspObject pad;    // auto-placed plate across the fingertip arc
    GraspReport report;
};

// Fingertip press against a rigid plate, run as a full closure. The plate is
// placed across the named finger's rising fingertip arc so the tip meets it
// early in flexion (the bench-press posture); the reading is the vertical
// component of that finger's force on the plate at force-budget exhaustion.
PressResult single_finger_press(const HandConfig& config, const std::string& finger_name,
                                const ClosureOptions& options = {});

}  // namespace softhand
