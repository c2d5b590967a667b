#pragma once

#include <string>
#include <vector>

#include "softhand/closure.hpp"

namespace softhand {

struct CalibrationTargets {
    double holding_N = 19.8;       // trapezoid grasp at max torque
    double finger_press_N = 5.5;   // single-finger press
    std::string press_finger = "little";
    std::string object_name = "trapezoid";
};

struct CurveSample {
    std::string stage;  // "pulley" or "efficiency"
    double pulley_radius_mm = 0.0;
    double efficiency = 0.0;
    double holding_N = 0.0;
    double press_N = 0.0;
    double sse = 0.0;  // squared relative errors, summed
};

struct CalibrationResult {
    double pulley_radius_mm = 0.0;
    double efficiency = 0.0;
    double holding_N = 0.0;
    double press_N = 0.0;
    double holding_rel_err = 0.0;
    double press_rel_err = 0.0;
    bool within_tolerance = false;  // 10% on holding, 20% on press
    HandConfig calibrated;          // patched copy; the input is never mutated
    std::string overlay_text;       // hand-spec overlay with the tuned fields
    std::vector<CurveSample> curve; // every evaluation, for diagnostics
};

// Two golden-section stages minimizing the summed squared relative error to
// both force targets. Both forces scale linearly with the shared efficiency,
// so stage 1 searches pulley_radius in [4, 30] mm (which sets the
// holding/press ratio) with the closed-form best efficiency folded into the
// score; stage 2 refines the efficiency in [0.02, 1] at the chosen radius.
CalibrationResult calibrate(const HandConfig& base, const CalibrationTargets& targets = {},
                            const ClosureOptions& closure = {});

}  // namespace softhand
