#include "softhand/calibrate.hpp"

#include <cmath>
#include <functional>

#include "json.hpp"

#include "softhand/errors.hpp"
#include "softhand/hand_spec_io.hpp"

namespace softhand {
namespace {

struct Evaluation {
    double holding_N = 0.0;
    double press_N = 0.0;
    double sse = 0.0;
};

HandConfig patched(const HandConfig& base, double pulley_radius_mm, double efficiency) {
    HandConfig c = base;
    c.actuator.pulley_radius_mm = pulley_radius_mm;
    for (auto& f : c.fingers)
        for (auto& p : f.joints) p.efficiency = efficiency;
    return c;
}

// Golden-section minimum of f over [a, b]; f is evaluated ~2 + iters times.
double golden_min(double a, double b, int iters, const std::function<double(double)>& f) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace

CalibrationResult calibrate(const HandConfig& base, const CalibrationTargets& targets,
                            const ClosureOptions& closure) {
    if (targets.holding_N <= 0.0 || targets.finger_press_N <= 0.0)
        throw ValidationError("calibration targets must be positive");
    validate(base);
    const GraspObject& object = builtin_object(targets.object_name);
    if (base.finger_index(targets.press_finger) < 0)
        throw ValidationError("unknown finger '" + targets.press_finger + "'");

    CalibrationResult result;
    auto evaluate = [&](const std::string& stage, double radius, double eff) {
        const HandConfig c = patched(base, radius, eff);
        GraspReport grasp = close_hand(c, &object, closure);
        const double holding = grasp.holding_force_N;
        const double press = single_finger_press(c, targets.press_finger, closure)
                                 .fingertip_force_N;
        Evaluation ev;
        ev.holding_N = holding;
        ev.press_N = press;
        const double eh = (holding - targets.holding_N) / targets.holding_N;
        const double ep = (press - targets.finger_press_N) / targets.finger_press_N;
        ev.sse = eh * eh + ep * ep;
        result.curve.push_back({stage, radius, eff, holding, press, ev.sse});
        return ev;
    };

    // Both measured forces scale linearly with the shared efficiency while the
    // contact set stays fixed, so for any radius the best efficiency has a
    // closed form. The radius controls the holding/press ratio; efficiency
    // controls the overall scale.
    auto best_efficiency_at = [&](double radius) {
        const Evaluation unit = evaluate("pulley", radius, 1.0);
        const double a = unit.holding_N / targets.holding_N;
        const double b = unit.press_N / targets.finger_press_N;
        const double denom = a * a + b * b;
        double eff = denom > 0.0 ? (a + b) / denom : 1.0;
        return std::min(1.0, std::max(0.02, eff));
    };

    // Stage 1: pulley radius, scored with the matching best-scale efficiency.
    const double radius = golden_min(4.0, 30.0, 24, [&](double r) {
        return evaluate("pulley", r, best_efficiency_at(r)).sse;
    });
    // Stage 2: shared transmission efficiency at the chosen radius.
    const double efficiency = golden_min(0.02, 1.0, 24, [&](double e) {
        return evaluate("efficiency", radius, e).sse;
    });

    const Evaluation final_ev = evaluate("efficiency", radius, efficiency);
    result.pulley_radius_mm = radius;
    result.efficiency = efficiency;
    result.holding_N = final_ev.holding_N;
    result.press_N = final_ev.press_N;
    result.holding_rel_err = std::abs(final_ev.holding_N - targets.holding_N) / targets.holding_N;
    result.press_rel_err =
        std::abs(final_ev.press_N - targets.finger_press_N) / targets.finger_press_N;
    result.within_tolerance = result.holding_rel_err <= 0.10 && result.press_rel_err <= 0.20;

    nlohmann::json overlay;
    overlay["actuator"] = {{"pulley_radius_mm", radius}};
    overlay["joint_defaults"] = {{"efficiency", efficiency}};
    result.overlay_text = overlay.dump(2) + "\n";
    result.calibrated = apply_spec_text(base, result.overlay_text);
    return result;
}

}  // namespace softhand
