#include "softhand/closure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "softhand/errors.hpp"
#include "softhand/kinematics.hpp"

namespace softhand {

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::ForceBudget: return "force_budget";
        case StopReason::MaxDisplacement: return "max_displacement";
    }
    return "unknown";
}

double GraspReport::total_flexion_rad(int finger) const {
    const auto& a = final_state.joint_angles_rad.at(static_cast<size_t>(finger));
    return a[0] + a[1] + a[2];
}

double GraspReport::last_contact_displacement_mm(int finger) const {
    double last = -1.0;
    for (const auto& c : contacts)
        if (c.finger == finger) last = std::max(last, c.at_displacement_mm);
    return last;
}

namespace {

constexpr double kTouchEps = 1e-9;      // penetration that counts as an event
constexpr double kReblockSlack = 0.02;  // mm of extra penetration before re-blocking

// Quasi-static state of the closure at one actuator displacement: per-tendon
// drive parameters, the resulting joint angles, and the forward kinematics.
struct EngineState {
    std::vector<double> u;  // per tendon, radians of MCP-equivalent rotation
    std::vector<std::array<double, 3>> angles;
    std::vector<FingerPose> poses;
    std::vector<double> excursion_mm;  // per tendon
    std::vector<double> tension_N;     // per tendon
};

class ClosureEngine {
  public:
    ClosureEngine(const HandConfig& config, const GraspObject* object,
                  const ClosureOptions& options)
        : cfg_(config), obj_(object), opts_(options) {
        if (opts_.step_mm <= 0.0)
            throw ValidationError("closure step must be > 0 mm");
        if (opts_.max_displacement_mm <= 0.0)
            throw ValidationError("closure max_displacement must be > 0 mm");
        if (opts_.bisection_tol_mm <= 0.0)
            throw ValidationError("closure bisection_tol must be > 0 mm");

        const size_t nf = cfg_.fingers.size();
        const size_t nt = cfg_.tendons.size();
        ratios_.reserve(nf);
        for (const auto& f : cfg_.fingers) ratios_.push_back(coupling_ratios(f.joints));

        // The synergy drive is parameterized per tendon, so a finger's three
        // joints must ride a single route.
        finger_tendon_.assign(nf, -1);
        for (size_t t = 0; t < nt; ++t) {
            for (const auto& entry : cfg_.tendons[t].served) {
                const size_t fi = static_cast<size_t>(entry.finger);
                if (finger_tendon_[fi] == -1)
                    finger_tendon_[fi] = static_cast<int>(t);
                else if (finger_tendon_[fi] != static_cast<int>(t))
                    throw ValidationError("closure requires all joints of finger '" +
                                          cfg_.fingers[fi].name + "' on a single tendon");
            }
        }

        blocked_.assign(nf, {false, false, false});
        frozen_angle_.assign(nf, {0.0, 0.0, 0.0});
        committed_u_.assign(nt, 0.0);
    }

    GraspReport run() {
        GraspReport report;
        if (obj_ != nullptr) {
            report.has_object = true;
            report.object_name = obj_->name;
            report.object_weight_N = obj_->weight_N();
        }

        double x = 0.0;
        EngineState st = state_at(x);
        apply_events(st, find_events(st), x, report);
        commit(x, st, report);

        bool budget_stop = false;
        while (true) {
            if (sum_tension(st) >= capacity_() - 1e-12) {
                budget_stop = true;
                break;
            }
            if (all_stopped(st)) {
                report.all_joints_stopped = true;
                break;
            }
            if (x >= opts_.max_displacement_mm - 1e-12) break;

            const double x_target = std::min(x + opts_.step_mm, opts_.max_displacement_mm);
            EngineState cand = state_at(x_target);
            const bool budget_hit = sum_tension(cand) >= capacity_();
            std::vector<Contact> events = find_events(cand);
            if (events.empty() && !budget_hit) {
                x = x_target;
                st = cand;
                commit(x, st, report);
                continue;
            }

            // Refine to the earliest trigger (first touch, re-penetration, or
            // budget crossing) within tolerance; all are monotone in x here.
            double lo = x, hi = x_target;
            while (hi - lo > opts_.bisection_tol_mm) {
                const double mid = 0.5 * (lo + hi);
                EngineState ms = state_at(mid);
                if (!find_events(ms).empty() || sum_tension(ms) >= capacity_())
                    hi = mid;
                else
                    lo = mid;
            }
            x = hi;
            st = state_at(x);
            if (sum_tension(st) >= capacity_()) {
                budget_stop = true;
                commit(x, st, report);
                break;
            }
            apply_events(st, find_events(st), x, report);
            commit(x, st, report);
        }

        if (budget_stop) {
            report.stop_reason = StopReason::ForceBudget;
        } else if (report.all_joints_stopped) {
            // Everything is frozen; displacement jumps ahead, loading the
            // series springs until the actuator force budget is exhausted.
            const double x_end = budget_displacement(st, x);
            report.stop_reason =
                x_end < opts_.max_displacement_mm - 1e-12 || sum_tension_at(st, x_end) >=
                            capacity_() - 1e-9
                    ? StopReason::ForceBudget
                    : StopReason::MaxDisplacement;
            if (x_end > x) {
                x = x_end;
                refresh_tension(st, x);
                commit(x, st, report);
            }
        } else {
            report.stop_reason = StopReason::MaxDisplacement;
        }

        report.final_state = hand_state(x, st);
        report.final_poses = st.poses;
        if (report.has_object) {
            estimate_holding_force(report, cfg_);
            std::vector<bool> seen(cfg_.fingers.size(), false);
            for (const auto& c : report.contacts) seen[static_cast<size_t>(c.finger)] = true;
            report.fingers_in_contact =
                static_cast<int>(std::count(seen.begin(), seen.end(), true));
            bool opposing = false;
            for (size_t i = 0; i < report.contacts.size() && !opposing; ++i)
                for (size_t j = i + 1; j < report.contacts.size() && !opposing; ++j)
                    if (report.contacts[i].finger != report.contacts[j].finger &&
                        report.contacts[i].normal.dot(report.contacts[j].normal) < 0.0)
                        opposing = true;
            report.success = report.fingers_in_contact >= 2 && opposing &&
                             report.holding_force_N >= 1.5 * report.object_weight_N - 1e-9;
        }
        return report;
    }

  private:
    double capacity_() const { return actuator_capacity(cfg_.actuator); }

    double joint_angle(size_t f, size_t j, double u) const {
        if (blocked_[f][j]) return frozen_angle_[f][j];
        const auto& jp = cfg_.fingers[f].joints[j];
        return std::min(jp.rest_angle_rad + ratios_[f].ratio(static_cast<JointId>(j)) * u,
                        jp.limit_angle_rad);
    }

    // Excursion of tendon t as a function of its drive parameter.
    double tendon_excursion_at(size_t t, double u) const {
        double e = 0.0;
        for (const auto& entry : cfg_.tendons[t].served) {
            const size_t f = static_cast<size_t>(entry.finger);
            const size_t j = static_cast<size_t>(entry.joint);
            const auto& jp = cfg_.fingers[f].joints[j];
            e += jp.moment_arm_mm * (joint_angle(f, j, u) - jp.rest_angle_rad);
        }
        return e;
    }

    // Largest useful drive value: the point where the last unblocked served
    // joint saturates at its limit. Returns the committed u when none remain.
    double saturation_u(size_t t) const {
        double u_sat = committed_u_[t];
        for (const auto& entry : cfg_.tendons[t].served) {
            const size_t f = static_cast<size_t>(entry.finger);
            const size_t j = static_cast<size_t>(entry.joint);
            if (blocked_[f][j]) continue;
            const auto& jp = cfg_.fingers[f].joints[j];
            u_sat = std::max(u_sat, (jp.limit_angle_rad - jp.rest_angle_rad) /
                                        ratios_[f].ratio(static_cast<JointId>(j)));
        }
        return u_sat;
    }

    // Solve tendon_excursion_at(t, u) == target for u >= committed_u_[t].
    // The excursion is piecewise linear and non-decreasing; when even the
    // saturated hand cannot pay out the target the tendon is exhausted and
    // the series spring absorbs the remainder.
    double solve_u(size_t t, double target) const {
        double lo = committed_u_[t];
        if (tendon_excursion_at(t, lo) >= target) return lo;
        double hi = saturation_u(t);
        if (tendon_excursion_at(t, hi) <= target) return hi;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (tendon_excursion_at(t, mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    EngineState state_at(double x) const {
        EngineState st;
        const size_t nf = cfg_.fingers.size();
        const size_t nt = cfg_.tendons.size();
        st.u.resize(nt);
        st.excursion_mm.resize(nt);
        st.tension_N.resize(nt);
        for (size_t t = 0; t < nt; ++t) {
            st.u[t] = solve_u(t, x);
            st.excursion_mm[t] = tendon_excursion_at(t, st.u[t]);
            st.tension_N[t] = tendon_tension(cfg_.tendons[t], x, st.excursion_mm[t]);
        }
        st.angles.resize(nf);
        for (size_t f = 0; f < nf; ++f) {
            const int t = finger_tendon_[f];
            const double u = t >= 0 ? st.u[static_cast<size_t>(t)] : 0.0;
            for (size_t j = 0; j < 3; ++j) st.angles[f][j] = joint_angle(f, j, u);
        }
        st.poses = hand_fk(cfg_, st.angles);
        return st;
    }

    void refresh_tension(EngineState& st, double x) const {
        for (size_t t = 0; t < cfg_.tendons.size(); ++t)
            st.tension_N[t] = tendon_tension(cfg_.tendons[t], x, st.excursion_mm[t]);
    }

    double sum_tension(const EngineState& st) const {
        double s = 0.0;
        for (double T : st.tension_N) s += T;
        return s;
    }

    double sum_tension_at(const EngineState& st, double x) const {
        double s = 0.0;
        for (size_t t = 0; t < cfg_.tendons.size(); ++t)
            s += tendon_tension(cfg_.tendons[t], x, st.excursion_mm[t]);
        return s;
    }

    // With all joints stopped the excursions are fixed; find the displacement
    // where the summed spring tensions meet the actuator capacity.
    double budget_displacement(const EngineState& st, double x_from) const {
        const double cap = capacity_();
        if (sum_tension_at(st, x_from) >= cap) return x_from;
        double hi = opts_.max_displacement_mm;
        if (sum_tension_at(st, hi) < cap) return hi;
        double lo = x_from;
        for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sum_tension_at(st, mid) < cap)
                lo = mid;
            else
                hi = mid;
        }
        return hi;
    }

    bool all_stopped(const EngineState& st) const {
        for (size_t f = 0; f < cfg_.fingers.size(); ++f)
            for (size_t j = 0; j < 3; ++j) {
                if (blocked_[f][j]) continue;
                if (finger_tendon_[f] < 0) continue;  // unserved joints never move
                if (st.angles[f][j] < cfg_.fingers[f].joints[j].limit_angle_rad - 1e-12)
                    return false;
            }
        return true;
    }

    // Contacts that demand action at this state: unknown keys touching, or
    // registered keys whose penetration has grown past the re-block slack
    // while a joint on the palm side of the phalanx can still be frozen.
    std::vector<Contact> find_events(const EngineState& st) const {
        std::vector<Contact> events;
        if (obj_ == nullptr) return events;
        for (const Contact& c : detect_contacts(st.poses, *obj_)) {
            if (c.penetration_mm <= kTouchEps) continue;
            const auto key = std::make_tuple(c.finger, c.phalanx, c.primitive);
            auto it = registry_.find(key);
            if (it == registry_.end()) {
                events.push_back(c);
            } else if (c.penetration_mm > pen_ref_[it->second] + kReblockSlack &&
                       blockable_joint(c) >= 0) {
                events.push_back(c);
            }
        }
        return events;
    }

    // Most distal unblocked joint on the palm side of the contacted phalanx.
    int blockable_joint(const Contact& c) const {
        for (int j = c.phalanx - 1; j >= 0; --j)
            if (!blocked_[static_cast<size_t>(c.finger)][static_cast<size_t>(j)]) return j;
        return -1;
    }

    void apply_events(const EngineState& st, const std::vector<Contact>& events, double x,
                      GraspReport& report) {
        for (const Contact& c : events) {
            const auto key = std::make_tuple(c.finger, c.phalanx, c.primitive);
            auto it = registry_.find(key);
            const int block = blockable_joint(c);
            if (block >= 0) {
                blocked_[static_cast<size_t>(c.finger)][static_cast<size_t>(block)] = true;
                frozen_angle_[static_cast<size_t>(c.finger)][static_cast<size_t>(block)] =
                    st.angles[static_cast<size_t>(c.finger)][static_cast<size_t>(block)];
            }
            if (it == registry_.end()) {
                GraspContact gc;
                static_cast<Contact&>(gc) = c;
                gc.at_displacement_mm = x;
                gc.force_joint = block >= 0 ? block : c.phalanx - 1;
                registry_[key] = static_cast<int>(report.contacts.size());
                pen_ref_.push_back(c.penetration_mm);
                pending_new_.push_back(static_cast<int>(report.contacts.size()));
                report.contacts.push_back(gc);
            } else {
                pen_ref_[it->second] = c.penetration_mm;
            }
        }
        // Freezing joints changes the committed drive floor.
        for (size_t t = 0; t < cfg_.tendons.size(); ++t) committed_u_[t] = st.u[t];
    }

    void commit(double x, const EngineState& st, GraspReport& report) {
        for (size_t t = 0; t < cfg_.tendons.size(); ++t) committed_u_[t] = st.u[t];
        TraceRecord rec;
        rec.displacement_mm = x;
        rec.state = hand_state(x, st);
        rec.new_contacts = std::move(pending_new_);
        pending_new_.clear();
        report.trace.push_back(std::move(rec));
    }

    HandState hand_state(double x, const EngineState& st) const {
        HandState hs;
        hs.actuator_displacement_mm = x;
        hs.joint_angles_rad = st.angles;
        hs.joint_blocked = blocked_;
        hs.tendon_tension_N = st.tension_N;
        return hs;
    }

    const HandConfig& cfg_;
    const GraspObject* obj_;
    ClosureOptions opts_;
    std::vector<CouplingRatios> ratios_;
    std::vector<int> finger_tendon_;
    std::vector<std::array<bool, 3>> blocked_;
    std::vector<std::array<double, 3>> frozen_angle_;
    std::vector<double> committed_u_;
    std::map<std::tuple<int, int, int>, int> registry_;  // (finger,phalanx,primitive) -> contact
    std::vector<double> pen_ref_;                        // registered penetration baseline
    std::vector<int> pending_new_;
};

}  // namespace

GraspReport close_hand(const HandConfig& config, const GraspObject* object,
                       const ClosureOptions& options) {
    validate(config);
    if (object != nullptr) validate(*object);
    ClosureEngine engine(config, object, options);
    return engine.run();
}

double estimate_holding_force(GraspReport& report, const HandConfig& config) {
    Vec3 net = Vec3::Zero();
    double friction_support = 0.0;
    for (auto& c : report.contacts) {
        c.normal_force_N = 0.0;
        if (c.force_joint < 0) continue;  // base phalanx: palm-supported
        const auto& finger = config.fingers[static_cast<size_t>(c.finger)];
        const auto& jp = finger.joints[static_cast<size_t>(c.force_joint)];
        int tendon = -1;
        for (size_t t = 0; t < config.tendons.size() && tendon < 0; ++t)
            for (const auto& entry : config.tendons[t].served)
                if (entry.finger == c.finger && static_cast<int>(entry.joint) == c.force_joint) {
                    tendon = static_cast<int>(t);
                    break;
                }
        if (tendon < 0) continue;
        const Vec3 pivot =
            report.final_poses[static_cast<size_t>(c.finger)]
                .joint_positions[static_cast<size_t>(c.force_joint)];
        const double lever = (c.point - pivot).norm();
        if (lever < 1.0) {
            report.warnings.push_back("excluded contact with degenerate lever arm: finger " +
                                      finger.name + " phalanx " + std::to_string(c.phalanx));
            continue;
        }
        const double tension = report.final_state.tendon_tension_N[static_cast<size_t>(tendon)];
        c.normal_force_N = tension * jp.moment_arm_mm * jp.efficiency / lever;
        net += c.normal_force_N * c.normal;
        friction_support +=
            config.friction_coefficient * c.normal_force_N * c.normal.head<2>().norm();
    }
    // Vertical support: net squeeze along the palm normal plus the friction
    // capacity of horizontally loaded contacts (side pinches lift by friction).
    report.holding_force_N = std::abs(net.z()) + friction_support;
    return report.holding_force_N;
}

PressResult single_finger_press(const HandConfig& config, const std::string& finger_name,
                                const ClosureOptions& options) {
    const int fi = config.finger_index(finger_name);
    if (fi < 0) throw ValidationError("unknown finger '" + finger_name + "'");
    const FingerConfig& finger = config.fingers[static_cast<size_t>(fi)];

    // Bench-press rig: the hand actuates palm-down over a plate, so in the
    // palm-up hand frame the plate sits above the fingertip's rising arc. It
    // is placed to meet the tip early in flexion, before any joint saturates.
    const double kCatchTheta1Rad = deg2rad(15.0);
    const auto catch_angles = couple_angles(kCatchTheta1Rad, finger.joints);
    const FingerPose catch_pose = finger_fk(finger, catch_angles);
    const Vec3 tip = catch_pose.joint_positions[3];

    PressResult result;
    result.pad.name = "press_plate";
    BoxPrim pad;
    const double plate_bottom = tip.z() + finger.phalanx_radius_mm - 0.5;
    pad.half = Vec3(10.0, 30.0, 8.0);
    pad.center = Vec3(tip.x(), tip.y() - 10.0, plate_bottom + pad.half.z());
    result.pad.primitives.push_back(pad);

    result.report = close_hand(config, &result.pad, options);
    double force = 0.0;
    for (const auto& c : result.report.contacts)
        if (c.finger == fi && c.normal.z() < 0.0) force -= c.normal_force_N * c.normal.z();
    result.fingertip_force_N = force;
    return result;
}

}  // namespace softhand
