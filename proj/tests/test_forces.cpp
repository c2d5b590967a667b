#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "softhand/closure.hpp"
#include "softhand/errors.hpp"
#include "softhand/kinematics.hpp"

using namespace softhand;

namespace {

// A hand-built report with one synthetic contact on the index PIP's phalanx,
// a set tension, and a chosen lever. Exercises the force formula in
// isolation from the closure engine.
GraspReport synthetic_report(const HandConfig& cfg, const Vec3& normal, double tension,
                             double lever, int force_joint) {
    GraspReport r;
    r.has_object = true;
    std::vector<std::array<double, 3>> rest(5, {0, 0, 0});
    r.final_poses = hand_fk(cfg, rest);
    r.final_state = HandState::rest(cfg);
    r.final_state.tendon_tension_N[0] = tension;  // t1 serves thumb + index

    GraspContact c;
    c.finger = cfg.finger_index("index");
    c.phalanx = force_joint + 1;
    c.force_joint = force_joint;
    const Vec3 pivot = r.final_poses[static_cast<size_t>(c.finger)]
                           .joint_positions[static_cast<size_t>(force_joint)];
    c.point = pivot + Vec3(0, 0, lever);
    c.normal = normal;
    r.contacts.push_back(c);
    return r;
}

}  // namespace

TEST_CASE("normal force = tension * moment_arm * efficiency / lever") {
    HandConfig cfg = default_bpi_config();

    SUBCASE("worked example: 20 N, 5 mm arm, 10 mm lever -> 10 N") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 20.0, 10.0, 1);
        const double holding = estimate_holding_force(r, cfg);
        CHECK(r.contacts[0].normal_force_N == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(holding == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(holding == r.holding_force_N);
    }
    SUBCASE("efficiency scales the force") {
        HandConfig half = cfg;
        for (auto& f : half.fingers)
            for (auto& j : f.joints) j.efficiency = 0.5;
        GraspReport r = synthetic_report(half, Vec3(0, 0, 1), 20.0, 10.0, 1);
        CHECK(estimate_holding_force(r, half) == doctest::Approx(5.0));
    }
    SUBCASE("zero tension gives zero force") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 0.0, 10.0, 1);
        CHECK(estimate_holding_force(r, cfg) == 0.0);
    }
    SUBCASE("longer lever, weaker contact") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 20.0, 40.0, 1);
        CHECK(estimate_holding_force(r, cfg) == doctest::Approx(2.5));
    }
}

TEST_CASE("holding force composition") {
    HandConfig cfg = default_bpi_config();  // friction coefficient 0.8

    SUBCASE("horizontal normal contributes only via friction") {
        GraspReport r = synthetic_report(cfg, Vec3(1, 0, 0), 20.0, 10.0, 1);
        CHECK(estimate_holding_force(r, cfg) == doctest::Approx(0.8 * 10.0));
    }
    SUBCASE("tilted normal mixes squeeze and friction") {
        const Vec3 n = Vec3(0.6, 0, 0.8);
        GraspReport r = synthetic_report(cfg, n, 20.0, 10.0, 1);
        CHECK(estimate_holding_force(r, cfg) == doctest::Approx(10.0 * 0.8 + 0.8 * 10.0 * 0.6));
    }
    SUBCASE("frictionless hand keeps the vertical part only") {
        HandConfig dry = cfg;
        dry.friction_coefficient = 0.0;
        GraspReport r = synthetic_report(dry, Vec3(1, 0, 0), 20.0, 10.0, 1);
        CHECK(estimate_holding_force(r, dry) == 0.0);
    }
    SUBCASE("opposed vertical contacts cancel in the net squeeze") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 20.0, 10.0, 1);
        GraspContact down = r.contacts[0];
        down.finger = cfg.finger_index("thumb");
        down.point = r.final_poses[0].joint_positions[1] + Vec3(0, 0, 10.0);
        down.normal = Vec3(0, 0, -1);
        r.contacts.push_back(down);
        // Both contacts read the same tendon: 10 N up + 10 N down -> net 0.
        CHECK(estimate_holding_force(r, cfg) == doctest::Approx(0.0));
    }
}

TEST_CASE("excluded contacts") {
    HandConfig cfg = default_bpi_config();

    SUBCASE("base-phalanx contacts carry no force") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 20.0, 10.0, 1);
        r.contacts[0].force_joint = -1;
        r.contacts[0].phalanx = 0;
        CHECK(estimate_holding_force(r, cfg) == 0.0);
        CHECK(r.contacts[0].normal_force_N == 0.0);
        CHECK(r.warnings.empty());
    }
    SUBCASE("degenerate lever is excluded with a warning") {
        GraspReport r = synthetic_report(cfg, Vec3(0, 0, 1), 20.0, 0.5, 1);
        CHECK(estimate_holding_force(r, cfg) == 0.0);
        REQUIRE(r.warnings.size() == 1);
        CHECK(r.warnings[0].find("lever") != std::string::npos);
    }
}

TEST_CASE("single finger press") {
    HandConfig cfg = default_bpi_config();

    PressResult little = single_finger_press(cfg, "little", {});
    CHECK(little.fingertip_force_N > 0.0);
    CHECK(little.pad.name == "press_plate");
    CHECK(little.report.stop_reason == StopReason::ForceBudget);

    SUBCASE("only the named finger reaches the plate") {
        for (const auto& c : little.report.contacts)
            CHECK(c.finger == cfg.finger_index("little"));
    }
    SUBCASE("the lone-tendon finger presses hardest") {
        // t3 serves the little finger alone, so its tendon keeps the largest
        // share of the stalled actuator budget.
        PressResult middle = single_finger_press(cfg, "middle", {});
        CHECK(middle.fingertip_force_N > 0.0);
        CHECK(little.fingertip_force_N > middle.fingertip_force_N);
    }
    SUBCASE("efficiency scales the reading linearly") {
        HandConfig half = cfg;
        for (auto& f : half.fingers)
            for (auto& j : f.joints) j.efficiency = 0.5;
        PressResult scaled = single_finger_press(half, "little", {});
        CHECK(scaled.fingertip_force_N ==
              doctest::Approx(0.5 * little.fingertip_force_N).epsilon(1e-9));
    }
    SUBCASE("unknown finger") {
        CHECK_THROWS_AS(single_finger_press(cfg, "pinky", {}), ValidationError);
    }
}
