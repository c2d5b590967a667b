#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "softhand/closure.hpp"
#include "softhand/errors.hpp"
#include "softhand/grasp_objects.hpp"

using namespace softhand;

TEST_CASE("free closure drives every joint to its limit") {
    HandConfig cfg = default_bpi_config();
    GraspReport r = close_hand(cfg, nullptr, {});

    CHECK_FALSE(r.has_object);
    CHECK(r.contacts.empty());
    CHECK(r.all_joints_stopped);
    CHECK(r.stop_reason == StopReason::ForceBudget);
    for (size_t f = 0; f < 5; ++f)
        for (size_t j = 0; j < 3; ++j)
            CHECK(r.final_state.joint_angles_rad[f][j] ==
                  doctest::Approx(cfg.fingers[f].joints[j].limit_angle_rad).epsilon(1e-12));

    SUBCASE("final displacement matches the analytic budget stop") {
        // All excursions saturated: e(t1) = e(t2) = 2 * 5 * 270 deg,
        // e(t3) = 5 * 270 deg. Tensions 2*(x - e) sum to the 450 N capacity:
        //   2*2*(x - 47.124) + 2*(x - 23.562) = 450.
        const double e2 = 2.0 * 5.0 * deg2rad(270.0);
        const double e1 = 5.0 * deg2rad(270.0);
        const double x = (450.0 / 2.0 + 2.0 * e2 + e1) / 3.0;
        CHECK(r.final_state.actuator_displacement_mm == doctest::Approx(x).epsilon(1e-9));
        CHECK(x == doctest::Approx(114.269908).epsilon(1e-6));
    }
    SUBCASE("tensions exhaust the capacity, the lone-finger tendon highest") {
        const auto& t = r.final_state.tendon_tension_N;
        CHECK(t[0] + t[1] + t[2] == doctest::Approx(450.0).epsilon(1e-9));
        CHECK(t[2] > t[0]);  // little finger's tendon stretched the most
        CHECK(t[0] == doctest::Approx(t[1]).epsilon(1e-9));
    }
}

TEST_CASE("trace invariants on a contact-rich closure") {
    HandConfig cfg = default_bpi_config();
    const double capacity = actuator_capacity(cfg.actuator);
    GraspReport r = close_hand(cfg, &builtin_object("sphere60"), {});
    REQUIRE(r.trace.size() > 2);

    double prev_x = -1.0;
    std::vector<std::array<double, 3>> prev_angles(5, {-1, -1, -1});
    for (const auto& rec : r.trace) {
        CHECK(rec.displacement_mm > prev_x);
        prev_x = rec.displacement_mm;
        double total = 0.0;
        for (double t : rec.state.tendon_tension_N) {
            CHECK(t >= 0.0);
            total += t;
        }
        // The final record sits at the budget crossing located to the event
        // tolerance (1e-3 mm), so the sum may overshoot by spring_rate * tol.
        CHECK(total <= capacity + 0.01);
        for (size_t f = 0; f < 5; ++f)
            for (size_t j = 0; j < 3; ++j) {
                CHECK(rec.state.joint_angles_rad[f][j] >= prev_angles[f][j]);
                prev_angles[f][j] = rec.state.joint_angles_rad[f][j];
            }
    }

    SUBCASE("new-contact indices are valid and displacement-consistent") {
        for (const auto& rec : r.trace)
            for (int idx : rec.new_contacts) {
                REQUIRE(idx >= 0);
                REQUIRE(static_cast<size_t>(idx) < r.contacts.size());
                CHECK(r.contacts[static_cast<size_t>(idx)].at_displacement_mm <=
                      rec.displacement_mm + 1e-9);
            }
    }
    SUBCASE("blocked joints stay frozen for the rest of the trace") {
        for (size_t f = 0; f < 5; ++f)
            for (size_t j = 0; j < 3; ++j) {
                double frozen = -1.0;
                for (const auto& rec : r.trace) {
                    if (!rec.state.joint_blocked[f][j]) continue;
                    if (frozen < 0.0)
                        frozen = rec.state.joint_angles_rad[f][j];
                    else
                        CHECK(rec.state.joint_angles_rad[f][j] == doctest::Approx(frozen));
                }
            }
    }
    SUBCASE("every blocked joint has a contact distal to it") {
        const auto& blocked = r.final_state.joint_blocked;
        for (size_t f = 0; f < 5; ++f)
            for (size_t j = 0; j < 3; ++j) {
                if (!blocked[f][j]) continue;
                bool responsible = false;
                for (const auto& c : r.contacts)
                    if (c.finger == static_cast<int>(f) && c.phalanx > static_cast<int>(j))
                        responsible = true;
                CHECK(responsible);
            }
    }
}

TEST_CASE("halving the step refines, not changes, the outcome") {
    HandConfig cfg = default_bpi_config();
    ClosureOptions coarse;
    ClosureOptions fine;
    fine.step_mm = coarse.step_mm / 2.0;
    for (const char* name : {"sphere60", "coffee_box"}) {
        GraspReport a = close_hand(cfg, &builtin_object(name), coarse);
        GraspReport b = close_hand(cfg, &builtin_object(name), fine);
        CHECK(a.fingers_in_contact == b.fingers_in_contact);
        for (size_t f = 0; f < 5; ++f)
            for (size_t j = 0; j < 3; ++j)
                CHECK(std::fabs(a.final_state.joint_angles_rad[f][j] -
                                b.final_state.joint_angles_rad[f][j]) < 2e-3);
    }
}

TEST_CASE("sphere grasp wraps all five fingers") {
    HandConfig cfg = default_bpi_config();
    GraspReport r = close_hand(cfg, &builtin_object("sphere60"), {});
    CHECK(r.fingers_in_contact == 5);
    CHECK(r.success);
    CHECK(r.holding_force_N >= 1.5 * r.object_weight_N);
    CHECK(r.object_weight_N == doctest::Approx(0.120 * 9.81).epsilon(1e-6));

    SUBCASE("per-finger report helpers") {
        for (int f = 0; f < 5; ++f) {
            CHECK(r.total_flexion_rad(f) > 0.0);
            CHECK(r.last_contact_displacement_mm(f) >= 0.0);
        }
        GraspReport free_run = close_hand(cfg, nullptr, {});
        CHECK(free_run.last_contact_displacement_mm(0) == -1.0);
    }
}

TEST_CASE("differential adaptation: the spool") {
    HandConfig cfg = default_bpi_config();
    GraspReport r = close_hand(cfg, &builtin_object("large_spool"), {});
    const int index = cfg.finger_index("index");
    const int little = cfg.finger_index("little");

    // The wide flange stops the index side early; the little finger keeps
    // flexing onto the thin core and touches later.
    CHECK(r.total_flexion_rad(little) > r.total_flexion_rad(index));
    CHECK(r.last_contact_displacement_mm(little) > r.last_contact_displacement_mm(index));
}

TEST_CASE("thin objects slip under the fingers") {
    HandConfig cfg = default_bpi_config();

    GraspReport card = close_hand(cfg, &builtin_object("card3mm"), {});
    CHECK(card.fingers_in_contact == 0);
    CHECK_FALSE(card.success);

    GraspReport usb = close_hand(cfg, &builtin_object("usb_stick"), {});
    CHECK(usb.fingers_in_contact <= 2);
    CHECK_FALSE(usb.success);  // no opposing contact pair across fingers
}

TEST_CASE("success needs an opposing pair across fingers") {
    HandConfig cfg = default_bpi_config();
    GraspReport usb = close_hand(cfg, &builtin_object("usb_stick"), {});
    // All contacts press from above: no pair with negative normal dot.
    bool opposing = false;
    for (size_t i = 0; i < usb.contacts.size(); ++i)
        for (size_t j = i + 1; j < usb.contacts.size(); ++j)
            if (usb.contacts[i].finger != usb.contacts[j].finger &&
                usb.contacts[i].normal.dot(usb.contacts[j].normal) < 0.0)
                opposing = true;
    CHECK_FALSE(opposing);
}

TEST_CASE("contact registry keeps first-touch bookkeeping") {
    HandConfig cfg = default_bpi_config();
    GraspReport r = close_hand(cfg, &builtin_object("trapezoid"), {});
    REQUIRE(!r.contacts.empty());
    for (const auto& c : r.contacts) {
        CHECK(c.at_displacement_mm >= 0.0);
        CHECK(c.at_displacement_mm <= r.final_state.actuator_displacement_mm + 1e-9);
        CHECK(c.force_joint >= -1);
        CHECK(c.force_joint <= 2);
        if (c.phalanx == 0) CHECK(c.force_joint == -1);  // base blocks nothing
    }
}

TEST_CASE("closure option validation") {
    HandConfig cfg = default_bpi_config();
    ClosureOptions bad;
    bad.step_mm = 0.0;
    CHECK_THROWS_AS(close_hand(cfg, nullptr, bad), ValidationError);
    bad = {};
    bad.max_displacement_mm = -1.0;
    CHECK_THROWS_AS(close_hand(cfg, nullptr, bad), ValidationError);
    bad = {};
    bad.bisection_tol_mm = 0.0;
    CHECK_THROWS_AS(close_hand(cfg, nullptr, bad), ValidationError);
}

TEST_CASE("max displacement stop reason") {
    HandConfig cfg = default_bpi_config();
    ClosureOptions opt;
    opt.max_displacement_mm = 10.0;  // well before the force budget
    GraspReport r = close_hand(cfg, nullptr, opt);
    CHECK(r.stop_reason == StopReason::MaxDisplacement);
    CHECK_FALSE(r.all_joints_stopped);
    CHECK(r.final_state.actuator_displacement_mm <= 10.0 + 1e-9);
    CHECK(std::string(stop_reason_name(r.stop_reason)) == "max_displacement");
    CHECK(std::string(stop_reason_name(StopReason::ForceBudget)) == "force_budget");
}
