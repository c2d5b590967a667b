#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "softhand/tendon_drive.hpp"

using namespace softhand;

TEST_CASE("rest state") {
    HandConfig c = default_bpi_config();
    HandState s = HandState::rest(c);
    CHECK(s.actuator_displacement_mm == 0.0);
    REQUIRE(s.joint_angles_rad.size() == 5);
    REQUIRE(s.tendon_tension_N.size() == 3);
    for (const auto& f : s.joint_angles_rad)
        for (double a : f) CHECK(a == 0.0);
    for (const auto& f : s.joint_blocked)
        for (bool b : f) CHECK_FALSE(b);
    for (double t : s.tendon_tension_N) CHECK(t == 0.0);

    // Zero excursion at rest by construction.
    for (const auto& route : c.tendons) CHECK(tendon_excursion(route, c, s) == 0.0);
}

TEST_CASE("tendon excursion is moment arm times angle change") {
    HandConfig c = default_bpi_config();
    HandState s = HandState::rest(c);

    SUBCASE("single finger route") {
        // t3 serves only the little finger: e = 5 * (sum of its angles).
        s.joint_angles_rad[4] = {deg2rad(10), deg2rad(10.8), deg2rad(11.664)};
        const double sum = deg2rad(10 + 10.8 + 11.664);
        CHECK(tendon_excursion(c.tendons[2], c, s) == doctest::Approx(5.0 * sum).epsilon(1e-12));
    }
    SUBCASE("two-finger route adds both fingers") {
        s.joint_angles_rad[2] = {deg2rad(10), 0, 0};
        s.joint_angles_rad[3] = {0, deg2rad(20), 0};
        const double expect = 5.0 * deg2rad(10) + 5.0 * deg2rad(20);
        CHECK(tendon_excursion(c.tendons[1], c, s) == doctest::Approx(expect).epsilon(1e-12));
        // Other routes see none of it.
        CHECK(tendon_excursion(c.tendons[0], c, s) == 0.0);
    }
    SUBCASE("full flexion of one route") {
        // Both fingers of t1 at their limits: e = 2 * 5 * (90+100+80) deg.
        s.joint_angles_rad[0] = {deg2rad(90), deg2rad(100), deg2rad(80)};
        s.joint_angles_rad[1] = {deg2rad(90), deg2rad(100), deg2rad(80)};
        CHECK(tendon_excursion(c.tendons[0], c, s) ==
              doctest::Approx(2.0 * 5.0 * deg2rad(270)).epsilon(1e-12));
    }
    SUBCASE("rest offsets subtract") {
        HandConfig c2 = c;
        c2.fingers[4].joints[0].rest_angle_rad = deg2rad(5);
        HandState s2 = HandState::rest(c2);
        s2.joint_angles_rad[4][0] = deg2rad(15);
        CHECK(tendon_excursion(c2.tendons[2], c2, s2) ==
              doctest::Approx(5.0 * deg2rad(10)).epsilon(1e-12));
    }
}

TEST_CASE("series spring tension") {
    TendonRoute r;
    r.spring_stiffness = 2.0;
    r.pretension = 0.0;

    CHECK(tendon_tension(r, 5.0, 1.5) == doctest::Approx(7.0));  // 2 * 3.5
    CHECK(tendon_tension(r, 1.0, 2.0) == 0.0);                   // slack clamps at zero
    CHECK(tendon_tension(r, 3.0, 3.0) == 0.0);

    SUBCASE("pretension shifts the curve") {
        r.pretension = 1.5;
        CHECK(tendon_tension(r, 0.0, 0.0) == doctest::Approx(1.5));
        CHECK(tendon_tension(r, 5.0, 1.5) == doctest::Approx(8.5));
        CHECK(tendon_tension(r, 0.0, 10.0) == 0.0);  // clamp still applies
    }
}

TEST_CASE("joint net torque") {
    JointParams j = default_bpi_config().fingers[0].joints[0];  // arm 5, k 7.84

    CHECK(joint_net_torque(j, 10.0, 0.5) == doctest::Approx(10.0 * 5.0 - 7.84 * 0.5));
    CHECK(joint_net_torque(j, 0.0, 0.5) == doctest::Approx(-7.84 * 0.5));
    CHECK(joint_net_torque(j, 0.0, 0.0) == 0.0);

    SUBCASE("preload biases toward extension") {
        j.restoring_preload = 3.0;
        CHECK(joint_net_torque(j, 10.0, 0.0) == doctest::Approx(50.0 - 3.0));
    }
}

TEST_CASE("actuator force budget") {
    HandConfig c = default_bpi_config();  // capacity 450 N

    ForceBudget ok = actuator_force_budget(c, {100.0, 200.0, 100.0});
    CHECK(ok.capacity_N == doctest::Approx(450.0));
    CHECK(ok.total_N == doctest::Approx(400.0));
    CHECK(ok.margin_N == doctest::Approx(50.0));
    CHECK(ok.feasible);

    ForceBudget over = actuator_force_budget(c, {200.0, 200.0, 100.0});
    CHECK(over.total_N == doctest::Approx(500.0));
    CHECK_FALSE(over.feasible);

    SUBCASE("capacity follows the pulley radius") {
        c.actuator.pulley_radius_mm = 30.0;
        CHECK(actuator_force_budget(c, {0, 0, 0}).capacity_N == doctest::Approx(150.0));
    }
}
