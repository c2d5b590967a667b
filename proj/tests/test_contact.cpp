#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <utility>

#include "softhand/contact.hpp"
#include "softhand/kinematics.hpp"

using namespace softhand;

TEST_CASE("capsule vs sphere") {
    Segment seg{Vec3(0, 0, 0), Vec3(30, 0, 0)};

    SUBCASE("overlapping: depth, normal, surface point") {
        // Axis-to-center distance 20, radii 8 + 15 = 23 -> penetration 3.
        Primitive prim = SpherePrim{Vec3(15, 20, 0), 15.0};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 8.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(3.0));
        CHECK(c.normal.isApprox(Vec3(0, -1, 0), 1e-12));  // object -> phalanx
        CHECK(c.point.isApprox(Vec3(15, 8, 0), 1e-12));   // deepest phalanx surface point
    }
    SUBCASE("touching exactly counts as contact with zero depth") {
        Primitive prim = SpherePrim{Vec3(15, 23, 0), 15.0};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 8.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(0.0));
    }
    SUBCASE("separated") {
        Primitive prim = SpherePrim{Vec3(15, 23.01, 0), 15.0};
        Contact c;
        CHECK_FALSE(capsule_primitive_contact(seg, 8.0, prim, c));
    }
    SUBCASE("sphere off the segment end clamps to the endpoint") {
        Primitive prim = SpherePrim{Vec3(40, 0, 0), 9.0};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 8.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(7.0));  // 10 apart, radii 17
        CHECK(c.normal.isApprox(Vec3(-1, 0, 0), 1e-12));
    }
}

TEST_CASE("capsule vs capsule") {
    Segment seg{Vec3(0, 0, 0), Vec3(30, 0, 0)};

    SUBCASE("perpendicular overlap") {
        Primitive prim = CapsulePrim{Vec3(15, 12, -10), Vec3(15, 12, 10), 6.0};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 8.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(2.0));  // 12 apart, radii 14
        CHECK(c.normal.isApprox(Vec3(0, -1, 0), 1e-12));
    }
    SUBCASE("separated parallel") {
        Primitive prim = CapsulePrim{Vec3(0, 15, 0), Vec3(30, 15, 0), 6.0};
        Contact c;
        CHECK_FALSE(capsule_primitive_contact(seg, 8.0, prim, c));
    }
}

TEST_CASE("capsule vs box") {
    SUBCASE("capsule above the top face") {
        Segment seg{Vec3(-10, 0, 12), Vec3(10, 0, 12)};
        Primitive prim = BoxPrim{Vec3(0, 0, 0), Vec3(20, 20, 5), Vec3::Zero(), Mat3::Identity()};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 8.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(1.0));  // 12 - 5 - 8 = -1
        CHECK(c.normal.isApprox(Vec3(0, 0, 1), 1e-12));
        CHECK(c.point.z() == doctest::Approx(4.0));  // deepest surface point
    }
    SUBCASE("separated") {
        Segment seg{Vec3(-10, 0, 14), Vec3(10, 0, 14)};
        Primitive prim = BoxPrim{Vec3(0, 0, 0), Vec3(20, 20, 5), Vec3::Zero(), Mat3::Identity()};
        Contact c;
        CHECK_FALSE(capsule_primitive_contact(seg, 8.0, prim, c));
    }
    SUBCASE("rotated box uses its own axes") {
        // 45 deg yaw puts the vertical capsule at (18, 0) nearest the box's
        // +x/-y corner edge: box-frame axis point (18/sqrt2, -18/sqrt2, z)
        // clamps to (10, -10, z), distance sqrt2 * (18/sqrt2 - 10).
        Primitive prim = BoxPrim{Vec3(0, 0, 0), Vec3(10, 10, 10),
                                 Vec3(0, 0, 45), rotation_from_rpy_deg(0, 0, 45)};
        Segment seg{Vec3(18, 0, -5), Vec3(18, 0, 5)};
        Contact c;
        REQUIRE(capsule_primitive_contact(seg, 5.0, prim, c));
        CHECK(c.penetration_mm == doctest::Approx(5.0 - (18.0 - 10.0 * std::sqrt(2.0))));
    }
}

TEST_CASE("detect_contacts over posed fingers") {
    HandConfig cfg = default_bpi_config();
    std::vector<std::array<double, 3>> rest(5, {0, 0, 0});
    std::vector<FingerPose> poses = hand_fk(cfg, rest);

    SUBCASE("thin card clears the resting hand") {
        GraspObject card;
        card.name = "card";
        card.primitives.push_back(
            BoxPrim{Vec3(0, 95, 1.5), Vec3(27, 43, 1.5), Vec3::Zero(), Mat3::Identity()});
        CHECK(detect_contacts(poses, card).empty());
    }
    SUBCASE("tall slab touches the resting fingers") {
        GraspObject slab;
        slab.name = "slab";
        slab.primitives.push_back(
            BoxPrim{Vec3(0, 115, 10), Vec3(80, 55, 10), Vec3::Zero(), Mat3::Identity()});
        auto contacts = detect_contacts(poses, slab);
        CHECK(!contacts.empty());
        for (const auto& c : contacts) {
            CHECK(c.finger >= 0);
            CHECK(c.finger < 5);
            CHECK(c.phalanx >= 0);
            CHECK(c.phalanx <= 3);
            CHECK(c.primitive == 0);
            CHECK(c.normal.norm() == doctest::Approx(1.0));
            CHECK(c.penetration_mm >= 0.0);
        }
    }
    SUBCASE("one contact per phalanx/primitive pair at most") {
        GraspObject slab;
        slab.name = "slab";
        slab.primitives.push_back(
            BoxPrim{Vec3(0, 115, 10), Vec3(80, 55, 10), Vec3::Zero(), Mat3::Identity()});
        auto contacts = detect_contacts(poses, slab);
        std::set<std::pair<int, int>> keys;
        for (const auto& c : contacts) CHECK(keys.insert({c.finger, c.phalanx}).second);
    }
}
