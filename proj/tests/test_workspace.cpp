#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "softhand/errors.hpp"
#include "softhand/kinematics.hpp"
#include "softhand/report_io.hpp"
#include "softhand/workspace.hpp"

using namespace softhand;

TEST_CASE("workspace sampling is seeded and reproducible") {
    HandConfig cfg = default_bpi_config();
    WorkspaceCloud a = sample_workspace(cfg, 400, 42);
    WorkspaceCloud b = sample_workspace(cfg, 400, 42);
    WorkspaceCloud c = sample_workspace(cfg, 400, 43);

    REQUIRE(a.per_finger.size() == 5);
    REQUIRE(a.per_finger[0].size() == 400);
    CHECK(a.samples_per_finger == 400);
    CHECK(a.seed == 42);

    bool identical = true;
    bool differs = false;
    for (size_t f = 0; f < 5; ++f)
        for (size_t i = 0; i < 400; ++i) {
            const auto &sa = a.per_finger[f][i], &sb = b.per_finger[f][i],
                       &sc = c.per_finger[f][i];
            if (sa.theta_rad != sb.theta_rad || sa.tip != sb.tip) identical = false;
            if (sa.theta_rad != sc.theta_rad) differs = true;
        }
    CHECK(identical);
    CHECK(differs);

    SUBCASE("CSV is byte-identical across regeneration") {
        CHECK(workspace_csv(a) == workspace_csv(b));
        CHECK(workspace_csv(a) != workspace_csv(c));
    }
}

TEST_CASE("samples follow the coupling with limit clamping") {
    HandConfig cfg = default_bpi_config();
    WorkspaceCloud cloud = sample_workspace(cfg, 600, 7);

    for (size_t f = 0; f < 5; ++f) {
        const auto& finger = cfg.fingers[f];
        CouplingRatios ratios = coupling_ratios(finger.joints);
        CHECK(cloud.theta1_max_rad[f] == doctest::Approx(finger.joints[0].limit_angle_rad));
        for (const auto& s : cloud.per_finger[f]) {
            const double t1 = s.theta_rad[0];
            CHECK(t1 >= 0.0);
            CHECK(t1 <= finger.joints[0].limit_angle_rad);
            const double t2_raw = ratios.c2 * t1;
            const double t3_raw = ratios.c3 * t1;
            CHECK(s.theta_rad[1] ==
                  doctest::Approx(std::min(t2_raw, finger.joints[1].limit_angle_rad)));
            CHECK(s.theta_rad[2] ==
                  doctest::Approx(std::min(t3_raw, finger.joints[2].limit_angle_rad)));
            const bool should_clamp = t2_raw > finger.joints[1].limit_angle_rad ||
                                      t3_raw > finger.joints[2].limit_angle_rad;
            CHECK(s.clamped == should_clamp);

            // Reachability: the tip stays within the straight-finger radius.
            CHECK((s.tip - finger.mount_position).norm() <= 115.0 + 1e-9);

            // The stored tip is the FK of the stored angles.
            FingerPose p = finger_fk(finger, s.theta_rad);
            CHECK(s.tip.isApprox(p.joint_positions[3], 1e-12));
        }
    }
}

TEST_CASE("workspace statistics") {
    HandConfig cfg = default_bpi_config();
    WorkspaceCloud cloud = sample_workspace(cfg, 3000, 11);
    WorkspaceStats stats = workspace_stats(cloud);
    REQUIRE(stats.fingers.size() == 5);

    SUBCASE("bbox and centroid agree with a direct recompute") {
        const auto& middle = stats.fingers[2];
        Vec3 lo = cloud.per_finger[2][0].tip, hi = lo, sum = Vec3::Zero();
        long clamped = 0;
        for (const auto& s : cloud.per_finger[2]) {
            lo = lo.cwiseMin(s.tip);
            hi = hi.cwiseMax(s.tip);
            sum += s.tip;
            if (s.clamped) ++clamped;
        }
        CHECK(middle.count == 3000);
        CHECK(middle.clamped == clamped);
        CHECK(middle.bbox_min.isApprox(lo, 1e-12));
        CHECK(middle.bbox_max.isApprox(hi, 1e-12));
        CHECK(middle.centroid.isApprox(sum / 3000.0, 1e-12));
        CHECK(middle.flexion_depth_mm == doctest::Approx(hi.z() - lo.z()));
    }
    SUBCASE("flexion depth approaches the analytic arc depth") {
        // Oracle: z-extent of the coupled fingertip arc on a fine theta1 grid.
        const auto& finger = cfg.fingers[2];
        double zmin = 1e300, zmax = -1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double t1 = finger.joints[0].limit_angle_rad * i / 4000.0;
            auto a = couple_angles(t1, finger.joints);
            a[1] = std::min(a[1], finger.joints[1].limit_angle_rad);
            a[2] = std::min(a[2], finger.joints[2].limit_angle_rad);
            const double z = finger_fk(finger, a).joint_positions[3].z();
            zmin = std::min(zmin, z);
            zmax = std::max(zmax, z);
        }
        const double oracle = zmax - zmin;
        CHECK(stats.fingers[2].flexion_depth_mm <= oracle + 1e-9);
        CHECK(stats.fingers[2].flexion_depth_mm > oracle - 1.0);  // 3000 samples fill the arc
    }
    SUBCASE("opposition relates the thumb to each finger") {
        REQUIRE(stats.opposition.size() == 4);
        for (const auto& o : stats.opposition) {
            CHECK(o.finger != "thumb");
            CHECK(o.min_distance_mm >= 0.0);
            CHECK(o.bbox_overlap_volume_mm3 >= 0.0);
        }
        CHECK(stats.thumb_little_centroid_distance_mm ==
              doctest::Approx((stats.fingers[0].centroid - stats.fingers[4].centroid).norm()));
        CHECK(stats.thumb_little_centroid_distance_mm > 50.0);
    }
    SUBCASE("empty cloud throws") {
        CHECK_THROWS_AS(workspace_stats(WorkspaceCloud{}), ValidationError);
    }
}

TEST_CASE("sample count validation") {
    HandConfig cfg = default_bpi_config();
    CHECK_THROWS_AS(sample_workspace(cfg, 0, 1), ValidationError);
    WorkspaceCloud one = sample_workspace(cfg, 1, 1);
    CHECK(one.per_finger[0].size() == 1);
    CHECK(one.per_finger[0][0].id == 0);
}

TEST_CASE("workspace CSV format") {
    HandConfig cfg = default_bpi_config();
    WorkspaceCloud cloud = sample_workspace(cfg, 3, 5);
    const std::string csv = workspace_csv(cloud);

    CHECK(csv.rfind("finger,sample_id,theta1_deg,theta2_deg,theta3_deg,x_mm,y_mm,z_mm\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 3);
    CHECK(csv.find("thumb,0,") != std::string::npos);
    // Fixed six-decimal formatting, locale independent.
    CHECK(csv.find('.') != std::string::npos);
    CHECK(csv.find(',') != std::string::npos);
}
