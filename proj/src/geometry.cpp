#include "softhand/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace softhand {

Vec3 closest_point_on_segment(const Segment& s, const Vec3& p, double* t_out) {
    const Vec3 d = s.b - s.a;
    const double len2 = d.squaredNorm();
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    }
    if (t_out) *t_out = t;
    return s.a + t * d;
}

void closest_points_segment_segment(const Segment& s1, const Segment& s2,
                                    Vec3& p1, Vec3& p2) {
    const Vec3 d1 = s1.b - s1.a;
    const Vec3 d2 = s2.b - s2.a;
    const Vec3 r = s1.a - s2.a;
    const double a = d1.squaredNorm();
    const double e = d2.squaredNorm();
    const double f = d2.dot(r);

    double s = 0.0, t = 0.0;
    constexpr double eps = 1e-12;

    if (a <= eps && e <= eps) {
        // Both segments degenerate to points.
        p1 = s1.a;
        p2 = s2.a;
        return;
    }
    if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            if (denom > eps) {
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            }
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    p1 = s1.a + s * d1;
    p2 = s2.a + t * d2;
}

Vec3 closest_point_on_box(const OrientedBox& box, const Vec3& p,
                          double* inside_depth, Vec3* face_normal) {
    // Work in the box frame.
    const Vec3 local = box.rot.transpose() * (p - box.center);
    Vec3 clamped;
    bool inside = true;
    for (int i = 0; i < 3; ++i) {
        clamped[i] = std::clamp(local[i], -box.half[i], box.half[i]);
        if (clamped[i] != local[i]) inside = false;
    }
    if (!inside) {
        if (inside_depth) *inside_depth = -1.0;
        return box.center + box.rot * clamped;
    }
    // Point is interior: nearest face defines the escape direction.
    int best_axis = 0;
    double best_depth = box.half[0] - std::abs(local[0]);
    for (int i = 1; i < 3; ++i) {
        const double depth = box.half[i] - std::abs(local[i]);
        if (depth < best_depth) {
            best_depth = depth;
            best_axis = i;
        }
    }
    if (inside_depth) *inside_depth = best_depth;
    if (face_normal) {
        Vec3 n = Vec3::Zero();
        n[best_axis] = (local[best_axis] >= 0.0) ? 1.0 : -1.0;
        *face_normal = box.rot * n;
    }
    return p;
}

double closest_segment_box(const Segment& s, const OrientedBox& box,
                           Vec3& p_seg, Vec3& p_box, double& distance) {
    auto dist_at = [&](double t) {
        const Vec3 p = s.a + t * (s.b - s.a);
        const Vec3 local = box.rot.transpose() * (p - box.center);
        double d2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double excess = std::abs(local[i]) - box.half[i];
            if (excess > 0.0) d2 += excess * excess;
        }
        return d2;  // zero when inside the solid box
    };

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 120; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (dist_at(m1) <= dist_at(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const double t = 0.5 * (lo + hi);
    p_seg = s.a + t * (s.b - s.a);
    p_box = closest_point_on_box(box, p_seg);
    distance = (p_seg - p_box).norm();
    return t;
}

Mat3 rotation_from_rpy_deg(double roll_deg, double pitch_deg, double yaw_deg) {
    using Eigen::AngleAxisd;
    return (AngleAxisd(deg2rad(yaw_deg), Vec3::UnitZ()) *
            AngleAxisd(deg2rad(pitch_deg), Vec3::UnitY()) *
            AngleAxisd(deg2rad(roll_deg), Vec3::UnitX()))
        .toRotationMatrix();
}

}  // namespace softhand
