#pragma once

#include <Eigen/Dense>

namespace softhand {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Line segment with endpoints in mm. Phalanges are capsules around segments.
struct Segment {
    Vec3 a;
    Vec3 b;
};

// Oriented box: rotation columns are the box axes, half extents in mm.
struct OrientedBox {
    Vec3 center;
    Vec3 half;
    Mat3 rot;
};

// Closest point on segment to point p; t_out gets the segment parameter.
Vec3 closest_point_on_segment(const Segment& s, const Vec3& p, double* t_out = nullptr);

// Closest points between two segments (Ericson, Real-Time Collision Detection).
void closest_points_segment_segment(const Segment& s1, const Segment& s2,
                                    Vec3& p1, Vec3& p2);

// Closest point on the (solid) box to p. If p is inside, returns p itself and
// sets *inside_depth to the distance to the nearest face along *face_normal
// (outward, world frame); otherwise *inside_depth is negative.
Vec3 closest_point_on_box(const OrientedBox& box, const Vec3& p,
                          double* inside_depth = nullptr, Vec3* face_normal = nullptr);

// Closest approach between a segment and a box. Distance to a convex solid is
// convex along the segment, so a ternary search on the parameter is globally
// convergent. Returns the segment parameter t of the closest point.
double closest_segment_box(const Segment& s, const OrientedBox& box,
                           Vec3& p_seg, Vec3& p_box, double& distance);

Mat3 rotation_from_rpy_deg(double roll_deg, double pitch_deg, double yaw_deg);

}  // namespace softhand
