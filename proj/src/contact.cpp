#include "softhand/contact.hpp"

#include <cmath>

namespace softhand {

namespace {

// Fallback direction for degenerate (zero-distance) closest-point pairs.
const Vec3 kUp = Vec3::UnitZ();

Vec3 safe_normal(const Vec3& from_obj_to_phalanx, double dist) {
    if (dist > 1e-9) return from_obj_to_phalanx / dist;
    return kUp;
}

}  // namespace

bool capsule_primitive_contact(const Segment& seg, double radius, const Primitive& prim,
                               Contact& out) {
    if (const auto* s = std::get_if<SpherePrim>(&prim)) {
        const Vec3 p = closest_point_on_segment(seg, s->center);
        const double dist = (p - s->center).norm();
        const double pen = s->radius + radius - dist;
        if (pen < 0.0) return false;
        out.normal = safe_normal(p - s->center, dist);
        out.penetration_mm = pen;
        out.point = p - radius * out.normal;
        return true;
    }
    if (const auto* c = std::get_if<CapsulePrim>(&prim)) {
        Vec3 p_f, p_o;
        closest_points_segment_segment(seg, Segment{c->p0, c->p1}, p_f, p_o);
        const double dist = (p_f - p_o).norm();
        const double pen = c->radius + radius - dist;
        if (pen < 0.0) return false;
        out.normal = safe_normal(p_f - p_o, dist);
        out.penetration_mm = pen;
        out.point = p_f - radius * out.normal;
        return true;
    }
    const auto& b = std::get<BoxPrim>(prim);
    const OrientedBox box{b.center, b.half, b.rot};
    Vec3 p_f, p_b;
    double dist = 0.0;
    closest_segment_box(Segment{seg.a, seg.b}, box, p_f, p_b, dist);
    if (dist > 1e-9) {
        const double pen = radius - dist;
        if (pen < 0.0) return false;
        out.normal = (p_f - p_b) / dist;
        out.penetration_mm = pen;
        out.point = p_f - radius * out.normal;
        return true;
    }
    // Segment point inside the solid box: escape through the nearest face.
    double depth = 0.0;
    Vec3 face_n = kUp;
    closest_point_on_box(box, p_f, &depth, &face_n);
    out.normal = face_n;
    out.penetration_mm = radius + std::max(0.0, depth);
    out.point = p_f - radius * out.normal;
    return true;
}

std::vector<Contact> detect_contacts(const std::vector<FingerPose>& poses,
                                     const GraspObject& object) {
    std::vector<Contact> contacts;
    for (size_t fi = 0; fi < poses.size(); ++fi) {
        const FingerPose& pose = poses[fi];
        for (int ph = 0; ph < 4; ++ph) {
            for (size_t pi = 0; pi < object.primitives.size(); ++pi) {
                Contact c;
                if (capsule_primitive_contact(pose.phalanx_segments[ph], pose.phalanx_radius_mm,
                                              object.primitives[pi], c)) {
                    c.finger = static_cast<int>(fi);
                    c.phalanx = ph;
                    c.primitive = static_cast<int>(pi);
                    contacts.push_back(c);
                }
            }
        }
    }
    return contacts;
}

}  // namespace softhand
