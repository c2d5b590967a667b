#pragma once

#include <string>
#include <vector>

#include "softhand/grasp_objects.hpp"
#include "softhand/kinematics.hpp"

namespace softhand {

// One phalanx/primitive overlap. The normal is the unit vector from the
// object toward the phalanx; the point is the deepest point of the phalanx
// surface inside the object.
struct Contact {
    int finger = 0;
    int phalanx = 0;          // 0 base, 1 mid1, 2 mid2, 3 tip
    int primitive = 0;        // index into the object's primitive list
    Vec3 point = Vec3::Zero();
    Vec3 normal = Vec3::Zero();
    double penetration_mm = 0.0;
    double normal_force_N = 0.0;  // filled by the holding-force estimate
};

// Exact phalanx-capsule vs primitive query. Returns true when the surfaces
// touch or overlap (penetration >= 0).
bool capsule_primitive_contact(const Segment& seg, double radius, const Primitive& prim,
                               Contact& out);

// All current overlaps between the posed fingers and the object.
std::vector<Contact> detect_contacts(const std::vector<FingerPose>& poses,
                                     const GraspObject& object);

}  // namespace softhand
