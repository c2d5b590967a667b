#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "softhand/geometry.hpp"

namespace softhand {

struct SpherePrim {
    Vec3 center;
    double radius = 0.0;
};

struct CapsulePrim {
    Vec3 p0;
    Vec3 p1;
    double radius = 0.0;
};

struct BoxPrim {
    Vec3 center;
    Vec3 half;
    Vec3 rpy_deg = Vec3::Zero();  // kept for round-trip serialization
    Mat3 rot = Mat3::Identity();
};

using Primitive = std::variant<SpherePrim, CapsulePrim, BoxPrim>;

// Rigid object fixed in the hand frame, assembled from convex primitives.
// Positions describe the object resting on the palm plane z = 0.
struct GraspObject {
    std::string name;
    std::optional<double> mass_g;  // for lift plausibility in the bench
    std::vector<Primitive> primitives;

    double weight_N() const;   // 0 when mass is absent
    Vec3 centroid() const;     // mean of primitive centers
};

// Rigid transform of the object: rotate yaw_deg about the vertical axis
// through its centroid, then translate by (dx, dy, 0). Used for bench jitter.
GraspObject transformed(const GraspObject& obj, double dx_mm, double dy_mm, double yaw_deg);

// Built-in objects: the 14-item bench corpus plus the named extras used by
// the CLI and calibration (sphere60, trapezoid).
const std::vector<GraspObject>& builtin_corpus();          // the 14 bench items
const std::vector<GraspObject>& builtin_objects();          // corpus + extras
const GraspObject& builtin_object(const std::string& name); // throws ValidationError
std::vector<std::string> builtin_object_names();

// Objects-file IO (JSON; see docs/hand-spec.md for the schema).
std::vector<GraspObject> load_objects_file(const std::string& path);
std::string objects_to_json_text(const std::vector<GraspObject>& objects);

void validate(const GraspObject& obj);

}  // namespace softhand
