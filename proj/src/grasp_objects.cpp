#include "softhand/grasp_objects.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "softhand/errors.hpp"

namespace softhand {

using nlohmann::json;

double GraspObject::weight_N() const {
    if (!mass_g) return 0.0;
    return *mass_g / 1000.0 * 9.81;
}

namespace {

Vec3 prim_center(const Primitive& p) {
    if (const auto* s = std::get_if<SpherePrim>(&p)) return s->center;
    if (const auto* c = std::get_if<CapsulePrim>(&p)) return 0.5 * (c->p0 + c->p1);
    return std::get<BoxPrim>(p).center;
}

}  // namespace

Vec3 GraspObject::centroid() const {
    Vec3 c = Vec3::Zero();
    if (primitives.empty()) return c;
    for (const Primitive& p : primitives) c += prim_center(p);
    return c / static_cast<double>(primitives.size());
}

GraspObject transformed(const GraspObject& obj, double dx_mm, double dy_mm, double yaw_deg) {
    const Vec3 pivot = obj.centroid();
    const Mat3 rot = Eigen::AngleAxisd(deg2rad(yaw_deg), Vec3::UnitZ()).toRotationMatrix();
    const Vec3 shift(dx_mm, dy_mm, 0.0);
    auto map_point = [&](const Vec3& p) { return rot * (p - pivot) + pivot + shift; };

    GraspObject out = obj;
    for (Primitive& p : out.primitives) {
        if (auto* s = std::get_if<SpherePrim>(&p)) {
            s->center = map_point(s->center);
        } else if (auto* c = std::get_if<CapsulePrim>(&p)) {
            c->p0 = map_point(c->p0);
            c->p1 = map_point(c->p1);
        } else {
            auto& b = std::get<BoxPrim>(p);
            b.center = map_point(b.center);
            b.rot = rot * b.rot;
            // rpy_deg becomes stale under composition; keep the matrix as truth.
        }
    }
    return out;
}

namespace {

GraspObject sphere_obj(const std::string& name, double mass_g, const Vec3& c, double r) {
    GraspObject o;
    o.name = name;
    o.mass_g = mass_g;
    o.primitives.push_back(SpherePrim{c, r});
    return o;
}

GraspObject capsule_obj(const std::string& name, double mass_g, const Vec3& p0, const Vec3& p1,
                        double r) {
    GraspObject o;
    o.name = name;
    o.mass_g = mass_g;
    o.primitives.push_back(CapsulePrim{p0, p1, r});
    return o;
}

GraspObject box_obj(const std::string& name, double mass_g, const Vec3& c, const Vec3& half) {
    GraspObject o;
    o.name = name;
    o.mass_g = mass_g;
    o.primitives.push_back(BoxPrim{c, half, Vec3::Zero(), Mat3::Identity()});
    return o;
}

// Bench corpus: everyday objects from the grasping experiments, modeled as
// primitive assemblies resting on the palm plane (z = 0) over the upper palm.
// Dimensions follow common retail sizes.
std::vector<GraspObject> make_corpus() {
    std::vector<GraspObject> v;

    // Rope spool: one wide flange on the thumb/index side, thin rope-wound
    // core running toward the little finger.
    {
        GraspObject o;
        o.name = "large_spool";
        o.mass_g = 300.0;
        o.primitives.push_back(CapsulePrim{Vec3(26.0, 120.0, 45.0), Vec3(45.0, 120.0, 45.0), 38.0});
        o.primitives.push_back(CapsulePrim{Vec3(-45.0, 108.0, 38.0), Vec3(20.0, 108.0, 38.0), 9.0});
        v.push_back(o);
    }
    v.push_back(capsule_obj("small_spool", 150.0, Vec3(-35.0, 105.0, 25.0),
                            Vec3(35.0, 105.0, 25.0), 25.0));
    {
        GraspObject o;
        o.name = "screwdriver";
        o.mass_g = 100.0;
        o.primitives.push_back(CapsulePrim{Vec3(-15.0, 105.0, 16.0), Vec3(45.0, 105.0, 16.0), 16.0});
        o.primitives.push_back(CapsulePrim{Vec3(45.0, 105.0, 16.0), Vec3(115.0, 105.0, 16.0), 3.5});
        v.push_back(o);
    }
    v.push_back(capsule_obj("wrap", 250.0, Vec3(-50.0, 105.0, 27.0), Vec3(50.0, 105.0, 27.0), 27.0));
    v.push_back(capsule_obj("mouse", 90.0, Vec3(0.0, 88.0, 18.0), Vec3(0.0, 122.0, 18.0), 18.0));
    v.push_back(box_obj("coffee_box", 250.0, Vec3(0.0, 105.0, 35.0), Vec3(30.0, 25.0, 35.0)));
    v.push_back(box_obj("detergent", 400.0, Vec3(0.0, 105.0, 45.0), Vec3(25.0, 20.0, 45.0)));
    v.push_back(capsule_obj("tape", 120.0, Vec3(-25.0, 105.0, 28.0), Vec3(25.0, 105.0, 28.0), 28.0));
    // Pliers with rubber-sleeved handles; the sleeves give the round profile.
    {
        GraspObject o;
        o.name = "plier";
        o.mass_g = 180.0;
        o.primitives.push_back(
            CapsulePrim{Vec3(-45.0, 92.0, 11.0), Vec3(45.0, 118.0, 11.0), 11.0});
        o.primitives.push_back(
            CapsulePrim{Vec3(-45.0, 118.0, 11.0), Vec3(45.0, 92.0, 11.0), 11.0});
        v.push_back(o);
    }
    // Adjustable wrench: flat jaw head plus a thick rounded grip.
    {
        GraspObject o;
        o.name = "wrench";
        o.mass_g = 150.0;
        o.primitives.push_back(
            BoxPrim{Vec3(-37.0, 105.0, 7.0), Vec3(16.0, 13.0, 7.0), Vec3::Zero(),
                    Mat3::Identity()});
        o.primitives.push_back(CapsulePrim{Vec3(-20.0, 105.0, 9.0), Vec3(52.0, 105.0, 9.0), 9.0});
        v.push_back(o);
    }
    v.push_back(box_obj("phone_slab", 180.0, Vec3(0.0, 105.0, 6.5), Vec3(60.0, 36.0, 6.5)));
    v.push_back(box_obj("keyboard_slab", 500.0, Vec3(0.0, 115.0, 10.0), Vec3(80.0, 55.0, 10.0)));
    v.push_back(box_obj("card3mm", 5.0, Vec3(0.0, 95.0, 1.5), Vec3(27.0, 43.0, 1.5)));
    v.push_back(box_obj("usb_stick", 30.0, Vec3(0.0, 100.0, 5.0), Vec3(10.0, 30.0, 5.0)));
    return v;
}

std::vector<GraspObject> make_builtins() {
    std::vector<GraspObject> v = make_corpus();
    v.push_back(sphere_obj("sphere60", 120.0, Vec3(0.0, 102.0, 30.0), 30.0));
    // Calibration fixture: trapezoidal block held by a pull rig in front of the
    // curling fingers, clear of the resting hand so every contact forms
    // mid-flexion.
    v.push_back(box_obj("trapezoid", 180.0, Vec3(8.0, 100.0, 38.0), Vec3(30.0, 16.0, 12.0)));
    return v;
}

}  // namespace

const std::vector<GraspObject>& builtin_corpus() {
    static const std::vector<GraspObject> corpus = make_corpus();
    return corpus;
}

const std::vector<GraspObject>& builtin_objects() {
    static const std::vector<GraspObject> objs = make_builtins();
    return objs;
}

std::vector<std::string> builtin_object_names() {
    std::vector<std::string> names;
    for (const GraspObject& o : builtin_objects()) names.push_back(o.name);
    return names;
}

const GraspObject& builtin_object(const std::string& name) {
    for (const GraspObject& o : builtin_objects()) {
        if (o.name == name) return o;
    }
    std::ostringstream os;
    os << "unknown builtin object '" << name << "'; available:";
    for (const std::string& n : builtin_object_names()) os << " " << n;
    throw ValidationError(os.str());
}

void validate(const GraspObject& obj) {
    if (obj.name.empty()) throw ValidationError("object: name must be non-empty");
    if (obj.primitives.empty()) {
        throw ValidationError("object '" + obj.name + "': needs at least one primitive");
    }
    if (obj.mass_g && *obj.mass_g < 0.0) {
        throw ValidationError("object '" + obj.name + "': mass must be non-negative");
    }
    for (size_t i = 0; i < obj.primitives.size(); ++i) {
        const std::string path = "object '" + obj.name + "' primitives[" + std::to_string(i) + "]";
        const Primitive& p = obj.primitives[i];
        if (const auto* s = std::get_if<SpherePrim>(&p)) {
            if (!(s->radius > 0.0)) throw ValidationError(path + ": radius must be positive");
        } else if (const auto* c = std::get_if<CapsulePrim>(&p)) {
            if (!(c->radius > 0.0)) throw ValidationError(path + ": radius must be positive");
        } else {
            const auto& b = std::get<BoxPrim>(p);
            for (int k = 0; k < 3; ++k) {
                if (!(b.half[k] > 0.0)) {
                    throw ValidationError(path + ": half extents must be positive");
                }
            }
        }
    }
}

namespace {

Vec3 vec_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) {
        throw ValidationError(path + ": expected an array of 3 numbers");
    }
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json vec_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Primitive primitive_from_json(const json& j, const std::string& path) {
    const std::string type = j.value("type", "");
    if (type == "sphere") {
        return SpherePrim{vec_from_json(j.at("center_mm"), path + ".center_mm"),
                          j.at("radius_mm").get<double>()};
    }
    if (type == "capsule") {
        return CapsulePrim{vec_from_json(j.at("p0_mm"), path + ".p0_mm"),
                           vec_from_json(j.at("p1_mm"), path + ".p1_mm"),
                           j.at("radius_mm").get<double>()};
    }
    if (type == "box") {
        BoxPrim b;
        b.center = vec_from_json(j.at("center_mm"), path + ".center_mm");
        b.half = vec_from_json(j.at("half_extents_mm"), path + ".half_extents_mm");
        b.rpy_deg = j.contains("rpy_deg") ? vec_from_json(j["rpy_deg"], path + ".rpy_deg")
                                          : Vec3(Vec3::Zero());
        b.rot = rotation_from_rpy_deg(b.rpy_deg.x(), b.rpy_deg.y(), b.rpy_deg.z());
        return b;
    }
    throw ValidationError(path + ": unknown primitive type '" + type +
                          "' (expected sphere|capsule|box)");
}

json primitive_to_json(const Primitive& p) {
    json j;
    if (const auto* s = std::get_if<SpherePrim>(&p)) {
        j["type"] = "sphere";
        j["center_mm"] = vec_to_json(s->center);
        j["radius_mm"] = s->radius;
    } else if (const auto* c = std::get_if<CapsulePrim>(&p)) {
        j["type"] = "capsule";
        j["p0_mm"] = vec_to_json(c->p0);
        j["p1_mm"] = vec_to_json(c->p1);
        j["radius_mm"] = c->radius;
    } else {
        const auto& b = std::get<BoxPrim>(p);
        j["type"] = "box";
        j["center_mm"] = vec_to_json(b.center);
        j["half_extents_mm"] = vec_to_json(b.half);
        j["rpy_deg"] = vec_to_json(b.rpy_deg);
    }
    return j;
}

}  // namespace

std::vector<GraspObject> load_objects_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open objects file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ValidationError("objects file '" + path + "': " + e.what());
    }
    if (!doc.is_object() || !doc.contains("objects") || !doc["objects"].is_array()) {
        throw ValidationError("objects file '" + path + "': top level must be {\"objects\": [...]}");
    }
    std::vector<GraspObject> out;
    for (size_t i = 0; i < doc["objects"].size(); ++i) {
        const json& jo = doc["objects"][i];
        const std::string path_i = "objects[" + std::to_string(i) + "]";
        GraspObject o;
        o.name = jo.value("name", "");
        if (jo.contains("mass_g")) o.mass_g = jo["mass_g"].get<double>();
        if (!jo.contains("primitives") || !jo["primitives"].is_array()) {
            throw ValidationError(path_i + ": missing primitives array");
        }
        for (size_t k = 0; k < jo["primitives"].size(); ++k) {
            o.primitives.push_back(primitive_from_json(
                jo["primitives"][k], path_i + ".primitives[" + std::to_string(k) + "]"));
        }
        validate(o);
        for (const GraspObject& prev : out) {
            if (prev.name == o.name) {
                throw ValidationError(path_i + ": duplicate object name '" + o.name + "'");
            }
        }
        out.push_back(std::move(o));
    }
    if (out.empty()) throw ValidationError("objects file '" + path + "': no objects defined");
    return out;
}

std::string objects_to_json_text(const std::vector<GraspObject>& objects) {
    json doc;
    doc["objects"] = json::array();
    for (const GraspObject& o : objects) {
        json jo;
        jo["name"] = o.name;
        if (o.mass_g) jo["mass_g"] = *o.mass_g;
        jo["primitives"] = json::array();
        for (const Primitive& p : o.primitives) jo["primitives"].push_back(primitive_to_json(p));
        doc["objects"].push_back(jo);
    }
    return doc.dump(2) + "\n";
}

}  // namespace softhand
