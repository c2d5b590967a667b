#include "softhand/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "softhand/errors.hpp"
#include "softhand/rng.hpp"

namespace softhand {

WorkspaceCloud sample_workspace(const HandConfig& config, long n, std::uint64_t seed) {
    validate(config);
    if (n < 1) throw ValidationError("workspace sample count must be >= 1");

    WorkspaceCloud cloud;
    cloud.samples_per_finger = n;
    cloud.seed = seed;
    for (size_t fi = 0; fi < config.fingers.size(); ++fi) {
        const FingerConfig& f = config.fingers[fi];
        const CouplingRatios ratios = coupling_ratios(f.joints);
        const double theta1_max = f.joints[0].limit_angle_rad;
        cloud.finger_names.push_back(f.name);
        cloud.theta1_max_rad.push_back(theta1_max);

        std::vector<WorkspaceSample> samples;
        samples.reserve(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) {
            WorkspaceSample s;
            s.id = i;
            const double theta1 =
                detail::u01(detail::mix_key(seed, fi, static_cast<std::uint64_t>(i))) * theta1_max;
            s.theta_rad = {theta1, theta1 * ratios.ratio(JointId::PIP),
                           theta1 * ratios.ratio(JointId::DIP)};
            for (size_t j = 1; j < 3; ++j) {
                const double limit = f.joints[j].limit_angle_rad;
                if (s.theta_rad[j] > limit) {
                    s.theta_rad[j] = limit;
                    s.clamped = true;
                }
            }
            s.tip = finger_fk(f, s.theta_rad).joint_positions[3];
            samples.push_back(s);
        }
        cloud.per_finger.push_back(std::move(samples));
    }
    return cloud;
}

namespace {

// Deterministic subsample for the pairwise-distance scan.
std::vector<Vec3> envelope_points(const std::vector<WorkspaceSample>& samples) {
    constexpr size_t kMax = 2000;
    const size_t stride = samples.size() > kMax ? (samples.size() + kMax - 1) / kMax : 1;
    std::vector<Vec3> pts;
    pts.reserve(samples.size() / stride + 1);
    for (size_t i = 0; i < samples.size(); i += stride) pts.push_back(samples[i].tip);
    return pts;
}

}  // namespace

WorkspaceStats workspace_stats(const WorkspaceCloud& cloud) {
    if (cloud.per_finger.empty()) throw ValidationError("workspace cloud is empty");
    for (const auto& samples : cloud.per_finger)
        if (samples.empty()) throw ValidationError("workspace cloud has an empty finger");

    WorkspaceStats stats;
    for (size_t fi = 0; fi < cloud.per_finger.size(); ++fi) {
        const auto& samples = cloud.per_finger[fi];
        FingerWorkspaceStats fs;
        fs.finger = cloud.finger_names[fi];
        fs.count = static_cast<long>(samples.size());
        fs.bbox_min = Vec3::Constant(std::numeric_limits<double>::max());
        fs.bbox_max = Vec3::Constant(std::numeric_limits<double>::lowest());
        for (const auto& s : samples) {
            fs.bbox_min = fs.bbox_min.cwiseMin(s.tip);
            fs.bbox_max = fs.bbox_max.cwiseMax(s.tip);
            fs.centroid += s.tip;
            if (s.clamped) ++fs.clamped;
        }
        fs.centroid /= static_cast<double>(samples.size());
        fs.flexion_depth_mm = fs.bbox_max.z() - fs.bbox_min.z();
        stats.fingers.push_back(fs);
    }

    const auto thumb_it =
        std::find(cloud.finger_names.begin(), cloud.finger_names.end(), "thumb");
    const auto little_it =
        std::find(cloud.finger_names.begin(), cloud.finger_names.end(), "little");
    if (thumb_it != cloud.finger_names.end() && little_it != cloud.finger_names.end()) {
        const size_t t = static_cast<size_t>(thumb_it - cloud.finger_names.begin());
        const size_t l = static_cast<size_t>(little_it - cloud.finger_names.begin());
        stats.thumb_little_centroid_distance_mm =
            (stats.fingers[t].centroid - stats.fingers[l].centroid).norm();

        const std::vector<Vec3> thumb_pts = envelope_points(cloud.per_finger[t]);
        for (size_t fi = 0; fi < cloud.per_finger.size(); ++fi) {
            if (fi == t) continue;
            OppositionStats os;
            os.finger = cloud.finger_names[fi];
            double best = std::numeric_limits<double>::max();
            for (const Vec3& p : envelope_points(cloud.per_finger[fi]))
                for (const Vec3& q : thumb_pts) best = std::min(best, (p - q).squaredNorm());
            os.min_distance_mm = std::sqrt(best);
            Vec3 lo = stats.fingers[t].bbox_min.cwiseMax(stats.fingers[fi].bbox_min);
            Vec3 hi = stats.fingers[t].bbox_max.cwiseMin(stats.fingers[fi].bbox_max);
            const Vec3 extent = (hi - lo).cwiseMax(0.0);
            os.bbox_overlap_volume_mm3 = extent.x() * extent.y() * extent.z();
            stats.opposition.push_back(os);
        }
    }
    return stats;
}

}  // namespace softhand
