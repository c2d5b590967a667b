#pragma once

#include <string>

#include "softhand/hand_config.hpp"

namespace softhand {

// Hand-spec files are JSON: lengths in mm, angles in degrees, motor torque in
// N*m (see docs/hand-spec.md). Every field is optional; missing values fall
// back to the base config (the built-in BPI default for load/parse). Fingers
// and joints are merged by name, a "tendons" section replaces the routing
// wholesale, and unknown keys are rejected.

HandConfig load_hand_spec(const std::string& path);         // IoError, ValidationError
HandConfig config_from_spec_text(const std::string& text);  // ValidationError
HandConfig apply_spec_text(const HandConfig& base, const std::string& text);

std::string config_to_spec_text(const HandConfig& config);
void save_hand_spec(const std::string& path, const HandConfig& config);  // IoError

// Field-wise comparison with tolerance; serialization converts angles to
// degrees and back, which is not bit-exact.
bool approx_equal(const HandConfig& a, const HandConfig& b, double tol = 1e-9);

}  // namespace softhand
