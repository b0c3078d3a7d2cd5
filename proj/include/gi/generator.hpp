#pragma once

#include <cstdint>
#include <string>

#include "gi/instance.hpp"

namespace gi {

/// Synthetic-instance profiles. The crisp-like and drone-like profiles scale
/// the color universe with n and calibrate the per-vertex color density and
/// edge-weight range to their namesake corpora; uniform is a small neutral
/// default.
enum class GeneratorProfile { CrispLike, DroneLike, Uniform };

GeneratorProfile generator_profile_from(const std::string& name);

/// Random geometric graph in the unit cube with POI visibility color sets.
/// Always connected; deterministic for a fixed (profile, n, seed).
InspectionInstance generate_instance(GeneratorProfile profile, int n, uint64_t seed);

}  // namespace gi
