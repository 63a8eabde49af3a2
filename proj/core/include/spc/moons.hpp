#pragma once

#include "spc/dataset.hpp"

#include <cstdint>

namespace spc {

inline constexpr int kDefaultMoonsSamples = 300;
inline constexpr double kDefaultMoonsNoise = 0.08;
inline constexpr std::uint64_t kDefaultMoonsSeed = 42;

// Two interleaving half circles of radius 1. Moon 0: (cos t, sin t) for t in
// [0, pi]. Moon 1: (1 - cos t, 0.5 - sin t). n/2 evenly spaced angles per
// moon, isotropic gaussian noise of scale `noise_sigma`; labels are 0 for the
// first n/2 columns and 1 for the rest.
Dataset generate_two_moons(int n, double noise_sigma, std::uint64_t seed);

}  // namespace spc
