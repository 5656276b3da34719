#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sigman/geometry.hpp"

namespace sigman {

inline constexpr double kMonotoneEps = 1e-12;

/// Absolute slack for the cubic lower bound E2 >= (1/3) ||q - p||_3^3.
inline constexpr double kLowerBoundTol = 1e-9;

/// Per-coordinate monotonicity of a sample sequence: coordinate c is monotone
/// when its successive differences are all >= -eps or all <= eps.
std::vector<bool> coordinatewise_monotone(std::span<const AmbientPoint> samples, double eps = kMonotoneEps);

struct HullCheck {
  bool ok = true;
  std::size_t tested = 0;
  std::size_t failed = 0;
};

inline constexpr std::size_t kHullRandomCombinations = 1000;
inline constexpr std::uint64_t kHullSeed = 0x5eed;

/// Sampled convex-hull containment: all pairwise midpoints of the samples
/// plus `random_count` random convex combinations of 2 to 4 samples (seeded)
/// must satisfy `accept`. This certifies nothing for non-convex targets; it
/// is a sampling test.
HullCheck hull_samples_pass(std::span<const AmbientPoint> samples,
                            const std::function<bool(std::span<const double>)>& accept,
                            std::size_t random_count = kHullRandomCombinations,
                            std::uint64_t seed = kHullSeed);

/// (1/3) ||q - p||_3^3.
double cubic_lower_bound(std::span<const double> p, std::span<const double> q);

}  // namespace sigman
