#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigman/energy.hpp"
#include "sigman/path_checks.hpp"

namespace sigman {

/// Minimum pairwise chart distance a configuration must exceed.
inline constexpr double kCollisionEps = 1e-9;

/// Interior chord samples per particle checked between consecutive
/// configurations of a path.
inline constexpr std::size_t kChordSamples = 32;

/// Ordered n-tuple of pairwise-distinct points of `manifold` (a point of C_n(M)).
struct Configuration {
  ManifoldSpec manifold;
  std::vector<AmbientPoint> points;

  std::size_t size() const noexcept { return points.size(); }
  /// Concatenated coordinates in the product chart of M^n.
  AmbientPoint flatten() const;
};

/// Minimum pairwise Euclidean chart distance; +inf for fewer than 2 points.
double collision_margin(std::span<const AmbientPoint> points);

/// Throws InvalidPathPoint for a point outside M and Collision (naming the
/// pair and its gap) when two points are within kCollisionEps.
Configuration make_configuration(ManifoldSpec m, std::vector<AmbientPoint> points);

/// Polyline in C_n(M): A = configs.front(), B = configs.back().
struct ConfigPath {
  std::vector<Configuration> configs;
  std::vector<double> params;

  const ManifoldSpec& manifold() const { return configs.front().manifold; }
  std::size_t particles() const { return configs.front().size(); }
};

/// Requires >= 2 configurations over the same manifold and particle count,
/// A != B, and strictly increasing params from 0 to 1 (uniform when empty).
ConfigPath make_config_path(std::vector<Configuration> configs, std::vector<double> params = {});

/// Samples kChordSamples interior points of every particle chord between
/// consecutive configurations for membership in M, and computes the exact
/// closest approach of every particle pair along the segment; throws
/// MidChordCollision on either failure.
void check_chords(const ConfigPath& path);

/// The path as a polyline in the product manifold M x ... x M.
PolylinePath flatten(const ConfigPath& path);

/// E1, E2 of the path under the product metric with rho the cumulative arc
/// length; bounds rho(A, B)^2 and rho(A, B)^3.
EnergyReport config_path_energy(const ConfigPath& path);

/// Energies of particle j's own curve (0-based j) measured with its own arc
/// length. A stationary particle gives (0, 0).
ArcEnergies component_energies(const ConfigPath& path, std::size_t j);

inline constexpr double kComponentTol = 1e-12;

struct ConfigBoundReport {
  EnergyReport energy;
  // (i) upper bounds
  bool upper_ok = false;
  // (ii) E1 >= E1^(j), E2 >= E2^(j) for every j
  std::vector<ArcEnergies> components;
  std::vector<bool> component_ok;
  bool components_ok = false;
  // (iii) lower bound under monotonicity and sampled hull containment
  bool all_monotone = false;
  HullCheck hull;
  bool hypotheses_iii = false;
  double lower_bound = 0.0;
  bool lower_ok = false;

  /// (i) and (ii) hold, and (iii) holds whenever its hypotheses do.
  bool all_ok() const { return upper_ok && components_ok && (!hypotheses_iii || lower_ok); }
};

/// Runs (i) and (ii); with `check_lower` also tests the hypotheses of (iii)
/// and, when they hold, the lower bound E2 >= (1/3) ||B - A||_3^3.
ConfigBoundReport check_config_bounds(const ConfigPath& path, bool check_lower = true);

/// Seeded random path of n particles in a Euclidean space (sampling box
/// [-1, 1]^d) or a spherical shell. Monotone mode moves every coordinate of
/// every particle monotonically from A to B. Rejection sampling guarantees a
/// collision margin of at least 10 * kCollisionEps and valid chords; throws
/// SamplingExhausted after 1e5 rejections.
ConfigPath random_config_path(const ManifoldSpec& m, std::size_t n, std::uint64_t seed, std::size_t steps,
                              bool monotone);

}  // namespace sigman
