#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sigman {

/// Outcome of one verification suite. `passed` of `total` cases held.
struct SuiteResult {
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;
  bool ok = false;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<std::pair<std::string, double>> extremes;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t curves = 1000;        // bounded energy of random curves
  std::size_t gaussian_paths = 1000;
  std::size_t config_paths = 1000;
  std::size_t scale_configs = 1000;
  int sphere_subdivisions = 3;
};

/// Upper bounds E1 <= rho^2, E2 <= rho^3 on random polylines in R^2, R^3 and
/// a spherical shell, plus the diameter-area bounds on the icosphere.
SuiteResult verify_curve_bounds(const VerifyOptions& opts);

/// E2 >= (1/3) ||q - p||_3^3 on random monotone paths of Gaussians (n = 1, 2).
SuiteResult verify_gaussian_lower_bound(const VerifyOptions& opts);

/// Upper, component and (on the monotone sub-corpus) lower bounds for
/// configuration paths in a spherical shell with n in {2, 3, 5} particles.
SuiteResult verify_config_bounds(const VerifyOptions& opts);

/// Equal-ratio configurations give v = 0; perturbing one edge gives v > 0.
SuiteResult verify_equal_ratio(const VerifyOptions& opts);

/// v(alpha X) = v(X) for random Euclidean configurations and alpha
/// log-uniform in [1e-2, 1e2].
SuiteResult verify_scale_invariance(const VerifyOptions& opts);

/// All five suites, in a fixed order.
std::vector<SuiteResult> verify_all(const VerifyOptions& opts);

}  // namespace sigman
