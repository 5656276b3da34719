#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sigman/mesh.hpp"
#include "sigman/path_checks.hpp"

namespace sigman {

/// A Gaussian N(mu, sigma) as a point of Omega x P_n.
struct GaussParamPoint {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
};

/// Chart coordinates (mu, upper triangle of sigma with sqrt(2)-scaled
/// off-diagonals); the chart norm is the product of the Euclidean norm on
/// R^n and the trace norm on symmetric matrices.
AmbientPoint to_chart(const GaussParamPoint& x);
GaussParamPoint from_chart(std::span<const double> coords, std::size_t n);

/// Checks symmetry, positive definiteness and mean-in-box.
Membership validate_gauss_point(const ManifoldSpec& m, const GaussParamPoint& x);

/// Fisher metric components of the 1-D Gaussian family at (mu, sigma).
struct FisherTensor {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;
};

inline constexpr std::size_t kMinFisherQuadPoints = 200;

/// g_ij = -E[d_i d_j log f] evaluated by the trapezoid rule on
/// [mu - 12 sigma, mu + 12 sigma] with `quad_points` nodes. The second
/// partials of log f are closed-form; only the expectation is numeric.
FisherTensor fisher_metric_numeric(double mu, double sigma, std::size_t quad_points);

/// 2 sqrt(2) / (sigma^2 sqrt(pi)): a published closed form for g22 that the
/// quadrature does not reproduce.
double g22_published_closed_form(double sigma);

/// 2 / sigma^2: the classical Fisher value of g22, which the quadrature
/// reproduces.
double g22_classical_closed_form(double sigma);

/// L^p distance of the chart coordinates.
double product_metric_distance(const GaussParamPoint& x, const GaussParamPoint& y, double p = 2.0);

struct GaussianBoundReport {
  std::vector<bool> monotone;  // per chart coordinate
  bool all_monotone = false;
  HullCheck hull;
  double e2 = 0.0;
  double lower_bound = 0.0;
  bool hypotheses_hold = false;
  bool satisfied = false;
};

/// E2 >= (1/3) ||q - p||_3^3 for paths in the GaussianParam chart whose
/// coordinates are monotone and whose convex hull stays in Omega x P_n.
/// `satisfied` reports the inequality regardless of the hypotheses.
GaussianBoundReport check_gaussian_lower_bound(const PolylinePath& path);

/// Seeded monotone path in GaussianParam(box = [-5, 5]^n) with
/// diagonally dominant covariances, so every point of the axis box spanned by
/// the endpoints is a valid Gaussian.
PolylinePath random_gaussian_path(std::size_t n, std::uint64_t seed, std::size_t steps);

}  // namespace sigman
