#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sigman {

/// Coordinates of a point (or tangent vector) in a manifold's chart.
using AmbientPoint = std::vector<double>;

/// Minimum eigenvalue a matrix must exceed to count as positive definite.
inline constexpr double kSpdEps = 1e-10;

/// Tolerance on | |x| - 1 | for points of the unit sphere.
inline constexpr double kSphereEps = 1e-9;

/// Coefficient of dsigma^2 / sigma^2 in the Fisher metric of 1-D Gaussians.
/// The quadrature in gaussian.hpp reproduces this value; see fisher_metric_numeric.
inline constexpr double kFisherSigmaCoefficient = 2.0;

enum class ManifoldKind {
  Euclidean,
  SphericalShell,
  UnitSphere,
  Spd,
  GaussianParam,
  FisherHalfPlane,
  Product,
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Tagged description of an ambient Riemannian manifold.
///
/// Charts:
///   - Euclidean(d): R^d.
///   - SphericalShell(a, b): R^3 restricted to a < |x|^2 < b, induced metric.
///   - UnitSphere: R^3 coordinates with |x| = 1, great-circle distance.
///   - Spd(n): upper triangle of the matrix scanned row-major, off-diagonal
///     entries multiplied by sqrt(2) so the chart norm equals sqrt(tr(A^T A)).
///   - GaussianParam(box): mean (n entries) followed by the Spd(n) chart of the
///     covariance; flat product metric on Omega x P_n.
///   - FisherHalfPlane: (mu, sigma) with sigma > 0 and the 1-D Fisher metric.
///   - Product: concatenation of factor charts with the product metric.
class ManifoldSpec {
 public:
  static ManifoldSpec euclidean(std::size_t dim);
  static ManifoldSpec shell(double a, double b);
  static ManifoldSpec unit_sphere();
  static ManifoldSpec spd(std::size_t n);
  static ManifoldSpec gaussian_param(std::vector<Interval> box);
  static ManifoldSpec fisher_half_plane();

  ManifoldKind kind() const noexcept { return kind_; }
  std::size_t chart_dim() const noexcept { return chart_dim_; }

  /// Matrix size n for Spd and GaussianParam; ambient dimension for Euclidean.
  std::size_t n() const noexcept { return n_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const std::vector<Interval>& box() const noexcept { return box_; }
  const std::vector<ManifoldSpec>& factors() const noexcept { return factors_; }

  /// True when the chart metric is the flat Euclidean one and L^p distances
  /// of chart coordinates are meaningful.
  bool is_flat() const;

  std::string describe() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;

 private:
  friend ManifoldSpec product_manifold(std::vector<ManifoldSpec> factors);

  ManifoldKind kind_ = ManifoldKind::Euclidean;
  std::size_t chart_dim_ = 0;
  std::size_t n_ = 0;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<Interval> box_;
  std::vector<ManifoldSpec> factors_;
};

/// Builds the product manifold; requires at least two factors.
ManifoldSpec product_manifold(std::vector<ManifoldSpec> factors);

struct Membership {
  bool accepted = true;
  std::string violated;  // offending constraint when rejected

  explicit operator bool() const noexcept { return accepted; }
};

/// Strict interior membership test. Throws DimensionMismatch on a wrong
/// coordinate count; every other failure is reported in the verdict.
Membership validate_point(const ManifoldSpec& m, std::span<const double> x);

/// validate_point that throws OutsideManifold with the violated constraint.
void require_point(const ManifoldSpec& m, std::span<const double> x);

/// Distance between two chart points.
///
/// Flat kinds return ||x - y||_p of the chart coordinates. UnitSphere returns
/// the great-circle distance and ignores p. SphericalShell accepts only p = 2
/// and returns the chord length when the chord stays inside the shell;
/// otherwise it throws ChordLeavesShell (use a mesh geodesic instead).
/// Products with p = 2 aggregate factor distances in quadrature; other p need
/// all factors flat. FisherHalfPlane has no closed-form distance here.
double distance(const ManifoldSpec& m, std::span<const double> x, std::span<const double> y,
                double p = 2.0);

/// Riemannian norm of tangent vector v at x.
double tangent_norm(const ManifoldSpec& m, std::span<const double> x, std::span<const double> v);

/// True when the open chord (x, y) of the shell avoids the inner ball.
bool shell_chord_inside(const ManifoldSpec& shell, std::span<const double> x,
                        std::span<const double> y);

/// Plain L^p norm of x - y.
double lp_distance(std::span<const double> x, std::span<const double> y, double p);

// Spd chart helpers. The chart stores the upper triangle row-major with the
// off-diagonal entries scaled by sqrt(2).
std::size_t spd_chart_dim(std::size_t n);
AmbientPoint spd_to_chart(const Eigen::MatrixXd& matrix);
Eigen::MatrixXd spd_from_chart(std::span<const double> coords, std::size_t n);
double min_eigenvalue(const Eigen::MatrixXd& symmetric);

/// Splits a Product chart point into its factor blocks.
std::vector<std::span<const double>> split_factors(const ManifoldSpec& product,
                                                   std::span<const double> x);

}  // namespace sigman
