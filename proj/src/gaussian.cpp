#include "sigman/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sigman/energy.hpp"
#include "sigman/error.hpp"

namespace sigman {

AmbientPoint to_chart(const GaussParamPoint& x) {
  if (x.sigma.rows() != x.mu.size() || x.sigma.cols() != x.mu.size()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance size does not match the mean");
  }
  AmbientPoint out(x.mu.data(), x.mu.data() + x.mu.size());
  const auto tri = spd_to_chart(x.sigma);
  out.insert(out.end(), tri.begin(), tri.end());
  return out;
}

GaussParamPoint from_chart(std::span<const double> coords, std::size_t n) {
  if (coords.size() != n + spd_chart_dim(n)) {
    throw Error(ErrorCode::DimensionMismatch, "gaussian chart expects " +
                                                  std::to_string(n + spd_chart_dim(n)) + " coordinates");
  }
  GaussParamPoint x;
  x.mu = Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(n));
  x.sigma = spd_from_chart(coords.subspan(n), n);
  return x;
}

Membership validate_gauss_point(const ManifoldSpec& m, const GaussParamPoint& x) {
  if (m.kind() != ManifoldKind::GaussianParam) {
    throw Error(ErrorCode::UnsupportedManifold, "expected a gaussian_param manifold");
  }
  if (static_cast<std::size_t>(x.mu.size()) != m.n()) {
    throw Error(ErrorCode::DimensionMismatch, "mean has the wrong dimension");
  }
  if (!x.sigma.isApprox(x.sigma.transpose(), 1e-12)) return Membership{false, "covariance is not symmetric"};
  return validate_point(m, to_chart(x));
}

FisherTensor fisher_metric_numeric(double mu, double sigma, std::size_t quad_points) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::NonpositiveSigma, "sigma must be positive");
  if (quad_points < kMinFisherQuadPoints) {
    throw Error(ErrorCode::TooFewSamples, "fisher quadrature needs at least 200 points");
  }
  const double lo = mu - 12.0 * sigma;
  const double hi = mu + 12.0 * sigma;
  const double h = (hi - lo) / static_cast<double>(quad_points - 1);
  const double s2 = sigma * sigma;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2);
  double i11 = 0.0;
  double i12 = 0.0;
  double i22 = 0.0;
  for (std::size_t k = 0; k < quad_points; ++k) {
    const double x = k + 1 == quad_points ? hi : lo + h * static_cast<double>(k);
    const double z = x - mu;
    const double w = (k == 0 || k + 1 == quad_points) ? 0.5 : 1.0;
    const double density = norm * std::exp(-z * z / (2.0 * s2));
    // Second partials of log f(x; mu, sigma).
    const double d_mu_mu = -1.0 / s2;
    const double d_mu_sigma = -2.0 * z / (s2 * sigma);
    const double d_sigma_sigma = 1.0 / s2 - 3.0 * z * z / (s2 * s2);
    i11 += w * density * d_mu_mu;
    i12 += w * density * d_mu_sigma;
    i22 += w * density * d_sigma_sigma;
  }
  return FisherTensor{-h * i11, -h * i12, -h * i22};
}

double g22_published_closed_form(double sigma) {
  return 2.0 * std::numbers::sqrt2 / (sigma * sigma * std::sqrt(std::numbers::pi));
}

double g22_classical_closed_form(double sigma) { return 2.0 / (sigma * sigma); }

double product_metric_distance(const GaussParamPoint& x, const GaussParamPoint& y, double p) {
  if (x.mu.size() != y.mu.size()) throw Error(ErrorCode::DimensionMismatch, "gaussians differ in dimension");
  return lp_distance(to_chart(x), to_chart(y), p);
}

GaussianBoundReport check_gaussian_lower_bound(const PolylinePath& path) {
  const ManifoldSpec& m = path.manifold;
  if (m.kind() != ManifoldKind::GaussianParam) {
    throw Error(ErrorCode::UnsupportedManifold, "lower-bound check needs a gaussian_param path");
  }
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    auto verdict = validate_point(m, path.samples[i]);
    if (!verdict) {
      throw Error(ErrorCode::InvalidPathPoint, "sample " + std::to_string(i) + ": " + verdict.violated);
    }
  }
  GaussianBoundReport report;
  report.monotone = coordinatewise_monotone(path.samples);
  report.all_monotone = std::all_of(report.monotone.begin(), report.monotone.end(), [](bool b) { return b; });
  report.hull = hull_samples_pass(path.samples, [&m](std::span<const double> x) {
    return validate_point(m, x).accepted;
  });
  const auto energy = curve_energy(make_signal_curve(path));
  report.e2 = energy.e2;
  report.lower_bound = cubic_lower_bound(path.samples.front(), path.samples.back());
  report.hypotheses_hold = report.all_monotone && report.hull.ok;
  report.satisfied = report.e2 >= report.lower_bound - kLowerBoundTol;
  return report;
}

PolylinePath random_gaussian_path(std::size_t n, std::uint64_t seed, std::size_t steps) {
  if (n == 0 || steps == 0) throw Error(ErrorCode::InvalidInput, "need n >= 1 and steps >= 1");
  std::vector<Interval> box(n, Interval{-5.0, 5.0});
  const ManifoldSpec m = ManifoldSpec::gaussian_param(box);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mean(-4.5, 4.5);
  std::uniform_real_distribution<double> diag(1.0, 3.0);
  // |off-diagonal| <= 0.3 / (n - 1) keeps every row strictly diagonally dominant.
  const double off_max = n > 1 ? 0.3 / static_cast<double>(n - 1) : 0.0;
  std::uniform_real_distribution<double> off(-off_max, off_max);
  auto endpoint = [&] {
    GaussParamPoint g{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
    for (std::size_t i = 0; i < n; ++i) g.mu(i) = mean(rng);
    for (std::size_t i = 0; i < n; ++i) {
      g.sigma(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g.sigma(i, j) = g.sigma(j, i) = off(rng);
    }
    return to_chart(g);
  };
  const AmbientPoint p = endpoint();
  const AmbientPoint q = endpoint();
  const std::size_t dim = p.size();
  // Each coordinate follows its own sorted schedule of fractions in [0, 1].
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> fractions(dim, std::vector<double>(steps + 1));
  for (auto& f : fractions) {
    f.front() = 0.0;
    f.back() = 1.0;
    for (std::size_t k = 1; k < steps; ++k) f[k] = unit(rng);
    std::sort(f.begin() + 1, f.end() - 1);
  }
  std::vector<AmbientPoint> samples(steps + 1, AmbientPoint(dim));
  for (std::size_t k = 0; k <= steps; ++k) {
    for (std::size_t c = 0; c < dim; ++c) samples[k][c] = p[c] + fractions[c][k] * (q[c] - p[c]);
  }
  samples.front() = p;
  samples.back() = q;
  return make_polyline(m, std::move(samples));
}

}  // namespace sigman
