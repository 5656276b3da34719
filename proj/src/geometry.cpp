#include "sigman/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sigman/error.hpp"

namespace sigman {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::OutsideManifold: return "boundary-or-outside";
    case ErrorCode::NormUnsupported: return "norm-unsupported";
    case ErrorCode::ChordLeavesShell: return "chord-leaves-shell";
    case ErrorCode::InvalidSpec: return "invalid-spec";
    case ErrorCode::TooFewFactors: return "too-few-factors";
    case ErrorCode::DisconnectedMesh: return "disconnected-mesh";
    case ErrorCode::EmptySources: return "empty-sources";
    case ErrorCode::SubdivisionLimit: return "subdivision-limit";
    case ErrorCode::DegeneratePath: return "degenerate-path";
    case ErrorCode::TooFewSamples: return "too-few-samples";
    case ErrorCode::GridNotAtZero: return "grid-not-at-zero";
    case ErrorCode::EmptyList: return "empty-list";
    case ErrorCode::NonpositiveSigma: return "nonpositive-sigma";
    case ErrorCode::InvalidPathPoint: return "invalid-path-point";
    case ErrorCode::Collision: return "collision";
    case ErrorCode::MidChordCollision: return "mid-chord-collision";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::SamplingExhausted: return "sampling-exhausted";
    case ErrorCode::InvalidGraph: return "invalid-graph";
    case ErrorCode::DisconnectedGraph: return "disconnected-graph";
    case ErrorCode::NonpositiveEntry: return "nonpositive-entry";
    case ErrorCode::InfeasibleStart: return "infeasible-start-exhausted";
    case ErrorCode::NonFiniteObjective: return "non-finite-objective";
    case ErrorCode::UnsupportedManifold: return "unsupported-manifold";
    case ErrorCode::InvalidInput: return "invalid-input";
  }
  return "unknown";
}

ManifoldSpec ManifoldSpec::euclidean(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidSpec, "euclidean dimension must be >= 1");
  ManifoldSpec m;
  m.kind_ = ManifoldKind::Euclidean;
  m.n_ = dim;
  m.chart_dim_ = dim;
  return m;
}

ManifoldSpec ManifoldSpec::shell(double a, double b) {
  if (!(a > 0.0 && a < b) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidSpec, "shell requires 0 < a < b");
  }
  ManifoldSpec m;
  m.kind_ = ManifoldKind::SphericalShell;
  m.a_ = a;
  m.b_ = b;
  m.n_ = 3;
  m.chart_dim_ = 3;
  return m;
}

ManifoldSpec ManifoldSpec::unit_sphere() {
  ManifoldSpec m;
  m.kind_ = ManifoldKind::UnitSphere;
  m.n_ = 3;
  m.chart_dim_ = 3;
  return m;
}

ManifoldSpec ManifoldSpec::spd(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidSpec, "spd requires n >= 1");
  ManifoldSpec m;
  m.kind_ = ManifoldKind::Spd;
  m.n_ = n;
  m.chart_dim_ = spd_chart_dim(n);
  return m;
}

ManifoldSpec ManifoldSpec::gaussian_param(std::vector<Interval> box) {
  if (box.empty()) throw Error(ErrorCode::InvalidSpec, "gaussian_param requires a nonempty box");
  for (const auto& iv : box) {
    if (!(iv.lo < iv.hi)) throw Error(ErrorCode::InvalidSpec, "gaussian_param box interval is empty");
  }
  ManifoldSpec m;
  m.kind_ = ManifoldKind::GaussianParam;
  m.n_ = box.size();
  m.chart_dim_ = m.n_ + spd_chart_dim(m.n_);
  m.box_ = std::move(box);
  return m;
}

ManifoldSpec ManifoldSpec::fisher_half_plane() {
  ManifoldSpec m;
  m.kind_ = ManifoldKind::FisherHalfPlane;
  m.n_ = 1;
  m.chart_dim_ = 2;
  return m;
}

ManifoldSpec product_manifold(std::vector<ManifoldSpec> factors) {
  if (factors.size() < 2) throw Error(ErrorCode::TooFewFactors, "product needs at least 2 factors");
  ManifoldSpec m;
  m.kind_ = ManifoldKind::Product;
  m.chart_dim_ = 0;
  for (const auto& f : factors) m.chart_dim_ += f.chart_dim();
  m.n_ = factors.size();
  m.factors_ = std::move(factors);
  return m;
}

bool ManifoldSpec::is_flat() const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Spd:
    case ManifoldKind::GaussianParam:
      return true;
    case ManifoldKind::Product:
      return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.is_flat(); });
    default:
      return false;
  }
}

std::string ManifoldSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ManifoldKind::Euclidean: os << "euclidean(" << n_ << ")"; break;
    case ManifoldKind::SphericalShell: os << "shell(" << a_ << ", " << b_ << ")"; break;
    case ManifoldKind::UnitSphere: os << "unit_sphere"; break;
    case ManifoldKind::Spd: os << "spd(" << n_ << ")"; break;
    case ManifoldKind::GaussianParam: os << "gaussian_param(" << n_ << ")"; break;
    case ManifoldKind::FisherHalfPlane: os << "fisher_half_plane"; break;
    case ManifoldKind::Product:
      os << "product[";
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? ", " : "") << factors_[i].describe();
      os << "]";
      break;
  }
  return os.str();
}

std::size_t spd_chart_dim(std::size_t n) { return n * (n + 1) / 2; }

AmbientPoint spd_to_chart(const Eigen::MatrixXd& matrix) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  if (matrix.cols() != matrix.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  AmbientPoint out;
  out.reserve(spd_chart_dim(n));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = i; j < matrix.cols(); ++j) {
      const double sym = 0.5 * (matrix(i, j) + matrix(j, i));
      out.push_back(i == j ? sym : std::sqrt(2.0) * sym);
    }
  }
  return out;
}

Eigen::MatrixXd spd_from_chart(std::span<const double> coords, std::size_t n) {
  if (coords.size() != spd_chart_dim(n)) {
    throw Error(ErrorCode::DimensionMismatch, "spd chart expects " + std::to_string(spd_chart_dim(n)) +
                                                  " coordinates, got " + std::to_string(coords.size()));
  }
  Eigen::MatrixXd m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = i == j ? coords[k] : coords[k] / std::sqrt(2.0);
      m(i, j) = v;
      m(j, i) = v;
      ++k;
    }
  }
  return m;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 1) return symmetric(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::vector<std::span<const double>> split_factors(const ManifoldSpec& product, std::span<const double> x) {
  std::vector<std::span<const double>> out;
  std::size_t offset = 0;
  for (const auto& f : product.factors()) {
    out.push_back(x.subspan(offset, f.chart_dim()));
    offset += f.chart_dim();
  }
  return out;
}

namespace {

void check_dim(const ManifoldSpec& m, std::span<const double> x, const char* what) {
  if (x.size() != m.chart_dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has " + std::to_string(x.size()) +
                                                  " coordinates, " + m.describe() + " expects " +
                                                  std::to_string(m.chart_dim()));
  }
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

Membership reject(std::string why) { return Membership{false, std::move(why)}; }

Membership validate_spd_block(std::span<const double> coords, std::size_t n) {
  const double lam = min_eigenvalue(spd_from_chart(coords, n));
  if (!(lam > kSpdEps)) {
    std::ostringstream os;
    os << "min eigenvalue " << lam << " <= spd_eps " << kSpdEps;
    return reject(os.str());
  }
  return {};
}

}  // namespace

Membership validate_point(const ManifoldSpec& m, std::span<const double> x) {
  check_dim(m, x, "point");
  for (double v : x) {
    if (!std::isfinite(v)) return reject("non-finite coordinate");
  }
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return {};
    case ManifoldKind::SphericalShell: {
      const double r2 = squared_norm(x);
      std::ostringstream os;
      if (!(r2 > m.a())) {
        os << "|x|^2 = " << r2 << " not > a = " << m.a();
        return reject(os.str());
      }
      if (!(r2 < m.b())) {
        os << "|x|^2 = " << r2 << " not < b = " << m.b();
        return reject(os.str());
      }
      return {};
    }
    case ManifoldKind::UnitSphere: {
      const double r = std::sqrt(squared_norm(x));
      if (std::abs(r - 1.0) > kSphereEps) {
        std::ostringstream os;
        os << "|x| = " << r << " off the unit sphere";
        return reject(os.str());
      }
      return {};
    }
    case ManifoldKind::Spd:
      return validate_spd_block(x, m.n());
    case ManifoldKind::GaussianParam: {
      for (std::size_t i = 0; i < m.n(); ++i) {
        const auto& iv = m.box()[i];
        if (!(x[i] > iv.lo && x[i] < iv.hi)) {
          std::ostringstream os;
          os << "mean[" << i << "] = " << x[i] << " outside (" << iv.lo << ", " << iv.hi << ")";
          return reject(os.str());
        }
      }
      return validate_spd_block(x.subspan(m.n()), m.n());
    }
    case ManifoldKind::FisherHalfPlane:
      if (!(x[1] > 0.0)) return reject("sigma must be > 0");
      return {};
    case ManifoldKind::Product: {
      const auto blocks = split_factors(m, x);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto verdict = validate_point(m.factors()[i], blocks[i]);
        if (!verdict) return reject("factor " + std::to_string(i) + ": " + verdict.violated);
      }
      return {};
    }
  }
  return {};
}

void require_point(const ManifoldSpec& m, std::span<const double> x) {
  auto verdict = validate_point(m, x);
  if (!verdict) throw Error(ErrorCode::OutsideManifold, verdict.violated);
}

double lp_distance(std::span<const double> x, std::span<const double> y, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::NormUnsupported, "norm order must be >= 1");
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "lp_distance operands differ in size");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx = std::max(mx, std::abs(x[i] - y[i]));
    return mx;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - y[i]), p);
  return std::pow(s, 1.0 / p);
}

bool shell_chord_inside(const ManifoldSpec& shell, std::span<const double> x, std::span<const double> y) {
  // |x + t (y - x)|^2 is convex in t, so the outer bound holds on the chord
  // whenever it holds at the ends; only the inner ball can cut the chord.
  double dd = 0.0;
  double xd = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = y[i] - x[i];
    dd += d * d;
    xd += x[i] * d;
  }
  const double x2 = squared_norm(x);
  const double y2 = squared_norm(y);
  if (!(x2 > shell.a() && x2 < shell.b() && y2 > shell.a() && y2 < shell.b())) return false;
  if (dd == 0.0) return true;
  const double t = std::clamp(-xd / dd, 0.0, 1.0);
  const double closest = x2 + 2.0 * t * xd + t * t * dd;
  return closest > shell.a();
}

double distance(const ManifoldSpec& m, std::span<const double> x, std::span<const double> y, double p) {
  check_dim(m, x, "x");
  check_dim(m, y, "y");
  if (!(p >= 1.0)) throw Error(ErrorCode::NormUnsupported, "norm order must be >= 1");
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Spd:
    case ManifoldKind::GaussianParam:
      return lp_distance(x, y, p);
    case ManifoldKind::SphericalShell:
      if (p != 2.0) throw Error(ErrorCode::NormUnsupported, "shell distance is defined for p = 2 only");
      if (!shell_chord_inside(m, x, y)) {
        throw Error(ErrorCode::ChordLeavesShell,
                    "chord leaves the shell; use the mesh geodesic distance for this pair");
      }
      return lp_distance(x, y, 2.0);
    case ManifoldKind::UnitSphere: {
      const Eigen::Vector3d u(x[0], x[1], x[2]);
      const Eigen::Vector3d v(y[0], y[1], y[2]);
      return std::atan2(u.cross(v).norm(), u.dot(v));
    }
    case ManifoldKind::FisherHalfPlane:
      throw Error(ErrorCode::NormUnsupported, "no closed-form distance on the Fisher half-plane");
    case ManifoldKind::Product: {
      const auto xs = split_factors(m, x);
      const auto ys = split_factors(m, y);
      if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const double d = distance(m.factors()[i], xs[i], ys[i], 2.0);
          s += d * d;
        }
        return std::sqrt(s);
      }
      if (!m.is_flat()) {
        throw Error(ErrorCode::NormUnsupported, "L^p distance on a product needs flat factors");
      }
      return lp_distance(x, y, p);
    }
  }
  return 0.0;
}

double tangent_norm(const ManifoldSpec& m, std::span<const double> x, std::span<const double> v) {
  check_dim(m, x, "base point");
  check_dim(m, v, "tangent vector");
  if (m.kind() == ManifoldKind::FisherHalfPlane) {
    const double sigma2 = x[1] * x[1];
    return std::sqrt(v[0] * v[0] / sigma2 + kFisherSigmaCoefficient * v[1] * v[1] / sigma2);
  }
  if (m.kind() == ManifoldKind::Product) {
    const auto xs = split_factors(m, x);
    const auto vs = split_factors(m, v);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = tangent_norm(m.factors()[i], xs[i], vs[i]);
      s += f * f;
    }
    return std::sqrt(s);
  }
  return std::sqrt(squared_norm(v));
}

}  // namespace sigman
