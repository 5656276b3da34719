#include "sigman/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigman/error.hpp"

namespace sigman {

namespace {

bool within(double value, double bound) { return value <= bound + kBoundRelTol * std::abs(bound); }

void require_samples(const FunctionTable& f, std::size_t minimum) {
  if (f.values.size() < minimum) {
    throw Error(ErrorCode::TooFewSamples, "need at least " + std::to_string(minimum) + " samples, got " +
                                              std::to_string(f.values.size()));
  }
  if (!(f.x1 > f.x0)) throw Error(ErrorCode::InvalidInput, "function table interval is empty");
}

double trapezoid(std::span<const double> y, double h) {
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace

SignalCurve make_signal_curve(PolylinePath path) {
  if (path.samples.front() == path.samples.back()) {
    throw Error(ErrorCode::DegeneratePath, "curve endpoints coincide");
  }
  return SignalCurve{std::move(path)};
}

SignalRegion make_signal_region(TriMesh mesh, std::vector<std::size_t> targets) {
  validate_mesh(mesh);
  if (mesh.sources.empty()) throw Error(ErrorCode::EmptySources, "region signal needs a source set");
  for (std::size_t t : targets) {
    if (t >= mesh.vertices.size()) throw Error(ErrorCode::IndexOutOfRange, "target is not a vertex");
    if (std::find(mesh.sources.begin(), mesh.sources.end(), t) != mesh.sources.end()) {
      throw Error(ErrorCode::InvalidInput, "source and target sets intersect at vertex " + std::to_string(t));
    }
  }
  return SignalRegion{std::move(mesh), std::move(targets)};
}

SignalRegion top_edge_rectangle(double step) {
  TriMesh mesh = grid_rectangle(-1.0, 1.0, 0.0, 1.0, step);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (mesh.vertices[v][1] == 1.0) mesh.sources.push_back(v);
  }
  return make_signal_region(std::move(mesh));
}

ArcEnergies arc_energies(std::span<const double> segment_lengths, double offset) {
  ArcEnergies out;
  double s = offset;
  for (double ds : segment_lengths) {
    const double mid = s + 0.5 * ds;
    out.e1 += mid * ds;
    out.e2 += (mid * mid + ds * ds / 12.0) * ds;
    s += ds;
  }
  return out;
}

EnergyReport curve_energy(const SignalCurve& signal) {
  const auto seg = segment_lengths(signal.path);
  double length = 0.0;
  for (double d : seg) length += d;
  if (!(length > 0.0)) throw Error(ErrorCode::DegeneratePath, "curve has zero length");
  const auto energies = arc_energies(seg);
  EnergyReport r;
  r.e1 = energies.e1;
  r.e2 = energies.e2;
  r.bound1 = length * length;
  r.bound2 = length * length * length;
  r.satisfied1 = within(r.e1, r.bound1);
  r.satisfied2 = within(r.e2, r.bound2);
  r.samples = signal.path.samples.size();
  return r;
}

EnergyReport region_energy(const SignalRegion& signal) {
  const TriMesh& mesh = signal.mesh;
  const auto dist = geodesic_distance_field(mesh, mesh.sources);
  const auto areas = face_areas(mesh);
  EnergyReport r;
  double area = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    const double mean = (dist[face[0]] + dist[face[1]] + dist[face[2]]) / 3.0;
    r.e1 += areas[f] * mean;
    r.e2 += areas[f] * mean * mean;
    area += areas[f];
  }
  const double diam = mesh_diameter(mesh);
  r.bound1 = diam * area;
  r.bound2 = diam * diam * area;
  r.satisfied1 = within(r.e1, r.bound1);
  r.satisfied2 = within(r.e2, r.bound2);
  r.samples = mesh.vertices.size();
  r.faces = mesh.faces.size();
  return r;
}

double riemannian_energy(const FunctionTable& f) {
  require_samples(f, 3);
  const auto& y = f.values;
  const std::size_t n = y.size();
  const double h = f.step();
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d;
    if (i == 0) {
      d = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    } else if (i == n - 1) {
      d = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    } else {
      d = (y[i + 1] - y[i - 1]) / (2.0 * h);
    }
    integrand[i] = 0.5 * (1.0 + d * d);
  }
  return trapezoid(integrand, h);
}

double sp_energy(const FunctionTable& f) {
  require_samples(f, 2);
  std::vector<double> sq(f.values.size());
  std::transform(f.values.begin(), f.values.end(), sq.begin(), [](double v) { return v * v; });
  return trapezoid(sq, f.step());
}

FunctionTable antiderivative_transform(const FunctionTable& f) {
  require_samples(f, 2);
  if (f.x0 != 0.0) throw Error(ErrorCode::GridNotAtZero, "antiderivative grid must start at x = 0");
  const double h = f.step();
  FunctionTable out{f.x0, f.x1, std::vector<double>(f.values.size(), 0.0)};
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    out.values[i] = out.values[i - 1] + 0.5 * h * (f.values[i - 1] + f.values[i]);
  }
  return out;
}

FunctionTable cumulative_variation(const FunctionTable& f) {
  require_samples(f, 2);
  FunctionTable out{f.x0, f.x1, std::vector<double>(f.values.size(), 0.0)};
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    out.values[i] = out.values[i - 1] + std::abs(f.values[i] - f.values[i - 1]);
  }
  return out;
}

FunctionTable sqrt_arclength_transform(const FunctionTable& f) {
  require_samples(f, 3);
  FunctionTable out = cumulative_variation(f);
  for (double& v : out.values) v = std::sqrt(v);
  return out;
}

PolylinePath graph_polyline(const FunctionTable& f) {
  require_samples(f, 2);
  std::vector<AmbientPoint> pts;
  pts.reserve(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) pts.push_back({f.x(i), f.values[i]});
  return make_polyline(ManifoldSpec::euclidean(2), std::move(pts));
}

WordEnergy word_energy(std::span<const EnergyReport> letters) {
  if (letters.empty()) throw Error(ErrorCode::EmptyList, "a word needs at least one letter");
  WordEnergy w;
  for (const auto& l : letters) {
    w.e1 += l.e1;
    w.e2 += l.e2;
  }
  return w;
}

}  // namespace sigman
