#include "sigman/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>

#include "sigman/error.hpp"
#include "sigman/parallel.hpp"

namespace sigman {

std::size_t worker_threads() {
  if (const char* env = std::getenv("SIGMAN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

PolylinePath make_polyline(ManifoldSpec manifold, std::vector<AmbientPoint> samples,
                           std::vector<double> params) {
  if (samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "a polyline needs at least 2 samples");
  const std::size_t k = samples.size() - 1;
  if (params.empty()) {
    params.resize(samples.size());
    for (std::size_t i = 0; i <= k; ++i) params[i] = static_cast<double>(i) / static_cast<double>(k);
  }
  if (params.size() != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch, "params and samples differ in length");
  }
  if (params.front() != 0.0 || params.back() != 1.0) {
    throw Error(ErrorCode::InvalidInput, "params must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto verdict = validate_point(manifold, samples[i]);
    if (!verdict) {
      throw Error(ErrorCode::InvalidPathPoint, "sample " + std::to_string(i) + ": " + verdict.violated);
    }
    if (i > 0) {
      if (!(params[i] > params[i - 1])) throw Error(ErrorCode::InvalidInput, "params must increase strictly");
      if (samples[i] == samples[i - 1]) {
        throw Error(ErrorCode::DegeneratePath, "samples " + std::to_string(i - 1) + " and " +
                                                   std::to_string(i) + " coincide");
      }
    }
  }
  return PolylinePath{std::move(manifold), std::move(params), std::move(samples)};
}

std::vector<double> segment_lengths(const PolylinePath& path) {
  std::vector<double> out;
  out.reserve(path.samples.size() - 1);
  for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
    out.push_back(distance(path.manifold, path.samples[i], path.samples[i + 1], 2.0));
  }
  return out;
}

std::vector<double> cumulative_arclength(const PolylinePath& path) {
  const auto seg = segment_lengths(path);
  std::vector<double> s(seg.size() + 1, 0.0);
  for (std::size_t i = 0; i < seg.size(); ++i) s[i + 1] = s[i] + seg[i];
  return s;
}

double arc_length(const PolylinePath& path) { return cumulative_arclength(path).back(); }

void validate_mesh(const TriMesh& mesh) {
  const std::size_t nv = mesh.vertices.size();
  if (nv == 0) throw Error(ErrorCode::InvalidInput, "mesh has no vertices");
  for (std::size_t v = 0; v < nv; ++v) {
    if (mesh.vertices[v].size() != mesh.manifold.chart_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "vertex " + std::to_string(v) + " has wrong dimension");
    }
  }
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (std::size_t idx : mesh.faces[f]) {
      if (idx >= nv) {
        throw Error(ErrorCode::IndexOutOfRange, "face " + std::to_string(f) + " references vertex " +
                                                    std::to_string(idx));
      }
    }
  }
  auto check_index = [nv](std::optional<std::size_t> i, const char* what) {
    if (i && *i >= nv) throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " is not a vertex");
  };
  check_index(mesh.a, "mark a");
  check_index(mesh.b, "mark b");
  if (mesh.a && mesh.b && *mesh.a == *mesh.b) throw Error(ErrorCode::InvalidInput, "marks a and b coincide");
  for (std::size_t s : mesh.sources) {
    if (s >= nv) throw Error(ErrorCode::IndexOutOfRange, "source " + std::to_string(s) + " is not a vertex");
  }
  if (!MeshGraph(mesh).connected()) throw Error(ErrorCode::DisconnectedMesh, "mesh edge graph is disconnected");
}

MeshGraph::MeshGraph(const TriMesh& mesh) : adjacency_(mesh.vertices.size()) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      std::size_t u = f[e];
      std::size_t v = f[(e + 1) % 3];
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [u, v] : edges) {
    const double len = distance(mesh.manifold, mesh.vertices[u], mesh.vertices[v], 2.0);
    adjacency_[u].push_back({v, len});
    adjacency_[v].push_back({u, len});
    max_edge_ = std::max(max_edge_, len);
  }
}

bool MeshGraph::connected() const {
  if (adjacency_.empty()) return false;
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const auto& arc : adjacency_[u]) {
      if (!seen[arc.to]) {
        seen[arc.to] = 1;
        ++count;
        stack.push_back(arc.to);
      }
    }
  }
  return count == adjacency_.size();
}

std::vector<double> MeshGraph::distances_from(std::span<const std::size_t> sources) const {
  using Item = std::pair<double, std::size_t>;
  std::vector<double> dist(adjacency_.size(), std::numeric_limits<double>::infinity());
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t s : sources) {
    dist[s] = 0.0;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& arc : adjacency_[u]) {
      const double nd = d + arc.length;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

std::vector<double> geodesic_distance_field(const TriMesh& mesh, std::span<const std::size_t> sources) {
  if (sources.empty()) throw Error(ErrorCode::EmptySources, "source set is empty");
  for (std::size_t s : sources) {
    if (s >= mesh.vertices.size()) throw Error(ErrorCode::IndexOutOfRange, "source is not a vertex");
  }
  MeshGraph graph(mesh);
  if (!graph.connected()) throw Error(ErrorCode::DisconnectedMesh, "mesh edge graph is disconnected");
  return graph.distances_from(sources);
}

double heron_area(double a, double b, double c) {
  // Kahan's ordering a >= b >= c keeps the product well conditioned for
  // needle-shaped triangles.
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  const double q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return q > 0.0 ? 0.25 * std::sqrt(q) : 0.0;
}

std::vector<double> face_areas(const TriMesh& mesh) {
  std::vector<double> out;
  out.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    const auto& p = mesh.vertices[f[0]];
    const auto& q = mesh.vertices[f[1]];
    const auto& r = mesh.vertices[f[2]];
    out.push_back(heron_area(distance(mesh.manifold, p, q, 2.0), distance(mesh.manifold, q, r, 2.0),
                             distance(mesh.manifold, r, p, 2.0)));
  }
  return out;
}

AreaReport mesh_area(const TriMesh& mesh) {
  AreaReport report;
  const auto areas = face_areas(mesh);
  for (std::size_t f = 0; f < areas.size(); ++f) {
    report.area += areas[f];
    if (areas[f] < kDegenerateFaceArea) report.degenerate_faces.push_back(f);
  }
  return report;
}

double mesh_diameter(const TriMesh& mesh) {
  MeshGraph graph(mesh);
  if (!graph.connected()) throw Error(ErrorCode::DisconnectedMesh, "mesh edge graph is disconnected");
  const std::size_t nv = graph.vertex_count();
  // Eccentricity bounds from each solved vertex u: for every w,
  // max(d(u, w), ecc(u) - d(u, w)) <= ecc(w) <= ecc(u) + d(u, w).
  // A vertex leaves the candidate set once its upper bound cannot beat the
  // best eccentricity found, so the result is an exact graph diameter.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lo(nv, 0.0), hi(nv, inf);
  std::vector<std::size_t> candidates(nv);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  double diameter = 0.0;
  bool pick_high = true;
  while (!candidates.empty()) {
    auto key = [&](std::size_t a, std::size_t b) {
      if (pick_high) return hi[a] < hi[b] || (hi[a] == hi[b] && a > b);
      return lo[a] > lo[b] || (lo[a] == lo[b] && a > b);
    };
    const std::size_t u = *std::max_element(candidates.begin(), candidates.end(), key);
    pick_high = !pick_high;
    const std::size_t src[] = {u};
    const auto d = graph.distances_from(src);
    const double ecc = *std::max_element(d.begin(), d.end());
    diameter = std::max(diameter, ecc);
    std::vector<std::size_t> next;
    next.reserve(candidates.size());
    for (std::size_t w : candidates) {
      if (w == u) continue;
      lo[w] = std::max({lo[w], d[w], ecc - d[w]});
      hi[w] = std::min(hi[w], ecc + d[w]);
      if (hi[w] > diameter) next.push_back(w);
    }
    candidates.swap(next);
  }
  return diameter;
}

TriMesh triangulate_sphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > kMaxSphereSubdivisions) {
    throw Error(ErrorCode::SubdivisionLimit,
                "subdivisions must lie in [0, " + std::to_string(kMaxSphereSubdivisions) + "]");
  }
  const double phi = std::numbers::phi;
  std::vector<Eigen::Vector3d> pts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  std::vector<Face> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
  };
  // Rotate about the y axis so the vertex (phi, 0, 1) lands on +x.
  const double theta = std::atan2(1.0, phi);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (auto& p : pts) {
    p = Eigen::Vector3d(c * p.x() + s * p.z(), p.y(), -s * p.x() + c * p.z()).normalized();
  }

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
    auto mid = [&](std::size_t u, std::size_t v) {
      const auto key = std::minmax(u, v);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      pts.push_back((pts[u] + pts[v]).normalized());
      midpoint.emplace(key, pts.size() - 1);
      return pts.size() - 1;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const std::size_t ab = mid(f[0], f[1]);
      const std::size_t bc = mid(f[1], f[2]);
      const std::size_t ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  TriMesh mesh{ManifoldSpec::euclidean(3), {}, std::move(faces), std::nullopt, std::nullopt, {}};
  mesh.vertices.reserve(pts.size());
  constexpr double kSnap = 1e-9;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if ((p - Eigen::Vector3d(-1, 0, 0)).norm() < kSnap) {
      mesh.vertices.push_back({-1.0, 0.0, 0.0});
      mesh.a = i;
    } else if ((p - Eigen::Vector3d(1, 0, 0)).norm() < kSnap) {
      mesh.vertices.push_back({1.0, 0.0, 0.0});
      mesh.b = i;
    } else {
      mesh.vertices.push_back({p.x(), p.y(), p.z()});
    }
  }
  return mesh;
}

TriMesh grid_rectangle(double x0, double x1, double y0, double y1, double step) {
  if (!(x1 > x0 && y1 > y0 && step > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "grid_rectangle needs a nonempty box and a positive step");
  }
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::round((x1 - x0) / step)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::round((y1 - y0) / step)));
  TriMesh mesh{ManifoldSpec::euclidean(2), {}, {}, std::nullopt, std::nullopt, {}};
  mesh.vertices.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    const double y = j == ny ? y1 : y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny);
    for (std::size_t i = 0; i <= nx; ++i) {
      const double x = i == nx ? x1 : x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx);
      mesh.vertices.push_back({x, y});
    }
  }
  auto id = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };
  mesh.faces.reserve(2 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      mesh.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  mesh.a = id(0, 0);
  mesh.b = id(nx, ny);
  return mesh;
}

}  // namespace sigman
