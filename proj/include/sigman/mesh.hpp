#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "sigman/geometry.hpp"

namespace sigman {

/// Ordered samples of a 1-dimensional path gamma: [0, 1] -> M.
struct PolylinePath {
  ManifoldSpec manifold;
  std::vector<double> params;
  std::vector<AmbientPoint> samples;
};

/// Validates and builds a polyline. Empty params default to the uniform grid
/// i / K. Consecutive samples must be distinct and every sample must lie in
/// the manifold.
PolylinePath make_polyline(ManifoldSpec manifold, std::vector<AmbientPoint> samples,
                           std::vector<double> params = {});

using Face = std::array<std::size_t, 3>;

/// Triangulated 2-dimensional path with optional marked points a, b and an
/// optional source set (the subset A that energies are measured from).
struct TriMesh {
  ManifoldSpec manifold;
  std::vector<AmbientPoint> vertices;
  std::vector<Face> faces;
  std::optional<std::size_t> a;
  std::optional<std::size_t> b;
  std::vector<std::size_t> sources;
};

/// Checks index ranges, the a != b rule and connectivity of the edge graph.
void validate_mesh(const TriMesh& mesh);

/// Undirected edge graph of a mesh with ambient chord lengths as weights.
class MeshGraph {
 public:
  explicit MeshGraph(const TriMesh& mesh);

  struct Arc {
    std::size_t to;
    double length;
  };

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  const std::vector<Arc>& neighbours(std::size_t v) const { return adjacency_[v]; }
  bool connected() const;
  double max_edge_length() const noexcept { return max_edge_; }

  /// Multi-source Dijkstra.
  std::vector<double> distances_from(std::span<const std::size_t> sources) const;

 private:
  std::vector<std::vector<Arc>> adjacency_;
  double max_edge_ = 0.0;
};

double arc_length(const PolylinePath& path);

/// s_0 = 0, s_K = arc_length(path); s_i is the distance along the curve from
/// gamma(0) to sample i.
std::vector<double> cumulative_arclength(const PolylinePath& path);

/// Chord lengths of consecutive samples (p = 2 distance in the manifold).
std::vector<double> segment_lengths(const PolylinePath& path);

/// Shortest-path distance over the mesh edge graph from the source set to
/// every vertex. Exact on the graph; converges to the intrinsic distance
/// under refinement.
std::vector<double> geodesic_distance_field(const TriMesh& mesh, std::span<const std::size_t> sources);

struct AreaReport {
  double area = 0.0;
  /// Faces whose Heron area fell below kDegenerateFaceArea. They still
  /// contribute their (tiny) Heron value to `area`.
  std::vector<std::size_t> degenerate_faces;
};

inline constexpr double kDegenerateFaceArea = 1e-14;

/// Heron area of a triangle from its three side lengths (stable ordering).
double heron_area(double a, double b, double c);

AreaReport mesh_area(const TriMesh& mesh);

/// Per-face Heron areas, in face order.
std::vector<double> face_areas(const TriMesh& mesh);

/// Graph diameter: max over vertex pairs of the edge-graph distance.
double mesh_diameter(const TriMesh& mesh);

inline constexpr int kMaxSphereSubdivisions = 7;

/// Icosahedron oriented with vertices at (+-1, 0, 0), subdivided and projected
/// onto the unit sphere. a = (-1, 0, 0), b = (1, 0, 0). Ambient manifold R^3.
TriMesh triangulate_sphere(int subdivisions);

/// Structured grid over [x0, x1] x [y0, y1], each cell split along its
/// (lower-left, upper-right) diagonal. Ambient manifold R^2. The step is
/// rounded so an integer number of cells fits each side.
TriMesh grid_rectangle(double x0, double x1, double y0, double y1, double step);

}  // namespace sigman
