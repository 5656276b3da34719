#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigman/configspace.hpp"

namespace sigman {

struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 1.0;
};

/// Simple connected graph with positive edge weights. The position of an
/// edge in `edges` is its index k in the ratio vector (the fixed edge
/// enumeration). Endpoints are stored with i < j.
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;

  std::size_t edge_count() const noexcept { return edges.size(); }
};

/// Normalizes endpoint order and rejects loops, duplicate pairs,
/// nonpositive weights, out-of-range endpoints and disconnected graphs.
WeightedGraph make_graph(std::size_t n, std::vector<WeightedEdge> edges);

using DistanceTable = std::vector<std::vector<double>>;

/// All-pairs shortest paths; `unit_weights` counts hops (BFS), otherwise the
/// edge weights are used (Dijkstra).
DistanceTable graph_metric(const WeightedGraph& g, bool unit_weights = true);

/// d_M(f(x), f(y)) = d_Gamma(x, y) for all vertex pairs, within tol.
bool is_isometric_embedding(const WeightedGraph& g, std::span<const AmbientPoint> images, const ManifoldSpec& m,
                            double tol);

/// d_M(f(v_i), f(v_j)) = 1 for every edge, within tol. Non-adjacent pairs
/// are unconstrained.
bool is_quasi_isometric_embedding(const WeightedGraph& g, std::span<const AmbientPoint> images,
                                  const ManifoldSpec& m, double tol);

/// r_k = d_M(x_i, x_j) / W(edge k) in edge order.
std::vector<double> ratio_vector(const WeightedGraph& g, const Configuration& x);

/// v(r) = sum (r_i - mean)^2 / mean^2. Zero iff all ratios are equal.
double ratio_variance(std::span<const double> r);

/// v(r(X)).
double relative_ratio_variance(const WeightedGraph& g, const Configuration& x);

/// Multiplies every point by alpha; Euclidean manifolds only.
Configuration scale_configuration(const Configuration& x, double alpha);

struct EmbedOptions {
  std::uint64_t seed = 7;
  std::size_t restarts = 20;
  std::size_t max_iters = 3000;
  double step_init = 0.1;
  double tol_obj = 1e-16;
  /// Run a simulated-annealing pass from each restart's best point before a
  /// final descent.
  bool annealing = false;
};

/// Weight of the collision barrier beta / d^2 used only during the search.
inline constexpr double kBarrierWeight = 1e-8;

struct EmbedResult {
  Configuration config;
  double objective = 0.0;  // v(r(config)), without the barrier
  std::vector<double> ratios;
  std::size_t iterations = 0;  // descent iterations of the winning restart
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
};

/// Multi-start projected descent on v(r(X)) over C_n(M) for M Euclidean,
/// the unit sphere or a spherical shell. Gradients are central differences;
/// steps use backtracking and are followed by projection onto M. Each restart
/// draws from its own stream seeded by (seed, restart index), so the result
/// does not depend on thread scheduling.
EmbedResult minimize_ratio_variance(const WeightedGraph& g, const ManifoldSpec& m, const EmbedOptions& opts = {});

}  // namespace sigman
