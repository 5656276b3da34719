#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "sigman/graphembed.hpp"
#include "test_support.hpp"

using namespace sigman;
using testing::uniform;

namespace {

const ManifoldSpec kPlane = ManifoldSpec::euclidean(2);

WeightedGraph unit_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<WeightedEdge> edges;
  for (auto [i, j] : pairs) edges.push_back({i, j, 1.0});
  return make_graph(n, edges);
}

WeightedGraph complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return unit_graph(n, pairs);
}

WeightedGraph cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return unit_graph(n, pairs);
}

// Brute force: shortest simple path by exhaustive DFS.
double dfs_shortest(const WeightedGraph& g, std::size_t s, std::size_t t, bool unit) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> seen(g.n, false);
  std::function<void(std::size_t, double)> go = [&](std::size_t u, double len) {
    if (u == t) {
      best = std::min(best, len);
      return;
    }
    seen[u] = true;
    for (const auto& e : g.edges) {
      const std::size_t v = e.i == u ? e.j : (e.j == u ? e.i : g.n);
      if (v < g.n && !seen[v]) go(v, len + (unit ? 1.0 : e.w));
    }
    seen[u] = false;
  };
  go(s, 0.0);
  return best;
}

WeightedGraph random_graph(std::mt19937_64& g, std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<std::size_t>(uniform(g, 0, static_cast<double>(v))), v, uniform(g, 0.5, 3)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool present = std::any_of(edges.begin(), edges.end(), [&](const WeightedEdge& e) {
        return (e.i == i && e.j == j) || (e.i == j && e.j == i);
      });
      if (!present && uniform(g, 0, 1) < 0.3) edges.push_back({i, j, uniform(g, 0.5, 3)});
    }
  }
  return make_graph(n, edges);
}

Configuration random_config(std::mt19937_64& g, std::size_t n, std::size_t dim = 2) {
  std::vector<AmbientPoint> pts(n, AmbientPoint(dim));
  for (auto& p : pts) {
    for (auto& c : p) c = uniform(g, -2, 2);
  }
  return make_configuration(ManifoldSpec::euclidean(dim), pts);
}

// v of the unit square with both diagonals: ratios (1, 1, 1, 1, sqrt2, sqrt2).
double square_k4_value() {
  const double s = std::sqrt(2.0);
  const double mean = (4.0 + 2.0 * s) / 6.0;
  return (4 * (1 - mean) * (1 - mean) + 2 * (s - mean) * (s - mean)) / (mean * mean);
}

}  // namespace

TEST_CASE("graph_metric examples") {
  const auto path = unit_graph(3, {{0, 1}, {1, 2}});
  CHECK(graph_metric(path)[0][2] == 2.0);
  const auto k4 = graph_metric(complete(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(k4[i][j] == (i == j ? 0.0 : 1.0));
  }
  const auto c4 = graph_metric(cycle(4));
  CHECK(c4[0][2] == 2.0);
  CHECK(c4[1][3] == 2.0);
  CHECK(c4[0][2] == dfs_shortest(cycle(4), 0, 2, true));
}

TEST_CASE("graph_metric agrees with brute-force search") {
  auto g = testing::rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto graph = random_graph(g, 3 + trial % 6);
    for (bool unit : {true, false}) {
      const auto d = graph_metric(graph, unit);
      for (std::size_t i = 0; i < graph.n; ++i) {
        CHECK(d[i][i] == 0.0);
        for (std::size_t j = 0; j < graph.n; ++j) {
          CHECK(d[i][j] == d[j][i]);
          CHECK(d[i][j] == doctest::Approx(dfs_shortest(graph, i, j, unit)).epsilon(1e-12));
          for (std::size_t k = 0; k < graph.n; ++k) CHECK(d[i][k] <= d[i][j] + d[j][k] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("make_graph normalization and errors") {
  const auto g = make_graph(3, {{2, 0, 1.0}, {1, 2, 2.0}});
  CHECK(g.edges[0].i == 0);
  CHECK(g.edges[0].j == 2);
  CHECK(g.edge_count() == 2);
  CHECK_THROWS_CODE(make_graph(3, {{0, 0, 1.0}, {1, 2, 1.0}}), ErrorCode::InvalidGraph);
  CHECK_THROWS_CODE(make_graph(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}}), ErrorCode::InvalidGraph);
  CHECK_THROWS_CODE(make_graph(3, {{0, 1, 0.0}, {1, 2, 1.0}}), ErrorCode::InvalidGraph);
  CHECK_THROWS_CODE(make_graph(3, {{0, 1, 1.0}, {1, 5, 1.0}}), ErrorCode::InvalidGraph);
  CHECK_THROWS_CODE(make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}), ErrorCode::DisconnectedGraph);
}

TEST_CASE("isometric embedding examples") {
  const auto edge = unit_graph(2, {{0, 1}});
  const std::vector<AmbientPoint> unit_pair{{0, 0}, {1, 0}};
  CHECK(is_isometric_embedding(edge, unit_pair, kPlane, 1e-9));

  const auto path = unit_graph(3, {{0, 1}, {1, 2}});
  const std::vector<AmbientPoint> bent{{0, 0}, {1, 0}, {1, 1}};
  const std::vector<AmbientPoint> line{{0, 0}, {1, 0}, {2, 0}};
  CHECK_FALSE(is_isometric_embedding(path, bent, kPlane, 1e-9));
  CHECK(is_isometric_embedding(path, line, kPlane, 1e-9));
  CHECK(is_quasi_isometric_embedding(path, bent, kPlane, 1e-9));

  const double h = std::sqrt(3.0) / 2;
  const std::vector<AmbientPoint> tri{{0, 0}, {1, 0}, {0.5, h}};
  CHECK(is_quasi_isometric_embedding(complete(3), tri, kPlane, 1e-12));
  CHECK(is_isometric_embedding(complete(3), tri, kPlane, 1e-12));
  const std::vector<AmbientPoint> long_edge{{0, 0}, {1.5, 0}};
  CHECK_FALSE(is_quasi_isometric_embedding(edge, long_edge, kPlane, 1e-6));

  const std::vector<AmbientPoint> off_sphere{{1, 0, 0}, {0, 2, 0}};
  CHECK_THROWS_CODE(is_isometric_embedding(edge, off_sphere, ManifoldSpec::unit_sphere(), 1e-9),
                    ErrorCode::InvalidPathPoint);
}

TEST_CASE("ratio_vector examples") {
  const double h = std::sqrt(3.0) / 2;
  const auto k3 = complete(3);
  const auto tri = make_configuration(kPlane, {{0, 0}, {1, 0}, {0.5, h}});
  for (double r : ratio_vector(k3, tri)) CHECK(r == doctest::Approx(1.0));
  for (double r : ratio_vector(k3, scale_configuration(tri, 2))) CHECK(r == doctest::Approx(2.0));

  const auto weighted = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  const auto line = make_configuration(ManifoldSpec::euclidean(1), {{0}, {1}, {3}});
  CHECK(ratio_vector(weighted, line) == std::vector<double>{1.0, 1.0});
  CHECK_THROWS_CODE(ratio_vector(complete(4), tri), ErrorCode::DimensionMismatch);
}

TEST_CASE("ratio_variance examples") {
  const double ones[] = {1, 1, 1};
  CHECK(ratio_variance(ones) == 0.0);
  const double cs[] = {0.37, 0.37, 0.37, 0.37};
  CHECK(ratio_variance(cs) == 0.0);
  const double r13[] = {1, 3};
  CHECK(ratio_variance(r13) == doctest::Approx(0.5));
  const double bad[] = {1, 0};
  CHECK_THROWS_CODE(ratio_variance(bad), ErrorCode::NonpositiveEntry);
  CHECK_THROWS_CODE(ratio_variance(std::span<const double>{}), ErrorCode::EmptyList);
}

TEST_CASE("ratio_variance matches the formula on random vectors") {
  auto g = testing::rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> r(1 + trial % 12);
    for (auto& x : r) x = std::pow(10.0, uniform(g, -3, 3));
    const double m = static_cast<double>(r.size());
    const double sum = std::accumulate(r.begin(), r.end(), 0.0);
    double num = 0.0;
    for (double x : r) num += (x - sum / m) * (x - sum / m);
    const double v = ratio_variance(r);
    CHECK(v >= 0.0);
    CHECK(v == doctest::Approx(num / (sum * sum / (m * m))).epsilon(1e-10));
  }
}

TEST_CASE("v vanishes exactly on equal ratios and is positive after a perturbation") {
  auto g = testing::rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_config(g, 3 + trial % 5);
    const auto graph = complete(x.size());
    // Weights equal to the realized distances give r = (1, ..., 1).
    auto edges = graph.edges;
    for (auto& e : edges) e.w = distance(kPlane, x.points[e.i], x.points[e.j]);
    const auto matched = make_graph(graph.n, edges);
    CHECK(relative_ratio_variance(matched, x) <= 1e-12);
    edges[0].w *= 1.1;
    CHECK(relative_ratio_variance(make_graph(graph.n, edges), x) > 0.0);
  }
}

TEST_CASE("v is scale invariant") {
  auto g = testing::rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_config(g, 4 + trial % 4, 2 + trial % 2);
    const auto graph = random_graph(g, x.size());
    const double v = relative_ratio_variance(graph, x);
    for (double alpha : {0.1, 2.0, 37.0, std::pow(10.0, uniform(g, -2, 2))}) {
      const double va = relative_ratio_variance(graph, scale_configuration(x, alpha));
      CHECK(std::abs(va - v) <= 1e-12 * std::max(1.0, v));
    }
  }
  const auto tri = make_configuration(kPlane, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(scale_configuration(tri, 1.0).points == tri.points);
  const auto sphere = make_configuration(ManifoldSpec::unit_sphere(), {{1, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_CODE(scale_configuration(sphere, 2.0), ErrorCode::UnsupportedManifold);
  CHECK_THROWS_CODE(scale_configuration(tri, 0.0), ErrorCode::InvalidInput);
}

TEST_CASE("v is continuous with a bounded local slope") {
  auto g = testing::rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_config(g, 5);
    if (collision_margin(x.points) < 0.1) continue;
    const auto graph = complete(5);
    const double v = relative_ratio_variance(graph, x);
    std::vector<double> dir(10);
    for (auto& c : dir) c = uniform(g, -1, 1);
    double prev_change = std::numeric_limits<double>::infinity();
    double max_slope = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      auto y = x;
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t c = 0; c < 2; ++c) y.points[i][c] += eps * dir[2 * i + c];
      }
      const double change = std::abs(relative_ratio_variance(graph, y) - v);
      CHECK(change <= prev_change * 1.01 + 1e-15);
      prev_change = change;
      max_slope = std::max(max_slope, change / eps);
    }
    CHECK(prev_change < 1e-4);
    // Margin >= 0.1 and coordinates in [-2, 2] keep the slope moderate.
    CHECK(max_slope < 1e3);
  }
}

TEST_CASE("v does not depend on the edge order") {
  auto g = testing::rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_config(g, 6);
    const auto graph = random_graph(g, 6);
    auto edges = graph.edges;
    std::shuffle(edges.begin(), edges.end(), g);
    const auto shuffled = make_graph(6, edges);
    CHECK(relative_ratio_variance(shuffled, x) == relative_ratio_variance(graph, x));
  }
}

TEST_CASE("embedding search reaches zero where an exact solution exists") {
  EmbedOptions opts;
  opts.restarts = 8;
  for (const auto& graph : {complete(3), cycle(4)}) {
    const auto r = minimize_ratio_variance(graph, kPlane, opts);
    CHECK(r.objective < 1e-8);
    CHECK(r.objective >= 0.0);
    CHECK(r.ratios.size() == graph.edge_count());
    CHECK(collision_margin(r.config.points) > kCollisionEps);
  }
  const auto sphere = minimize_ratio_variance(complete(3), ManifoldSpec::unit_sphere(), opts);
  CHECK(sphere.objective < 1e-8);
  for (const auto& p : sphere.config.points) CHECK(static_cast<bool>(validate_point(ManifoldSpec::unit_sphere(), p)));
  const auto shell = minimize_ratio_variance(cycle(4), ManifoldSpec::shell(1, 4), opts);
  CHECK(shell.objective < 1e-8);
  for (const auto& p : shell.config.points) CHECK(static_cast<bool>(validate_point(ManifoldSpec::shell(1, 4), p)));
}

TEST_CASE("K4 in the plane has a stable positive floor") {
  const double square = square_k4_value();
  CHECK(square == doctest::Approx(0.17662350913715627).epsilon(1e-12));
  std::vector<double> values;
  for (std::uint64_t seed : {1u, 7u, 42u, 1234u}) {
    EmbedOptions opts;
    opts.seed = seed;
    opts.restarts = 20;
    const auto r = minimize_ratio_variance(complete(4), kPlane, opts);
    CHECK(r.objective > 0.1);
    values.push_back(r.objective);
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  CHECK((*hi - *lo) / *lo <= 0.10);
  for (double v : values) CHECK(testing::rel_err(v, square) < 1e-6);
}

TEST_CASE("embedding search is deterministic and never worse than its starts") {
  EmbedOptions opts;
  opts.restarts = 6;
  opts.seed = 99;
  const auto graph = complete(5);
  const auto a = minimize_ratio_variance(graph, kPlane, opts);
  const auto b = minimize_ratio_variance(graph, kPlane, opts);
  CHECK(a.objective == b.objective);
  CHECK(a.config.points == b.config.points);
  CHECK(a.best_restart == b.best_restart);

  EmbedOptions starts = opts;
  starts.max_iters = 0;
  const auto initial = minimize_ratio_variance(graph, kPlane, starts);
  CHECK(initial.iterations == 0);
  CHECK(a.objective <= initial.objective);

  opts.annealing = true;
  const auto annealed = minimize_ratio_variance(graph, kPlane, opts);
  CHECK(annealed.objective <= initial.objective);
}

TEST_CASE("embedding search preconditions") {
  CHECK_THROWS_CODE(minimize_ratio_variance(complete(3), ManifoldSpec::spd(2)), ErrorCode::UnsupportedManifold);
}
