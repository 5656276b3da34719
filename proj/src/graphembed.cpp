#include "sigman/graphembed.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "sigman/error.hpp"
#include "sigman/parallel.hpp"

namespace sigman {

WeightedGraph make_graph(std::size_t n, std::vector<WeightedEdge> edges) {
  if (n < 2) throw Error(ErrorCode::InvalidGraph, "graph needs at least 2 vertices");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto& e = edges[k];
    if (e.i >= n || e.j >= n) throw Error(ErrorCode::InvalidGraph, "edge " + std::to_string(k) + " endpoint out of range");
    if (e.i == e.j) throw Error(ErrorCode::InvalidGraph, "edge " + std::to_string(k) + " is a loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidGraph, "edge " + std::to_string(k) + " weight must be positive");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!seen.emplace(e.i, e.j).second) {
      throw Error(ErrorCode::InvalidGraph, "edge " + std::to_string(k) + " duplicates an earlier edge");
    }
  }
  WeightedGraph g{n, std::move(edges)};
  const auto d = graph_metric(g, true);
  for (std::size_t v = 0; v < n; ++v) {
    if (std::isinf(d[0][v])) throw Error(ErrorCode::DisconnectedGraph, "vertex " + std::to_string(v) + " is unreachable");
  }
  return g;
}

DistanceTable graph_metric(const WeightedGraph& g, bool unit_weights) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(g.n);
  for (const auto& e : g.edges) {
    const double w = unit_weights ? 1.0 : e.w;
    adj[e.i].emplace_back(e.j, w);
    adj[e.j].emplace_back(e.i, w);
  }
  DistanceTable table(g.n, std::vector<double>(g.n, inf));
  for (std::size_t s = 0; s < g.n; ++s) {
    auto& dist = table[s];
    dist[s] = 0.0;
    if (unit_weights) {
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& [v, w] : adj[u]) {
          if (std::isinf(dist[v])) {
            dist[v] = dist[u] + 1.0;
            queue.push_back(v);
          }
        }
      }
    } else {
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.emplace(0.0, s);
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : adj[u]) {
          if (d + w < dist[v]) {
            dist[v] = d + w;
            heap.emplace(dist[v], v);
          }
        }
      }
    }
  }
  // Weighted sums accumulate in opposite orders from the two ends.
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) table[i][j] = table[j][i] = std::min(table[i][j], table[j][i]);
  }
  return table;
}

namespace {

void check_images(const WeightedGraph& g, std::span<const AmbientPoint> images, const ManifoldSpec& m) {
  if (images.size() != g.n) throw Error(ErrorCode::DimensionMismatch, "one image point per vertex is required");
  for (std::size_t v = 0; v < images.size(); ++v) {
    auto verdict = validate_point(m, images[v]);
    if (!verdict) {
      throw Error(ErrorCode::InvalidPathPoint, "image of vertex " + std::to_string(v) + ": " + verdict.violated);
    }
  }
}

}  // namespace

bool is_isometric_embedding(const WeightedGraph& g, std::span<const AmbientPoint> images, const ManifoldSpec& m,
                            double tol) {
  check_images(g, images, m);
  const auto d = graph_metric(g, true);
  for (std::size_t x = 0; x < g.n; ++x) {
    for (std::size_t y = x + 1; y < g.n; ++y) {
      if (std::abs(distance(m, images[x], images[y], 2.0) - d[x][y]) > tol) return false;
    }
  }
  return true;
}

bool is_quasi_isometric_embedding(const WeightedGraph& g, std::span<const AmbientPoint> images,
                                  const ManifoldSpec& m, double tol) {
  check_images(g, images, m);
  return std::all_of(g.edges.begin(), g.edges.end(), [&](const WeightedEdge& e) {
    return std::abs(distance(m, images[e.i], images[e.j], 2.0) - 1.0) <= tol;
  });
}

std::vector<double> ratio_vector(const WeightedGraph& g, const Configuration& x) {
  if (x.size() != g.n) throw Error(ErrorCode::DimensionMismatch, "configuration size differs from vertex count");
  std::vector<double> r;
  r.reserve(g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    const double d = distance(x.manifold, x.points[e.i], x.points[e.j], 2.0);
    if (!(d > 0.0)) throw Error(ErrorCode::Collision, "edge " + std::to_string(k) + " has coincident endpoints");
    r.push_back(d / e.w);
  }
  return r;
}

double ratio_variance(std::span<const double> r) {
  if (r.empty()) throw Error(ErrorCode::EmptyList, "ratio vector is empty");
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!(r[k] > 0.0)) throw Error(ErrorCode::NonpositiveEntry, "ratio " + std::to_string(k) + " is not positive");
  }
  // Summing in sorted order makes v bitwise invariant under edge permutations.
  std::vector<double> sorted(r.begin(), r.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  const double m = static_cast<double>(r.size());
  const double mean = sum / m;
  double num = 0.0;
  for (double v : sorted) num += (v - mean) * (v - mean);
  return num / (sum * sum / (m * m));
}

double relative_ratio_variance(const WeightedGraph& g, const Configuration& x) {
  return ratio_variance(ratio_vector(g, x));
}

Configuration scale_configuration(const Configuration& x, double alpha) {
  if (x.manifold.kind() != ManifoldKind::Euclidean) {
    throw Error(ErrorCode::UnsupportedManifold, "dilations exist only on Euclidean manifolds");
  }
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidInput, "scale factor must be positive");
  Configuration out = x;
  for (auto& p : out.points) {
    for (auto& c : p) c *= alpha;
  }
  return out;
}

namespace {

/// Search state: the n points of a configuration, flattened.
class Search {
 public:
  Search(const WeightedGraph& g, const ManifoldSpec& m) : g_(g), m_(m), d_(m.chart_dim()) {
    mean_weight_ = 0.0;
    for (const auto& e : g.edges) mean_weight_ += e.w;
    mean_weight_ /= static_cast<double>(std::max<std::size_t>(1, g.edges.size()));
    if (m.kind() == ManifoldKind::SphericalShell) {
      r_lo_ = std::sqrt(m.a()) * (1.0 + 1e-6);
      r_hi_ = std::sqrt(m.b()) * (1.0 - 1e-6);
    }
  }

  std::size_t dim() const { return g_.n * d_; }

  std::span<const double> point(const std::vector<double>& x, std::size_t v) const {
    return std::span<const double>(x).subspan(v * d_, d_);
  }

  /// v(r(x)); +inf when an edge distance is undefined or zero.
  double plain(const std::vector<double>& x) const {
    ratios_.resize(g_.edges.size());
    for (std::size_t k = 0; k < g_.edges.size(); ++k) {
      const auto& e = g_.edges[k];
      double dist;
      try {
        dist = distance(m_, point(x, e.i), point(x, e.j), 2.0);
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
      if (!(dist > 0.0)) return std::numeric_limits<double>::infinity();
      ratios_[k] = dist / e.w;
    }
    return ratio_variance(ratios_);
  }

  double barrier(const std::vector<double>& x) const {
    double b = 0.0;
    for (std::size_t i = 0; i < g_.n; ++i) {
      for (std::size_t j = i + 1; j < g_.n; ++j) {
        double d2 = 0.0;
        for (std::size_t c = 0; c < d_; ++c) {
          const double t = x[i * d_ + c] - x[j * d_ + c];
          d2 += t * t;
        }
        if (!(d2 > kCollisionEps * kCollisionEps)) return std::numeric_limits<double>::infinity();
        b += 1.0 / d2;
      }
    }
    return kBarrierWeight * b;
  }

  double total(const std::vector<double>& x) const { return plain(x) + barrier(x); }

  void project(std::vector<double>& x) const {
    if (m_.kind() == ManifoldKind::Euclidean) return;
    for (std::size_t v = 0; v < g_.n; ++v) {
      double r = 0.0;
      for (std::size_t c = 0; c < d_; ++c) r += x[v * d_ + c] * x[v * d_ + c];
      r = std::sqrt(r);
      if (r == 0.0) continue;
      const double target = m_.kind() == ManifoldKind::UnitSphere ? 1.0 : std::clamp(r, r_lo_, r_hi_);
      for (std::size_t c = 0; c < d_; ++c) x[v * d_ + c] *= target / r;
    }
  }

  /// Typical length of the current configuration, used to scale steps.
  double scale(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& e : g_.edges) s += lp_distance(point(x, e.i), point(x, e.j), 2.0);
    s /= static_cast<double>(std::max<std::size_t>(1, g_.edges.size()));
    return s > 0.0 ? s : 1.0;
  }

  std::vector<double> initial(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double radius = mean_weight_ * std::pow(static_cast<double>(g_.n), 1.0 / static_cast<double>(d_));
    constexpr int kMaxTries = 1000;
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
      std::vector<double> x(dim());
      for (std::size_t v = 0; v < g_.n; ++v) {
        double norm = 0.0;
        for (std::size_t c = 0; c < d_; ++c) {
          x[v * d_ + c] = gauss(rng);
          norm += x[v * d_ + c] * x[v * d_ + c];
        }
        norm = std::sqrt(norm);
        double r = 1.0;
        if (m_.kind() == ManifoldKind::Euclidean) {
          r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(d_));
        } else if (m_.kind() == ManifoldKind::SphericalShell) {
          r = r_lo_ + (r_hi_ - r_lo_) * unit(rng);
        }
        for (std::size_t c = 0; c < d_; ++c) x[v * d_ + c] *= r / norm;
      }
      if (std::isfinite(total(x)) && margin(x) >= 10.0 * kCollisionEps) return x;
    }
    throw Error(ErrorCode::InfeasibleStart, "no feasible starting configuration after 1000 draws");
  }

  double margin(const std::vector<double>& x) const {
    std::vector<AmbientPoint> pts(g_.n);
    for (std::size_t v = 0; v < g_.n; ++v) pts[v].assign(point(x, v).begin(), point(x, v).end());
    return collision_margin(pts);
  }

  std::vector<double> gradient(const std::vector<double>& x, double fx) const {
    const double h = 1e-6 * scale(x);
    std::vector<double> grad(x.size(), 0.0);
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + h;
      const double fp = total(probe);
      probe[i] = x[i] - h;
      const double fm = total(probe);
      probe[i] = x[i];
      if (std::isfinite(fp) && std::isfinite(fm)) {
        grad[i] = (fp - fm) / (2.0 * h);
      } else if (std::isfinite(fp)) {
        grad[i] = (fp - fx) / h;
      } else if (std::isfinite(fm)) {
        grad[i] = (fx - fm) / h;
      }
    }
    return grad;
  }

  struct Best {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();

    void offer(const std::vector<double>& candidate, double v) {
      if (v < value) {
        value = v;
        x = candidate;
      }
    }
  };

  /// Projected gradient descent with Armijo backtracking. Returns iterations.
  std::size_t descend(std::vector<double>& x, Best& best, const EmbedOptions& opts) const {
    double fx = total(x);
    const double s = scale(x);
    double t = opts.step_init * s * s;
    std::size_t it = 0;
    for (; it < opts.max_iters; ++it) {
      if (best.value <= opts.tol_obj) break;
      const auto grad = gradient(x, fx);
      double gn2 = 0.0;
      for (double gi : grad) gn2 += gi * gi;
      if (!(gn2 > 0.0) || !std::isfinite(gn2)) break;
      bool accepted = false;
      std::vector<double> y(x.size());
      double fy = fx;
      while (t > 1e-30 * s * s) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - t * grad[i];
        project(y);
        fy = total(y);
        double moved = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) moved += (y[i] - x[i]) * (y[i] - x[i]);
        if (std::isfinite(fy) && fy <= fx - 1e-4 * moved / t && moved > 0.0) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      x.swap(y);
      fx = fy;
      best.offer(x, plain(x));
      t *= 2.0;
    }
    return it;
  }

  void anneal(std::vector<double>& x, Best& best, std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, g_.n - 1);
    double fx = total(x);
    const double s = scale(x);
    const double t0 = std::max(fx, 1e-3);
    double temperature = t0;
    constexpr int kSteps = 4000;
    for (int step = 0; step < kSteps; ++step) {
      std::vector<double> y = x;
      const std::size_t v = pick(rng);
      const double sigma = 0.1 * s * std::sqrt(temperature / t0);
      for (std::size_t c = 0; c < d_; ++c) y[v * d_ + c] += sigma * gauss(rng);
      project(y);
      const double fy = total(y);
      if (std::isfinite(fy) && (fy < fx || unit(rng) < std::exp((fx - fy) / temperature))) {
        x.swap(y);
        fx = fy;
        best.offer(x, plain(x));
      }
      temperature *= 0.998;
    }
  }

  std::vector<double> last_ratios(const std::vector<double>& x) const {
    plain(x);
    return ratios_;
  }

 private:
  const WeightedGraph& g_;
  const ManifoldSpec& m_;
  std::size_t d_;
  double mean_weight_ = 1.0;
  double r_lo_ = 0.0;
  double r_hi_ = 0.0;
  mutable std::vector<double> ratios_;
};

struct RestartOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

}  // namespace

EmbedResult minimize_ratio_variance(const WeightedGraph& g, const ManifoldSpec& m, const EmbedOptions& opts) {
  const auto kind = m.kind();
  if (kind != ManifoldKind::Euclidean && kind != ManifoldKind::UnitSphere && kind != ManifoldKind::SphericalShell) {
    throw Error(ErrorCode::UnsupportedManifold, "embedding search supports euclidean, unit_sphere and shell");
  }
  if (g.edges.empty()) throw Error(ErrorCode::InvalidGraph, "graph has no edges");
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, [&](std::size_t r) {
    Search search(g, m);
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed & 0xffffffffu), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::vector<double> x = search.initial(rng);
    Search::Best best;
    best.offer(x, search.plain(x));
    std::size_t iterations = search.descend(x, best, opts);
    if (opts.annealing && best.value > opts.tol_obj) {
      x = best.x;
      search.anneal(x, best, rng);
      x = best.x;
      iterations += search.descend(x, best, opts);
    }
    if (!std::isfinite(best.value)) throw Error(ErrorCode::NonFiniteObjective, "objective is not finite");
    outcomes[r] = RestartOutcome{best.x, best.value, iterations};
  });

  std::size_t winner = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (outcomes[r].value < outcomes[winner].value) winner = r;
  }
  const auto& best = outcomes[winner];
  Search search(g, m);
  std::vector<AmbientPoint> points(g.n);
  for (std::size_t v = 0; v < g.n; ++v) points[v].assign(search.point(best.x, v).begin(), search.point(best.x, v).end());

  EmbedResult result{Configuration{m, std::move(points)}, best.value, {}, best.iterations, restarts, winner, opts.seed};
  result.ratios = ratio_vector(g, result.config);
  result.objective = ratio_variance(result.ratios);
  return result;
}

}  // namespace sigman
