#include "sigman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sigman/configspace.hpp"
#include "sigman/energy.hpp"
#include "sigman/gaussian.hpp"
#include "sigman/graphembed.hpp"
#include "sigman/parallel.hpp"

namespace sigman {

namespace {

/// Independent stream for case i of a suite.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint32_t suite, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), suite,
                    static_cast<std::uint32_t>(i)};
  return std::mt19937_64(seq);
}

std::size_t count_true(const std::vector<char>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), char{1}));
}

PolylinePath random_euclidean_curve(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> steps(1, 40);
  const std::size_t k = steps(rng);
  const bool monotone = unit(rng) < 0.5;
  std::vector<double> sign(dim);
  for (auto& s : sign) s = unit(rng) < 0.5 ? -1.0 : 1.0;
  std::vector<AmbientPoint> samples(1, AmbientPoint(dim));
  for (auto& c : samples[0]) c = 2.0 * unit(rng) - 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    AmbientPoint next = samples.back();
    for (std::size_t c = 0; c < dim; ++c) {
      const double step = 1e-3 + 0.3 * unit(rng);
      next[c] += monotone ? sign[c] * step : (unit(rng) < 0.5 ? -step : step);
    }
    samples.push_back(std::move(next));
  }
  return make_polyline(ManifoldSpec::euclidean(dim), std::move(samples));
}

/// Random walk in the shell 1 < |v|^2 < 4 whose chords stay inside.
PolylinePath random_shell_curve(std::mt19937_64& rng) {
  const ManifoldSpec shell = ManifoldSpec::shell(1.0, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> steps(1, 40);
  const std::size_t k = steps(rng);
  auto direction = [&] {
    AmbientPoint v(3);
    double norm = 0.0;
    for (auto& c : v) {
      c = gauss(rng);
      norm += c * c;
    }
    for (auto& c : v) c /= std::sqrt(norm);
    return v;
  };
  AmbientPoint start = direction();
  const double r0 = 1.05 + 0.9 * unit(rng);
  for (auto& c : start) c *= r0;
  std::vector<AmbientPoint> samples{start};
  while (samples.size() <= k) {
    const AmbientPoint dir = direction();
    const double len = 0.01 + 0.3 * unit(rng);
    AmbientPoint next = samples.back();
    for (std::size_t c = 0; c < 3; ++c) next[c] += len * dir[c];
    if (validate_point(shell, next) && shell_chord_inside(shell, samples.back(), next)) samples.push_back(next);
  }
  return make_polyline(shell, std::move(samples));
}

struct RandomGraphCase {
  WeightedGraph graph;
  Configuration config;
};

/// Connected graph on 3..8 vertices (random spanning tree plus extra edges)
/// with a collision-free configuration in R^dim. Weights are drawn at random
/// unless `matched`, in which case each weight is a common multiple of the
/// edge's distance so that every ratio is equal.
RandomGraphCase random_graph_case(std::mt19937_64& rng, bool matched) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(3, 8);
  const std::size_t n = size(rng);
  const std::size_t dim = unit(rng) < 0.5 ? 2 : 3;
  std::vector<AmbientPoint> pts;
  do {
    pts.assign(n, AmbientPoint(dim));
    for (auto& p : pts) {
      for (auto& c : p) c = 2.0 * unit(rng) - 1.0;
    }
  } while (collision_margin(pts) < 1e-3);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    pairs.emplace_back(parent(rng), v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) < 0.3 && std::find(pairs.begin(), pairs.end(), std::pair{i, j}) == pairs.end()) {
        pairs.emplace_back(i, j);
      }
    }
  }
  const double c = 0.5 + 2.0 * unit(rng);
  std::vector<WeightedEdge> edges;
  for (const auto& [i, j] : pairs) {
    const double w = matched ? c * lp_distance(pts[i], pts[j], 2.0) : 0.1 + unit(rng);
    edges.push_back({i, j, w});
  }
  const auto m = ManifoldSpec::euclidean(dim);
  return {make_graph(n, std::move(edges)), make_configuration(m, std::move(pts))};
}

WeightedGraph cycle_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return make_graph(n, std::move(edges));
}

/// Regular n-gon of circumradius r in the xy-plane (padded to `dim`).
std::vector<AmbientPoint> regular_polygon(std::size_t n, double r, std::size_t dim) {
  std::vector<AmbientPoint> pts(n, AmbientPoint(dim, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i][0] = r * std::cos(t);
    pts[i][1] = r * std::sin(t);
  }
  return pts;
}

}  // namespace

SuiteResult verify_curve_bounds(const VerifyOptions& opts) {
  const std::size_t total = opts.curves;
  std::vector<char> ok(total, 0);
  std::vector<double> ratio1(total, 0.0), ratio2(total, 0.0);
  parallel_for(total, [&](std::size_t i) {
    auto rng = case_rng(opts.seed, 1, i);
    PolylinePath path = i % 3 == 0 ? random_euclidean_curve(2, rng)
                        : i % 3 == 1 ? random_euclidean_curve(3, rng)
                                     : random_shell_curve(rng);
    const auto report = curve_energy(make_signal_curve(std::move(path)));
    ok[i] = report.satisfied1 && report.satisfied2;
    ratio1[i] = report.e1 / report.bound1;
    ratio2[i] = report.e2 / report.bound2;
  });

  TriMesh sphere = triangulate_sphere(opts.sphere_subdivisions);
  sphere.sources = {*sphere.a};
  const std::size_t target = *sphere.b;
  const auto region = region_energy(make_signal_region(std::move(sphere), {target}));
  const bool region_ok = region.satisfied1 && region.satisfied2;

  SuiteResult r{"curve_bounds", total, count_true(ok), false, {}, {}};
  r.ok = r.passed == r.total && region_ok;
  r.counts = {{"sphere_subdivisions", static_cast<std::size_t>(opts.sphere_subdivisions)},
              {"sphere_ok", region_ok ? 1 : 0}};
  r.extremes = {{"max_e1_over_bound1", *std::max_element(ratio1.begin(), ratio1.end())},
                {"max_e2_over_bound2", *std::max_element(ratio2.begin(), ratio2.end())},
                {"sphere_e1", region.e1},
                {"sphere_bound1", region.bound1},
                {"sphere_e2", region.e2},
                {"sphere_bound2", region.bound2}};
  return r;
}

SuiteResult verify_gaussian_lower_bound(const VerifyOptions& opts) {
  const std::size_t total = opts.gaussian_paths;
  std::vector<char> ok(total, 0), hypotheses(total, 0);
  std::vector<double> slack(total, 0.0);
  parallel_for(total, [&](std::size_t i) {
    auto rng = case_rng(opts.seed, 2, i);
    std::uniform_int_distribution<std::size_t> steps(1, 40);
    const std::size_t n = 1 + i % 2;
    const auto path = random_gaussian_path(n, rng(), steps(rng));
    const auto report = check_gaussian_lower_bound(path);
    hypotheses[i] = report.hypotheses_hold;
    ok[i] = report.hypotheses_hold && report.satisfied;
    slack[i] = report.e2 - report.lower_bound;
  });
  SuiteResult r{"gaussian_lower_bound", total, count_true(ok), false, {}, {}};
  r.ok = r.passed == r.total;
  r.counts = {{"hypotheses_hold", count_true(hypotheses)}};
  r.extremes = {{"min_e2_minus_bound", *std::min_element(slack.begin(), slack.end())}};
  return r;
}

SuiteResult verify_config_bounds(const VerifyOptions& opts) {
  const std::size_t total = opts.config_paths;
  const ManifoldSpec shell = ManifoldSpec::shell(1.0, 4.0);
  constexpr std::size_t kParticles[] = {2, 3, 5};
  std::vector<char> ok(total, 0), upper(total, 0), components(total, 0), monotone(total, 0), hyp(total, 0),
      lower(total, 0);
  parallel_for(total, [&](std::size_t i) {
    auto rng = case_rng(opts.seed, 3, i);
    std::uniform_int_distribution<std::size_t> steps(1, 20);
    monotone[i] = i % 4 == 0;
    const auto path = random_config_path(shell, kParticles[i % 3], rng(), steps(rng), monotone[i]);
    const auto report = check_config_bounds(path, true);
    upper[i] = report.upper_ok;
    components[i] = report.components_ok;
    hyp[i] = report.hypotheses_iii;
    lower[i] = report.hypotheses_iii && report.lower_ok;
    ok[i] = report.all_ok();
  });
  SuiteResult r{"config_bounds", total, count_true(ok), false, {}, {}};
  r.ok = r.passed == r.total;
  r.counts = {{"upper_ok", count_true(upper)},
              {"components_ok", count_true(components)},
              {"monotone_paths", count_true(monotone)},
              {"lower_hypotheses_hold", count_true(hyp)},
              {"lower_ok", count_true(lower)}};
  return r;
}

SuiteResult verify_equal_ratio(const VerifyOptions& opts) {
  constexpr std::size_t kRandom = 200;
  constexpr std::size_t kPolygons = 10;  // cycles C_3 .. C_12
  const std::size_t cases = kRandom + 2 * kPolygons;
  std::vector<char> zero_ok(cases, 0), perturbed_ok(cases, 0);
  std::vector<double> max_zero(cases, 0.0);
  parallel_for(cases, [&](std::size_t i) {
    auto rng = case_rng(opts.seed, 4, i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    WeightedGraph g;
    Configuration x{ManifoldSpec::euclidean(2), {}};
    if (i < kRandom) {
      auto c = random_graph_case(rng, true);
      g = std::move(c.graph);
      x = std::move(c.config);
    } else {
      const std::size_t k = i - kRandom;
      const std::size_t n = 3 + k % kPolygons;
      g = cycle_graph(n);
      if (k < kPolygons) {
        x = make_configuration(ManifoldSpec::euclidean(2), regular_polygon(n, 0.5 + unit(rng), 2));
      } else {
        x = make_configuration(ManifoldSpec::unit_sphere(), regular_polygon(n, 1.0, 3));
      }
    }
    const double v0 = relative_ratio_variance(g, x);
    max_zero[i] = v0;
    zero_ok[i] = v0 <= 1e-12;
    std::uniform_int_distribution<std::size_t> pick(0, g.edges.size() - 1);
    g.edges[pick(rng)].w *= 1.0 + (0.01 + 0.5 * unit(rng));
    perturbed_ok[i] = relative_ratio_variance(g, x) > 0.0;
  });
  SuiteResult r{"equal_ratio", 2 * cases, count_true(zero_ok) + count_true(perturbed_ok), false, {}, {}};
  r.ok = r.passed == r.total;
  r.counts = {{"perturbed_positive", count_true(perturbed_ok)}};
  r.extremes = {{"max_v_equal_ratio", *std::max_element(max_zero.begin(), max_zero.end())}};
  return r;
}

SuiteResult verify_scale_invariance(const VerifyOptions& opts) {
  const std::size_t total = opts.scale_configs;
  std::vector<char> ok(total, 0);
  std::vector<double> dev(total, 0.0);
  parallel_for(total, [&](std::size_t i) {
    auto rng = case_rng(opts.seed, 5, i);
    std::uniform_real_distribution<double> exponent(-2.0, 2.0);
    const auto c = random_graph_case(rng, false);
    const double alpha = std::pow(10.0, exponent(rng));
    const double v = relative_ratio_variance(c.graph, c.config);
    const double va = relative_ratio_variance(c.graph, scale_configuration(c.config, alpha));
    dev[i] = std::abs(va - v) / std::max(1.0, v);
    ok[i] = dev[i] <= 1e-12;
  });
  SuiteResult r{"scale_invariance", total, count_true(ok), false, {}, {}};
  r.ok = r.passed == r.total;
  r.extremes = {{"max_relative_deviation", *std::max_element(dev.begin(), dev.end())}};
  return r;
}

std::vector<SuiteResult> verify_all(const VerifyOptions& opts) {
  return {verify_curve_bounds(opts), verify_gaussian_lower_bound(opts), verify_config_bounds(opts),
          verify_equal_ratio(opts), verify_scale_invariance(opts)};
}

}  // namespace sigman
