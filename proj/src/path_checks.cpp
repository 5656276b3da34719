#include "sigman/path_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sigman/error.hpp"

namespace sigman {

std::vector<bool> coordinatewise_monotone(std::span<const AmbientPoint> samples, double eps) {
  if (samples.empty()) return {};
  const std::size_t dim = samples.front().size();
  std::vector<bool> out(dim, true);
  for (std::size_t c = 0; c < dim; ++c) {
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const double d = samples[i][c] - samples[i - 1][c];
      if (d < -eps) up = false;
      if (d > eps) down = false;
    }
    out[c] = up || down;
  }
  return out;
}

HullCheck hull_samples_pass(std::span<const AmbientPoint> samples,
                            const std::function<bool(std::span<const double>)>& accept,
                            std::size_t random_count, std::uint64_t seed) {
  HullCheck result;
  if (samples.empty()) return result;
  const std::size_t dim = samples.front().size();
  AmbientPoint point(dim);
  auto test = [&] {
    ++result.tested;
    if (!accept(point)) {
      ++result.failed;
      result.ok = false;
    }
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      for (std::size_t c = 0; c < dim; ++c) point[c] = 0.5 * (samples[i][c] + samples[j][c]);
      test();
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::exponential_distribution<double> weight(1.0);
  const std::size_t max_terms = std::min<std::size_t>(4, samples.size());
  std::uniform_int_distribution<std::size_t> terms(std::min<std::size_t>(2, max_terms), max_terms);
  for (std::size_t r = 0; r < random_count; ++r) {
    const std::size_t k = terms(rng);
    std::fill(point.begin(), point.end(), 0.0);
    double total = 0.0;
    std::vector<std::pair<std::size_t, double>> combo;
    for (std::size_t t = 0; t < k; ++t) {
      combo.emplace_back(pick(rng), weight(rng));
      total += combo.back().second;
    }
    for (const auto& [idx, w] : combo) {
      for (std::size_t c = 0; c < dim; ++c) point[c] += (w / total) * samples[idx][c];
    }
    test();
  }
  return result;
}

double cubic_lower_bound(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "endpoint dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::abs(q[i] - p[i]);
    s += d * d * d;
  }
  return s / 3.0;
}

}  // namespace sigman
