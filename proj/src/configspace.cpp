#include "sigman/configspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sigman/error.hpp"

namespace sigman {

AmbientPoint Configuration::flatten() const {
  AmbientPoint out;
  for (const auto& p : points) out.insert(out.end(), p.begin(), p.end());
  return out;
}

double collision_margin(std::span<const AmbientPoint> points) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      margin = std::min(margin, lp_distance(points[i], points[j], 2.0));
    }
  }
  return margin;
}

Configuration make_configuration(ManifoldSpec m, std::vector<AmbientPoint> points) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidInput, "a configuration needs at least 2 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto verdict = validate_point(m, points[i]);
    if (!verdict) {
      throw Error(ErrorCode::InvalidPathPoint, "point " + std::to_string(i) + ": " + verdict.violated);
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double gap = lp_distance(points[i], points[j], 2.0);
      if (!(gap > kCollisionEps)) {
        std::ostringstream os;
        os << "points " << i << " and " << j << " are " << gap << " apart";
        throw Error(ErrorCode::Collision, os.str());
      }
    }
  }
  return Configuration{std::move(m), std::move(points)};
}

ConfigPath make_config_path(std::vector<Configuration> configs, std::vector<double> params) {
  if (configs.size() < 2) throw Error(ErrorCode::TooFewSamples, "a path needs at least 2 configurations");
  for (const auto& c : configs) {
    if (!(c.manifold == configs.front().manifold) || c.size() != configs.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "configurations differ in manifold or particle count");
    }
  }
  if (configs.front().points == configs.back().points) {
    throw Error(ErrorCode::DegeneratePath, "path endpoints A and B coincide");
  }
  const std::size_t k = configs.size() - 1;
  if (params.empty()) {
    params.resize(configs.size());
    for (std::size_t i = 0; i <= k; ++i) params[i] = static_cast<double>(i) / static_cast<double>(k);
  }
  if (params.size() != configs.size()) throw Error(ErrorCode::DimensionMismatch, "params length mismatch");
  if (params.front() != 0.0 || params.back() != 1.0) {
    throw Error(ErrorCode::InvalidInput, "params must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < params.size(); ++i) {
    if (!(params[i] > params[i - 1])) throw Error(ErrorCode::InvalidInput, "params must increase strictly");
  }
  return ConfigPath{std::move(configs), std::move(params)};
}

void check_chords(const ConfigPath& path) {
  const ManifoldSpec& m = path.manifold();
  const std::size_t n = path.particles();
  std::vector<AmbientPoint> probe(n);
  for (std::size_t k = 0; k + 1 < path.configs.size(); ++k) {
    const auto& from = path.configs[k].points;
    const auto& to = path.configs[k + 1].points;
    for (std::size_t s = 1; s <= kChordSamples; ++s) {
      const double t = static_cast<double>(s) / static_cast<double>(kChordSamples + 1);
      for (std::size_t j = 0; j < n; ++j) {
        probe[j].resize(from[j].size());
        for (std::size_t c = 0; c < from[j].size(); ++c) probe[j][c] = from[j][c] + t * (to[j][c] - from[j][c]);
        auto verdict = validate_point(m, probe[j]);
        if (!verdict) {
          throw Error(ErrorCode::MidChordCollision, "segment " + std::to_string(k) + ", particle " +
                                                        std::to_string(j) + " leaves M: " + verdict.violated);
        }
      }
    }
    // Relative motion of two particles is linear in t, so the closest
    // approach on [0, 1] has a closed form.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double r0r = 0.0, drr = 0.0;
        const std::size_t d = from[i].size();
        std::vector<double> r0(d), dr(d);
        for (std::size_t c = 0; c < d; ++c) {
          r0[c] = from[i][c] - from[j][c];
          dr[c] = (to[i][c] - to[j][c]) - r0[c];
          r0r += r0[c] * dr[c];
          drr += dr[c] * dr[c];
        }
        const double t = drr > 0.0 ? std::clamp(-r0r / drr, 0.0, 1.0) : 0.0;
        double gap2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) gap2 += (r0[c] + t * dr[c]) * (r0[c] + t * dr[c]);
        if (!(std::sqrt(gap2) > kCollisionEps)) {
          throw Error(ErrorCode::MidChordCollision, "particles " + std::to_string(i) + " and " + std::to_string(j) +
                                                        " collide inside segment " + std::to_string(k));
        }
      }
    }
  }
}

PolylinePath flatten(const ConfigPath& path) {
  std::vector<ManifoldSpec> factors(path.particles(), path.manifold());
  std::vector<AmbientPoint> samples;
  samples.reserve(path.configs.size());
  for (const auto& c : path.configs) samples.push_back(c.flatten());
  return make_polyline(product_manifold(std::move(factors)), std::move(samples), path.params);
}

EnergyReport config_path_energy(const ConfigPath& path) {
  check_chords(path);
  return curve_energy(make_signal_curve(flatten(path)));
}

ArcEnergies component_energies(const ConfigPath& path, std::size_t j) {
  if (j >= path.particles()) {
    throw Error(ErrorCode::IndexOutOfRange, "particle index " + std::to_string(j) + " out of range");
  }
  std::vector<double> seg;
  seg.reserve(path.configs.size() - 1);
  for (std::size_t k = 0; k + 1 < path.configs.size(); ++k) {
    seg.push_back(distance(path.manifold(), path.configs[k].points[j], path.configs[k + 1].points[j], 2.0));
  }
  return arc_energies(seg);
}

ConfigBoundReport check_config_bounds(const ConfigPath& path, bool check_lower) {
  ConfigBoundReport r;
  r.energy = config_path_energy(path);
  r.upper_ok = r.energy.satisfied1 && r.energy.satisfied2;
  r.components_ok = true;
  for (std::size_t j = 0; j < path.particles(); ++j) {
    const auto c = component_energies(path, j);
    const bool ok = r.energy.e1 >= c.e1 - kComponentTol && r.energy.e2 >= c.e2 - kComponentTol;
    r.components.push_back(c);
    r.component_ok.push_back(ok);
    r.components_ok = r.components_ok && ok;
  }
  if (check_lower) {
    std::vector<AmbientPoint> flat;
    flat.reserve(path.configs.size());
    for (const auto& c : path.configs) flat.push_back(c.flatten());
    const auto mono = coordinatewise_monotone(flat);
    r.all_monotone = std::all_of(mono.begin(), mono.end(), [](bool b) { return b; });
    const ManifoldSpec& m = path.manifold();
    const std::size_t n = path.particles();
    const std::size_t d = m.chart_dim();
    r.hull = hull_samples_pass(flat, [&](std::span<const double> x) {
      std::vector<AmbientPoint> pts(n);
      for (std::size_t j = 0; j < n; ++j) {
        pts[j].assign(x.begin() + static_cast<std::ptrdiff_t>(j * d),
                      x.begin() + static_cast<std::ptrdiff_t>((j + 1) * d));
        if (!validate_point(m, pts[j])) return false;
      }
      return collision_margin(pts) > kCollisionEps;
    });
    r.hypotheses_iii = r.all_monotone && r.hull.ok;
    r.lower_bound = cubic_lower_bound(flat.front(), flat.back());
    r.lower_ok = r.energy.e2 >= r.lower_bound - kLowerBoundTol;
  }
  return r;
}

ConfigPath random_config_path(const ManifoldSpec& m, std::size_t n, std::uint64_t seed, std::size_t steps,
                              bool monotone) {
  if (n < 2 || steps == 0) throw Error(ErrorCode::InvalidInput, "need n >= 2 particles and >= 1 step");
  const bool shell = m.kind() == ManifoldKind::SphericalShell;
  if (!shell && m.kind() != ManifoldKind::Euclidean) {
    throw Error(ErrorCode::UnsupportedManifold, "random paths support euclidean and shell manifolds");
  }
  const std::size_t d = m.chart_dim();
  const double outer = shell ? std::sqrt(m.b()) : 1.0;
  const double scale = shell ? std::sqrt(m.b()) - std::sqrt(m.a()) : 1.0;
  const double margin = 10.0 * kCollisionEps;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-outer, outer);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto sample_point = [&] {
    for (;;) {
      AmbientPoint p(d);
      for (auto& c : p) c = coord(rng);
      if (validate_point(m, p)) return p;
    }
  };

  constexpr std::size_t kMaxRejections = 100000;
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<std::vector<AmbientPoint>> frames(steps + 1, std::vector<AmbientPoint>(n, AmbientPoint(d)));
    for (std::size_t j = 0; j < n; ++j) frames[0][j] = sample_point();

    if (monotone) {
      for (std::size_t j = 0; j < n; ++j) {
        AmbientPoint target(d);
        for (std::size_t c = 0; c < d; ++c) target[c] = frames[0][j][c] + 0.4 * scale * (2.0 * unit(rng) - 1.0);
        for (std::size_t c = 0; c < d; ++c) {
          std::vector<double> f(steps + 1);
          f.front() = 0.0;
          f.back() = 1.0;
          for (std::size_t k = 1; k < steps; ++k) f[k] = unit(rng);
          std::sort(f.begin() + 1, f.end() - 1);
          for (std::size_t k = 0; k <= steps; ++k) {
            frames[k][j][c] = frames[0][j][c] + f[k] * (target[c] - frames[0][j][c]);
          }
          frames[steps][j][c] = target[c];
        }
      }
    } else {
      std::vector<bool> moving(n);
      for (std::size_t j = 0; j < n; ++j) moving[j] = unit(rng) > 0.2;
      moving[0] = true;
      for (std::size_t k = 1; k <= steps; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
          frames[k][j] = frames[k - 1][j];
          if (!moving[j]) continue;
          const double len = 0.15 * scale * unit(rng);
          AmbientPoint dir(d);
          double norm = 0.0;
          for (auto& c : dir) {
            c = gauss(rng);
            norm += c * c;
          }
          norm = std::sqrt(norm);
          for (std::size_t c = 0; c < d; ++c) frames[k][j][c] += len * dir[c] / norm;
        }
      }
    }

    bool ok = true;
    std::vector<Configuration> configs;
    configs.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps && ok; ++k) {
      for (const auto& p : frames[k]) ok = ok && validate_point(m, p).accepted;
      ok = ok && collision_margin(frames[k]) >= margin;
      if (k > 0 && ok) {
        ok = frames[k] != frames[k - 1];
        for (std::size_t j = 0; j < n && ok && shell; ++j) ok = shell_chord_inside(m, frames[k - 1][j], frames[k][j]);
      }
      if (ok) configs.push_back(Configuration{m, frames[k]});
    }
    if (!ok) continue;
    try {
      ConfigPath path = make_config_path(std::move(configs));
      check_chords(path);
      return path;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::SamplingExhausted, "no valid random path after 1e5 rejections");
}

}  // namespace sigman
