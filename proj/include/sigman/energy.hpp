#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigman/mesh.hpp"

namespace sigman {

/// A 1-dimensional signal: the curve gamma([0, 1]) with A = gamma(0) and
/// B = gamma(1).
struct SignalCurve {
  PolylinePath path;
};

/// Rejects curves whose endpoints coincide.
SignalCurve make_signal_curve(PolylinePath path);

/// A 2-dimensional signal on a triangle mesh. `mesh.sources` plays A; the
/// optional target set plays B and must be disjoint from A.
struct SignalRegion {
  TriMesh mesh;
  std::vector<std::size_t> targets;
};

SignalRegion make_signal_region(TriMesh mesh, std::vector<std::size_t> targets = {});

/// The rectangle [-1, 1] x [0, 1] gridded at `step`, with A the top edge
/// y = 1. Its continuum energies are E1 = 1 and E2 = 2/3.
SignalRegion top_edge_rectangle(double step);

/// Relative slack used for the satisfied1/satisfied2 verdicts. The discrete
/// bounds hold exactly in real arithmetic; the slack only absorbs rounding.
inline constexpr double kBoundRelTol = 1e-9;

struct EnergyReport {
  double e1 = 0.0;
  double e2 = 0.0;
  double bound1 = 0.0;
  double bound2 = 0.0;
  bool satisfied1 = true;
  bool satisfied2 = true;
  std::size_t samples = 0;  // curve samples, or mesh vertices for regions
  std::size_t faces = 0;
};

struct ArcEnergies {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Integrals of s and s^2 against ds along consecutive segments, where the
/// arc length s starts at `offset`. Each segment is integrated exactly, so
/// the result is the energy of the polyline itself:
///   e1 += s_mid * ds,  e2 += (s_mid^2 + ds^2 / 12) * ds.
ArcEnergies arc_energies(std::span<const double> segment_lengths, double offset = 0.0);

/// E1 = int rho(A, tau) ds, E2 = int rho(A, tau)^2 ds, with rho the
/// cumulative arc length. Bounds are rho(p, q)^2 and rho(p, q)^3 where
/// rho(p, q) is the curve's length.
EnergyReport curve_energy(const SignalCurve& signal);

/// Face-mean rule: each face contributes area * (mean vertex distance to A)^k.
/// Bounds are diam * area and diam^2 * area of the same mesh.
EnergyReport region_energy(const SignalRegion& signal);

/// Samples of a function on the uniform grid x0 = t_0 < ... < t_{N-1} = x1.
struct FunctionTable {
  double x0 = 0.0;
  double x1 = 1.0;
  std::vector<double> values;

  double step() const { return (x1 - x0) / static_cast<double>(values.size() - 1); }
  double x(std::size_t i) const { return x0 + step() * static_cast<double>(i); }
};

/// Samples f on `count` uniform points of [x0, x1].
template <class F>
FunctionTable tabulate(F&& f, double x0, double x1, std::size_t count) {
  FunctionTable t{x0, x1, std::vector<double>(count)};
  for (std::size_t i = 0; i < count; ++i) t.values[i] = f(t.x(i));
  return t;
}

/// 1/2 int (1 + f'^2) dx; f' by central differences (second-order one-sided
/// at the ends), trapezoid rule.
double riemannian_energy(const FunctionTable& f);

/// int f^2 dx by the trapezoid rule.
double sp_energy(const FunctionTable& f);

/// F(x) = int_0^x f by the cumulative trapezoid rule. The grid must start at 0.
FunctionTable antiderivative_transform(const FunctionTable& f);

/// Cumulative variation V(x_i) = sum_{k < i} |f_{k+1} - f_k|, i.e. int_0^x |f'|
/// of the piecewise-linear interpolant.
FunctionTable cumulative_variation(const FunctionTable& f);

/// L(x) = sqrt(int_0^x |f'(t)| dt). Note int |f'| is the total variation of
/// f, not the arc length of its graph (that would be int sqrt(1 + f'^2)).
FunctionTable sqrt_arclength_transform(const FunctionTable& f);

/// Polyline of the graph {(x, f(x))} in R^2.
PolylinePath graph_polyline(const FunctionTable& f);

struct WordEnergy {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Total energies of a product of letters: the sums of the letter energies.
WordEnergy word_energy(std::span<const EnergyReport> letters);

}  // namespace sigman
