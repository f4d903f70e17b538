#ifndef NNLIF_GRID_HPP
#define NNLIF_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "params.hpp"

namespace nnlif {

/// Uniform voltage mesh v_0 = v_min < ... < v_{n_v} = V_F with V_R on node i_VR.
///
/// Node positions are generated from whichever of V_R, V_F is on the same
/// side, so both potentials are represented exactly.
struct Grid {
  double v_min = 0.0;
  double dv = 0.0;
  std::size_t n_v = 0;
  std::size_t i_vr = 0;
  double v_reset = 0.0;
  double v_fire = 0.0;

  std::size_t size() const noexcept { return n_v + 1; }

  double node(std::size_t i) const noexcept {
    if (i <= i_vr) return v_reset - static_cast<double>(i_vr - i) * dv;
    return v_fire - static_cast<double>(n_v - i) * dv;
  }

  /// Ghost-node position; i may lie outside [0, n_v].
  double node_ext(std::ptrdiff_t i) const noexcept {
    return v_reset + static_cast<double>(i - static_cast<std::ptrdiff_t>(i_vr)) * dv;
  }

  std::vector<double> nodes() const {
    std::vector<double> v(size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = node(i);
    return v;
  }
};

/// Builds a grid whose spacing is the closest one to `dv` that puts both
/// V_R and V_F on nodes. v_min is moved down (never up) to the nearest node.
inline Grid make_grid(const ModelParams& params, double v_min, double dv) {
  params.validate();
  if (!(v_min < params.v_reset)) throw DomainError("v_min must lie below the reset potential");
  if (!(dv > 0.0)) throw DomainError("dv must be positive");
  const double gap = params.v_fire - params.v_reset;
  const double cells = std::max(1.0, std::round(gap / dv));
  Grid g;
  g.dv = gap / cells;
  g.v_reset = params.v_reset;
  g.v_fire = params.v_fire;
  const double left = (params.v_reset - v_min) / g.dv;
  // Absorb floating noise before rounding up.
  const double nearest = std::round(left);
  const double idx = std::abs(left - nearest) < 1e-9 * std::max(1.0, left) ? nearest : std::ceil(left);
  g.i_vr = static_cast<std::size_t>(idx);
  if (g.i_vr == 0) g.i_vr = 1;
  g.n_v = g.i_vr + static_cast<std::size_t>(cells);
  g.v_min = g.node(0);
  return g;
}

/// Default left end of the mesh: the drift -v + bN pushes mass left when b is
/// strongly negative.
inline double default_v_min(const ModelParams& params) {
  if (params.b >= 0.0) return -6.0;
  if (params.b < -5.0) return -10.0;
  return -8.0;
}

inline double trapezoid_mass(const Grid& grid, std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * grid.dv;
}

/// Gridded voltage density p(v) on [v_min, V_F].
struct DensityProfile {
  Grid grid;
  std::vector<double> values;
  double mass = 0.0;

  DensityProfile() = default;
  DensityProfile(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    mass = trapezoid_mass(grid, values);
  }

  double min_value() const { return *std::min_element(values.begin(), values.end()); }
  double max_value() const { return *std::max_element(values.begin(), values.end()); }

  /// Zeroes both boundary nodes and rescales to unit trapezoid mass.
  void normalize() {
    values.front() = 0.0;
    values.back() = 0.0;
    const double m = trapezoid_mass(grid, values);
    if (!(m > 0.0)) throw DomainError("cannot normalize a profile with non-positive mass");
    for (double& x : values) x /= m;
    mass = trapezoid_mass(grid, values);
  }
};

inline double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("profiles live on different grids");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double sup_distance(const DensityProfile& a, const DensityProfile& b) {
  return sup_distance(a.values, b.values);
}

}  // namespace nnlif

#endif  // NNLIF_GRID_HPP
