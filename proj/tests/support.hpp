#ifndef NNLIF_TESTS_SUPPORT_HPP
#define NNLIF_TESTS_SUPPORT_HPP

// Helpers shared by the unit tests and the acceptance runner.

#include <cmath>
#include <functional>
#include <vector>

#include "nnlif/nnlif.hpp"

namespace nnlif::test_support {

/// Sup-norm error after translating exp(-((v + 3) / 0.5)^2) with unit speed
/// for T = 2 using the WENO operator and TVD-RK3 with dt ~ dv^(5/3), so the
/// time error does not pollute the fifth-order spatial rate.
inline double advection_error(double dv) {
  ModelParams params;
  const Grid grid = make_grid(params, -6.0, dv);
  const std::size_t n = grid.size();
  auto exact = [](double v, double t) {
    const double z = (v - (-3.0 + t)) / 0.5;
    return std::exp(-z * z);
  };
  std::vector<double> u(n, 1.0), q(n), k(n), s1(n), s2(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = exact(grid.node(i), 0.0);
  const double T = 2.0;
  const int steps = static_cast<int>(std::ceil(T / (0.5 * std::pow(dv, 5.0 / 3.0))));
  const double dt = T / steps;
  pde::AdvectionWorkspace ws;
  for (int s = 0; s < steps; ++s) {
    ws.rhs(grid, q, u, k);
    for (std::size_t i = 0; i < n; ++i) s1[i] = q[i] + dt * k[i];
    ws.rhs(grid, s1, u, k);
    for (std::size_t i = 0; i < n; ++i) s2[i] = 0.75 * q[i] + 0.25 * (s1[i] + dt * k[i]);
    ws.rhs(grid, s2, u, k);
    for (std::size_t i = 0; i < n; ++i) q[i] = (q[i] + 2.0 * (s2[i] + dt * k[i])) / 3.0;
  }
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(q[i] - exact(grid.node(i), T)));
  return err;
}

/// Sup-norm error of the diffusion operator on sin(2v) (exact: -4 a sin(2v)).
inline double diffusion_error(double dv, double a = 1.0) {
  ModelParams params;
  const Grid grid = make_grid(params, -6.0, dv);
  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::sin(2.0 * grid.node(i));
  const auto r = pde::diffusion_rhs(grid, q, a);
  double err = 0.0;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) err = std::max(err, std::abs(r[i] + 4.0 * a * q[i]));
  return err;
}

/// Observed orders log2(e_i / e_{i+1}) for successively halved spacings.
inline std::vector<double> observed_orders(const std::function<double(double)>& error, std::vector<double> dvs) {
  std::vector<double> e, orders;
  for (double dv : dvs) e.push_back(error(dv));
  for (std::size_t i = 0; i + 1 < e.size(); ++i) orders.push_back(std::log(e[i] / e[i + 1]) / std::log(dvs[i] / dvs[i + 1]));
  return orders;
}

/// Synthetic record with N(t) = rate(t) sampled every dt on [0, t_end].
inline pde::SimRecord synthetic_record(const ModelParams& params, double t_end, double dt,
                                       const std::function<double(double)>& rate, const DensityProfile& final) {
  pde::SimRecord rec;
  rec.params = params;
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    rec.times.push_back(t);
    rec.rates.push_back(rate(t));
    rec.masses.push_back(1.0);
  }
  rec.final_profile = final;
  return rec;
}

}  // namespace nnlif::test_support

#endif  // NNLIF_TESTS_SUPPORT_HPP
