#ifndef NNLIF_SPECFUN_HPP
#define NNLIF_SPECFUN_HPP

// Special functions of the stationary problem: the mass integral I(N), its
// derivatives, the firing-rate map f = 1/I, stationary firing rates, the
// pseudo-equilibrium profiles and the inhibitory bifurcation value b*.
//
// All formulas are evaluated in the rescaled variable x = v / sqrt(a), which
// turns the problem with diffusion a into the a = 1 problem with
// b -> b / sqrt(a), V_R -> V_R / sqrt(a), V_F -> V_F / sqrt(a).

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "quadrature.hpp"

namespace nnlif {

class ScanExhausted : public Error {
 public:
  using Error::Error;
};

class BracketNotFound : public Error {
 public:
  using Error::Error;
};

struct StationaryRoot {
  double rate = 0.0;   // N* with N* I(N*) = 1
  double slope = 0.0;  // f'(N*) = -N*^2 I'(N*)
};

/// Solutions of N I(N) = 1 in increasing order.
struct StationarySet {
  std::vector<StationaryRoot> roots;
  std::size_t count() const noexcept { return roots.size(); }
};

namespace specfun {

inline constexpr double kRootTol = 1e-10;
inline constexpr double kScanMax = 50.0;
inline constexpr std::size_t kScanPoints = 240;
/// Integrand cut-off, in units of the Gaussian exponent below its peak.
inline constexpr double kTailExponent = 45.0;

namespace detail {

struct Scaled {
  double beta;  // b / sqrt(a)
  double x_reset;
  double x_fire;
  double inv_sqrt_a;
};

inline Scaled scale(const ModelParams& p) {
  p.validate();
  const double k = 1.0 / std::sqrt(p.a);
  return {p.b * k, p.v_reset * k, p.v_fire * k, k};
}

// (1 - e^{-s d}) / s, with the removable singularity at s = 0 handled by series.
inline double difference_quotient(double s, double d) {
  if (s < 1e-6) return d * (1.0 - 0.5 * s * d);
  return -std::expm1(-s * d) / s;
}

// Integration window [lo, hi] and log of the peak of e^{-s^2/2 + s s0} on s >= 0.
struct Window {
  double lo, hi, log_peak;
};

inline Window laplace_window(double s0, int extra) {
  const double tail = kTailExponent + extra;
  if (s0 > 0.0) {
    const double half = std::sqrt(2.0 * tail);
    return {std::max(0.0, s0 - half), s0 + half + extra, 0.5 * s0 * s0};
  }
  const double m = -s0;
  return {0.0, -m + std::sqrt(m * m + 2.0 * tail) + extra, 0.0};
}

// log of I(N) via the Laplace-transform representation.
inline double log_I(const Scaled& sc, double N) {
  const double s0 = sc.x_fire - sc.beta * N;
  const double gap = sc.x_fire - sc.x_reset;
  const Window w = laplace_window(s0, 0);
  auto integrand = [&](double s) {
    const double e = -0.5 * s * s + s * s0 - w.log_peak;
    return std::exp(e) * difference_quotient(s, gap);
  };
  double total = 0.0;
  if (s0 > w.lo && s0 < w.hi) {
    total += quad::integrate(integrand, w.lo, s0, quad::kDefaultRelTol, quad::kDefaultMaxDepth, "I(N)").value;
    total += quad::integrate(integrand, s0, w.hi, quad::kDefaultRelTol, quad::kDefaultMaxDepth, "I(N)").value;
  } else {
    total = quad::integrate(integrand, w.lo, w.hi, quad::kDefaultRelTol, quad::kDefaultMaxDepth, "I(N)").value;
  }
  return w.log_peak + std::log(total);
}

// e^{z^2} erfc(z) without overflow for large positive z.
inline double erfcx(double z) {
  if (z < 25.0) return std::exp(z * z) * std::erfc(z);
  const double iz2 = 1.0 / (2.0 * z * z);
  const double series = 1.0 - iz2 * (1.0 - 3.0 * iz2 * (1.0 - 5.0 * iz2 * (1.0 - 7.0 * iz2)));
  return series / (z * std::sqrt(std::numbers::pi));
}

// log of int_{lo}^{hi} e^{(y - g)^2 / 2} dy.
inline double log_gauss_growth(double lo, double hi, double g) {
  if (hi <= lo) return -std::numeric_limits<double>::infinity();
  const double m = 0.5 * std::max((lo - g) * (lo - g), (hi - g) * (hi - g));
  auto integrand = [&](double y) { return std::exp(0.5 * (y - g) * (y - g) - m); };
  return m + std::log(quad::integrate(integrand, lo, hi, 1e-12, quad::kDefaultMaxDepth, "profile").value);
}

}  // namespace detail

/// I(N) through the single-integral Laplace form.
inline double eval_I(const ModelParams& params, double N) {
  if (!(N >= 0.0)) throw DomainError("eval_I requires N >= 0");
  return std::exp(detail::log_I(detail::scale(params), N));
}

/// I(N) through the double-integral definition, with the inner Gaussian
/// integral taken in closed form after exchanging the order of integration:
/// I = int_{V_R}^{V_F} sqrt(pi/2) erfcx((bN - w)/sqrt 2) dw.
inline double eval_I_double_integral(const ModelParams& params, double N) {
  if (!(N >= 0.0)) throw DomainError("eval_I requires N >= 0");
  const auto sc = detail::scale(params);
  const double g = sc.beta * N;
  auto integrand = [&](double x) {
    return std::sqrt(std::numbers::pi / 2.0) * detail::erfcx((g - x) / std::numbers::sqrt2);
  };
  return quad::integrate(integrand, sc.x_reset, sc.x_fire, 1e-12, quad::kDefaultMaxDepth, "I(N) double form").value;
}

/// k-th derivative of I with respect to N.
inline double eval_I_deriv(const ModelParams& params, double N, int k) {
  if (!(N >= 0.0)) throw DomainError("eval_I_deriv requires N >= 0");
  if (k < 1) throw DomainError("derivative order must be >= 1");
  const auto sc = detail::scale(params);
  if (sc.beta == 0.0) return 0.0;
  const double s0 = sc.x_fire - sc.beta * N;
  const double gap = sc.x_fire - sc.x_reset;
  const auto w = detail::laplace_window(s0, k);
  auto integrand = [&](double s) {
    const double e = -0.5 * s * s + s * s0 - w.log_peak;
    return std::pow(s, k) * std::exp(e) * detail::difference_quotient(s, gap);
  };
  double total = quad::integrate(integrand, w.lo, w.hi, quad::kDefaultRelTol, quad::kDefaultMaxDepth, "I^(k)(N)").value;
  const double sign = (k % 2 == 1 && sc.beta > 0.0) ? -1.0 : 1.0;
  return sign * std::exp(w.log_peak + std::log(total) + k * std::log(std::abs(sc.beta)));
}

/// Firing-rate map f(N) = 1 / I(N).
inline double eval_f(const ModelParams& params, double N) {
  if (!(N >= 0.0)) throw DomainError("eval_f requires N >= 0");
  return std::exp(-detail::log_I(detail::scale(params), N));
}

/// f'(N) = -I'(N) / I(N)^2.
inline double eval_f_deriv(const ModelParams& params, double N) {
  const double f = eval_f(params, N);
  return -eval_I_deriv(params, N, 1) * f * f;
}

namespace detail {

inline double bisect_fixed_point(const ModelParams& params, double lo, double hi) {
  // h(N) = N - f(N) changes sign on [lo, hi].
  double h_lo = lo - eval_f(params, lo);
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    const double h_mid = mid - eval_f(params, mid);
    if (h_mid == 0.0) return mid;
    if ((h_mid < 0.0) == (h_lo < 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline StationaryRoot make_root(const ModelParams& params, double N) {
  return {N, -N * N * eval_I_deriv(params, N, 1)};
}

}  // namespace detail

/// All sign changes of N - f(N) on [0, N_scan_max], refined by bisection.
///
/// For b <= 0 the map f is non-increasing, so the unique root lies in
/// [0, f(0)] and the scan is restricted to that interval.
inline StationarySet solve_stationary(const ModelParams& params, double scan_max = kScanMax) {
  params.validate();
  StationarySet out;
  const double f0 = eval_f(params, 0.0);
  if (params.b == 0.0) {
    out.roots.push_back({f0, 0.0});
    return out;
  }
  const double cap = params.b < 0.0 ? f0 : scan_max;
  std::vector<double> pts{0.0};
  const double first = cap * 1e-7;
  const double ratio = std::pow(cap / first, 1.0 / static_cast<double>(kScanPoints - 1));
  double x = first;
  for (std::size_t i = 0; i < kScanPoints; ++i, x *= ratio) pts.push_back(i + 1 == kScanPoints ? cap : x);

  double prev_x = pts[0];
  double prev_h = prev_x - f0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double h = pts[i] - eval_f(params, pts[i]);
    if (h == 0.0) {
      out.roots.push_back(detail::make_root(params, pts[i]));
    } else if (prev_h != 0.0 && (h < 0.0) != (prev_h < 0.0)) {
      out.roots.push_back(detail::make_root(params, detail::bisect_fixed_point(params, prev_x, pts[i])));
    }
    prev_x = pts[i];
    prev_h = h;
  }
  if (out.roots.empty() && params.b > 0.0) {
    // With f increasing, f(cap) > cap and f'(cap) >= 1 rule out a crossing beyond the cap.
    if (!(prev_h < 0.0 && eval_f_deriv(params, cap) >= 1.0)) {
      throw ScanExhausted("no stationary rate found below the scan cap, but f(N) - N is still decreasing there");
    }
  }
  return out;
}

/// Analytic mass of the pseudo-equilibrium associated to N_prev that lies
/// left of v_min.
inline double pseudo_equilibrium_tail_mass(const ModelParams& params, double N_prev, double v_min) {
  const auto sc = detail::scale(params);
  const double g = sc.beta * N_prev;
  const double x_min = v_min * sc.inv_sqrt_a;
  const double log_k = detail::log_gauss_growth(sc.x_reset, sc.x_fire, g);
  const double log_tail = std::log(std::sqrt(std::numbers::pi / 2.0) * std::erfc((g - x_min) / std::numbers::sqrt2));
  return std::exp(-detail::log_I(sc, N_prev) + log_k + log_tail);
}

/// Pseudo-equilibrium associated to N_prev, i.e. the stationary state of the
/// equation with the delayed rate frozen at N_prev, sampled on `grid` and
/// renormalized to unit trapezoid mass.
///
/// Its firing rate is f(N_prev); when N_prev is a stationary rate this is
/// the stationary profile itself.
inline DensityProfile pseudo_equilibrium_profile(const ModelParams& params, double N_prev, const Grid& grid,
                                                 double max_tail_mass = 1e-6) {
  if (!(N_prev >= 0.0)) throw DomainError("pseudo-equilibrium requires N >= 0");
  const auto sc = detail::scale(params);
  const double g = sc.beta * N_prev;
  const double log_rate = -detail::log_I(sc, N_prev);
  const double tail = pseudo_equilibrium_tail_mass(params, N_prev, grid.v_min);
  if (tail > max_tail_mass) {
    throw DomainError("pseudo-equilibrium mass extends past v_min (tail mass " + std::to_string(tail) + ")");
  }
  const double log_k = detail::log_gauss_growth(sc.x_reset, sc.x_fire, g);
  const double log_pref = log_rate + std::log(sc.inv_sqrt_a);

  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i) * sc.inv_sqrt_a;
    const double base = 0.5 * (x - g) * (x - g);
    if (i <= grid.i_vr) {
      values[i] = std::exp(log_pref + log_k - base);
    } else if (i < grid.n_v) {
      auto integrand = [&](double y) { return std::exp(0.5 * (y - g) * (y - g) - base); };
      values[i] = std::exp(log_pref) *
                  quad::integrate(integrand, x, sc.x_fire, 1e-12, quad::kDefaultMaxDepth, "profile").value;
    }
  }
  DensityProfile prof(grid, std::move(values));
  prof.normalize();
  return prof;
}

/// g(b) = f'(N_b*) for b <= 0, where N_b* is the unique stationary rate.
inline double eval_g(const ModelParams& params) {
  if (params.b > 0.0) throw DomainError("g(b) is defined for b <= 0");
  if (params.b == 0.0) return 0.0;
  const auto set = solve_stationary(params);
  if (set.count() != 1) throw Error("expected a unique stationary rate for b <= 0");
  return set.roots.front().slope;
}

/// The connectivity b* < 0 at which g(b*) = -1 (period-doubling of the
/// firing-rate map). The `b` field of `params` is ignored.
inline double find_b_star(const ModelParams& params, double tol = 1e-8) {
  auto g_plus_one = [&](double b) { return eval_g(params.with_b(b)) + 1.0; };
  double hi = -1.0;
  double g_hi = g_plus_one(hi);
  if (g_hi <= 0.0) throw BracketNotFound("g(-1) <= -1: b* lies above -1");
  double lo = 2.0 * hi;
  double g_lo = g_plus_one(lo);
  while (g_lo > 0.0) {
    hi = lo;
    g_hi = g_lo;
    if (lo <= -200.0) throw BracketNotFound("g(b) stays above -1 on [-200, 0]");
    lo = std::max(2.0 * lo, -200.0);
    g_lo = g_plus_one(lo);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g_plus_one(mid);
    if (std::abs(g_mid) < tol && hi - lo < 1e-6) return mid;
    if (g_mid > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-13) return mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace specfun
}  // namespace nnlif

#endif  // NNLIF_SPECFUN_HPP
