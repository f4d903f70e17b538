#ifndef NNLIF_DISCRETE_HPP
#define NNLIF_DISCRETE_HPP

// The firing-rate recurrence N_{k+1} = f(N_k) = 1 / I(N_k) and its
// associated sequence of pseudo-equilibria.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "specfun.hpp"

namespace nnlif {

class NoCycleFound : public Error {
 public:
  using Error::Error;
};

class MonotonicityViolation : public Error {
 public:
  MonotonicityViolation(const std::string& what, std::size_t index) : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

struct TwoCycle {
  double n_minus = 0.0;
  double n_plus = 0.0;
  double residual = 0.0;  // |F(N-) - N-| with F = f o f
};

enum class SequenceKind { Converged, TwoCycle, Diverging, Undetermined };

inline const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::Converged: return "converged";
    case SequenceKind::TwoCycle: return "two-cycle";
    case SequenceKind::Diverging: return "diverging";
    case SequenceKind::Undetermined: return "undetermined";
  }
  return "?";
}

struct SequenceClass {
  SequenceKind kind = SequenceKind::Undetermined;
  double limit = 0.0;  // Converged only
  TwoCycle cycle;      // TwoCycle only
};

struct FiringRateTrajectory {
  ModelParams params;
  std::vector<double> values;
  SequenceClass classification;
  std::size_t iterations_used = 0;
};

namespace discrete {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultMaxK = 10000;

namespace detail {

inline std::vector<double> stationary_rates(const ModelParams& params) {
  try {
    std::vector<double> r;
    for (const auto& root : specfun::solve_stationary(params).roots) r.push_back(root.rate);
    return r;
  } catch (const ScanExhausted&) {
    return {};
  }
}

inline double slack(double x, double y) { return 1e-9 * std::max(std::abs(x), std::abs(y)) + 1e-15; }

}  // namespace detail

/// Iterates N_{k+1} = f(N_k) from N0 and classifies the asymptotics.
///
/// Converged: a step below `tol` whose end point is within 10 tol of a
/// stationary rate. TwoCycle: both parity subsequences settle to within `tol`
/// while consecutive terms stay more than 10 tol apart. Diverging (b > 0):
/// the sequence passes 10 max(1, largest root) and is still increasing there.
inline FiringRateTrajectory iterate_firing_rate(const ModelParams& params, double N0,
                                                std::size_t max_k = kDefaultMaxK, double tol = kDefaultTol) {
  if (!(N0 >= 0.0)) throw DomainError("initial firing rate must be >= 0");
  if (max_k < 1) throw DomainError("max_k must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");

  FiringRateTrajectory traj;
  traj.params = params;
  traj.values.push_back(N0);
  const auto roots = detail::stationary_rates(params);
  double cap = 1.0;
  for (double r : roots) cap = std::max(cap, r);
  cap *= 10.0;

  auto& v = traj.values;
  for (std::size_t k = 0; k < max_k; ++k) {
    v.push_back(specfun::eval_f(params, v.back()));
    traj.iterations_used = k + 1;
    const std::size_t n = v.size();
    const double step = std::abs(v[n - 1] - v[n - 2]);

    if (step < tol) {
      const double limit = v[n - 1];
      for (double r : roots) {
        if (std::abs(limit - r) < 10.0 * tol) {
          traj.classification = {SequenceKind::Converged, limit, {}};
          return traj;
        }
      }
    }
    if (n >= 4 && std::abs(v[n - 1] - v[n - 3]) < tol && std::abs(v[n - 2] - v[n - 4]) < tol && step > 10.0 * tol) {
      TwoCycle c;
      c.n_minus = std::min(v[n - 1], v[n - 2]);
      c.n_plus = std::max(v[n - 1], v[n - 2]);
      c.residual = std::abs(specfun::eval_f(params, specfun::eval_f(params, c.n_minus)) - c.n_minus);
      traj.classification = {SequenceKind::TwoCycle, 0.0, c};
      return traj;
    }
    if (params.b > 0.0 && v[n - 2] > cap && v[n - 1] > v[n - 2]) {
      traj.classification = {SequenceKind::Diverging, 0.0, {}};
      return traj;
    }
    if (!std::isfinite(v.back())) break;
  }
  traj.classification = {SequenceKind::Undetermined, 0.0, {}};
  return traj;
}

/// Fixed points of F = f o f other than N*, found by a sign-change scan of
/// F(N) - N on [0, f(0)] and refined by bisection.
inline TwoCycle find_two_cycle(const ModelParams& params) {
  if (!(params.b < 0.0)) throw DomainError("two-cycles of the firing-rate map require b < 0");
  const double f0 = specfun::eval_f(params, 0.0);
  const double n_star = specfun::solve_stationary(params).roots.front().rate;
  auto G = [&](double N) { return specfun::eval_f(params, specfun::eval_f(params, N)) - N; };

  std::vector<double> pts;
  const std::size_t n_geo = 200, n_lin = 400;
  for (std::size_t i = 0; i < n_geo; ++i) pts.push_back(f0 * std::pow(1e-16, 1.0 - double(i) / double(n_geo)));
  for (std::size_t i = 0; i <= n_lin; ++i) pts.push_back(f0 * double(i) / double(n_lin));
  pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> fixed;
  double prev = pts.front(), g_prev = G(prev);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double x = pts[i], gx = G(x);
    if (gx == 0.0) {
      fixed.push_back(x);
    } else if (g_prev != 0.0 && (gx < 0.0) != (g_prev < 0.0)) {
      double lo = prev, hi = x, g_lo = g_prev;
      for (int it = 0; it < 400 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi), gm = G(mid);
        if ((gm < 0.0) == (g_lo < 0.0)) {
          lo = mid;
          g_lo = gm;
        } else {
          hi = mid;
        }
      }
      fixed.push_back(0.5 * (lo + hi));
    }
    prev = x;
    g_prev = gx;
  }

  const double exclude = 1e-7 * std::max(n_star, 1e-12);
  std::optional<double> below, above;
  for (double x : fixed) {
    if (std::abs(x - n_star) <= exclude) continue;
    if (x < n_star && !below) below = x;
    if (x > n_star) above = x;
  }
  if (!below || !above) throw NoCycleFound("F = f o f has no fixed point besides N*");
  TwoCycle c;
  c.n_minus = *below;
  c.n_plus = specfun::eval_f(params, c.n_minus);
  c.residual = std::abs(G(c.n_minus));
  return c;
}

enum class MonotoneShape { Monotone, ParityMonotone };

struct MonotonicityReport {
  MonotoneShape shape = MonotoneShape::Monotone;
  int direction = 0;       // Monotone: +1 increasing, -1 decreasing, 0 constant
  int even_direction = 0;  // ParityMonotone only
  int odd_direction = 0;
  bool interleaved = true;  // ParityMonotone: even and odd terms on opposite sides of N*
};

namespace detail {

// Direction of a sequence that must be monotone up to round-off; throws on
// the first term that moves against the established direction.
inline int monotone_direction(const std::vector<double>& v, std::size_t start, std::size_t stride,
                              const char* label) {
  int dir = 0;
  for (std::size_t i = start + stride; i < v.size(); i += stride) {
    const double d = v[i] - v[i - stride];
    if (std::abs(d) <= slack(v[i], v[i - stride])) continue;
    const int s = d > 0.0 ? 1 : -1;
    if (dir == 0) {
      dir = s;
    } else if (s != dir) {
      throw MonotonicityViolation(std::string(label) + " is not monotone at index " + std::to_string(i), i);
    }
  }
  return dir;
}

}  // namespace detail

/// Checks the monotonicity structure of a firing-rate sequence: the whole
/// sequence for b >= 0, each parity subsequence (in opposite directions,
/// straddling N*) for b < 0.
inline MonotonicityReport monotonicity_report(const FiringRateTrajectory& traj) {
  const auto& v = traj.values;
  if (v.size() < 3) throw DomainError("monotonicity report needs at least three terms");
  MonotonicityReport rep;
  if (traj.params.b >= 0.0) {
    rep.direction = detail::monotone_direction(v, 0, 1, "firing-rate sequence");
    return rep;
  }
  rep.shape = MonotoneShape::ParityMonotone;
  rep.even_direction = detail::monotone_direction(v, 0, 2, "even subsequence");
  rep.odd_direction = detail::monotone_direction(v, 1, 2, "odd subsequence");
  if (rep.even_direction != 0 && rep.odd_direction != 0 && rep.even_direction == rep.odd_direction) {
    throw MonotonicityViolation("even and odd subsequences move in the same direction", 0);
  }
  const double n_star = specfun::solve_stationary(traj.params).roots.front().rate;
  int side_prev = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double d = v[k] - n_star;
    if (std::abs(d) <= detail::slack(v[k], n_star) + 1e-10 * n_star) {
      side_prev = 0;
      continue;
    }
    const int side = d > 0.0 ? 1 : -1;
    if (side_prev != 0 && side == side_prev) {
      rep.interleaved = false;
      throw MonotonicityViolation("consecutive terms on the same side of N*", k);
    }
    side_prev = side;
  }
  return rep;
}

/// p_k = pseudo-equilibrium associated to N_{k-1}, for k = 1..K, where K is
/// the trajectory length minus one (or `max_terms` if smaller).
inline std::vector<DensityProfile> pseudo_equilibria_sequence(
    const ModelParams& params, const FiringRateTrajectory& traj, const Grid& grid,
    std::size_t max_terms = std::numeric_limits<std::size_t>::max()) {
  if (traj.values.empty()) throw DomainError("empty trajectory");
  std::vector<DensityProfile> out;
  const std::size_t K = std::min(traj.values.size() - 1, max_terms);
  out.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    out.push_back(specfun::pseudo_equilibrium_profile(params, traj.values[k - 1], grid));
  }
  return out;
}

inline void write_trajectory_csv(std::ostream& os, const FiringRateTrajectory& traj) {
  const auto old = os.precision(17);
  os << "k,N_k\n";
  for (std::size_t k = 0; k < traj.values.size(); ++k) os << k << ',' << traj.values[k] << '\n';
  os.precision(old);
}

}  // namespace discrete
}  // namespace nnlif

#endif  // NNLIF_DISCRETE_HPP
