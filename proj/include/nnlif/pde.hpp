#ifndef NNLIF_PDE_HPP
#define NNLIF_PDE_HPP

// Finite-difference solver for the delayed NNLIF Fokker-Planck equation
//
//   p_t + [(-v + b N(t-d)) p]_v - a p_vv = N(t) delta(v - V_R),
//   N(t) = -a p_v(V_F, t),  p(V_F, t) = 0,
//
// with WENO5 Lax-Friedrichs flux splitting for the drift, centred second
// differences for the diffusion and Shu-Osher TVD-RK3 in time.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "params.hpp"

namespace nnlif {

class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

namespace pde {

inline constexpr double kWenoEps = 1e-6;

/// Fifth-order WENO reconstruction at the right face of c from the upwind
/// stencil (a, b, c, d, e).
inline double weno5(double a, double b, double c, double d, double e) noexcept {
  const double q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
  const double q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
  const double q2 = (2.0 * c + 5.0 * d - e) / 6.0;
  const double t0 = a - 2.0 * b + c, u0 = a - 4.0 * b + 3.0 * c;
  const double t1 = b - 2.0 * c + d, u1 = b - d;
  const double t2 = c - 2.0 * d + e, u2 = 3.0 * c - 4.0 * d + e;
  const double s0 = 13.0 / 12.0 * t0 * t0 + 0.25 * u0 * u0;
  const double s1 = 13.0 / 12.0 * t1 * t1 + 0.25 * u1 * u1;
  const double s2 = 13.0 / 12.0 * t2 * t2 + 0.25 * u2 * u2;
  const double w0 = 0.1 / ((kWenoEps + s0) * (kWenoEps + s0));
  const double w1 = 0.6 / ((kWenoEps + s1) * (kWenoEps + s1));
  const double w2 = 0.3 / ((kWenoEps + s2) * (kWenoEps + s2));
  return (w0 * q0 + w1 * q1 + w2 * q2) / (w0 + w1 + w2);
}

/// Scratch buffers for the spatial operator; reused across stages and steps.
class AdvectionWorkspace {
 public:
  static constexpr std::size_t kGhost = 3;

  /// out[i] = -d/dv (u p) at every node, where u is the nodal velocity.
  /// p is extended by zero below v_min and by odd reflection about V_F
  /// (p(V_F + s) = -p(V_F - s)), with u extrapolated linearly.
  void rhs(const Grid& grid, std::span<const double> p, std::span<const double> velocity, std::span<double> out) {
    const std::size_t n = grid.size();
    const std::size_t m = n + 2 * kGhost;
    fp_.assign(m, 0.0);
    fm_.assign(m, 0.0);
    flux_.resize(n + 1);
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) alpha = std::max(alpha, std::abs(velocity[i]));
    auto split = [&](std::size_t slot, double u, double value) {
      const double f = u * value;
      const double ap = alpha * value;
      fp_[slot] = 0.5 * (f + ap);
      fm_[slot] = 0.5 * (f - ap);
    };
    for (std::size_t i = 0; i < n; ++i) split(i + kGhost, velocity[i], p[i]);
    for (std::size_t k = 1; k <= kGhost && k < n; ++k) {
      const double u = 2.0 * velocity[n - 1] - velocity[n - 1 - k];
      split(n - 1 + k + kGhost, u, -p[n - 1 - k]);
    }
    // flux_[j] is the numerical flux at face (j - 1) + 1/2, j = 0..n.
    for (std::size_t j = 0; j <= n; ++j) {
      const std::size_t c = j - 1 + kGhost;  // node left of the face, shifted by ghosts
      const double plus = weno5(fp_[c - 2], fp_[c - 1], fp_[c], fp_[c + 1], fp_[c + 2]);
      const double minus = weno5(fm_[c + 3], fm_[c + 2], fm_[c + 1], fm_[c], fm_[c - 1]);
      flux_[j] = plus + minus;
    }
    const double inv_dv = 1.0 / grid.dv;
    for (std::size_t i = 0; i < n; ++i) out[i] = -(flux_[i + 1] - flux_[i]) * inv_dv;
  }

 private:
  std::vector<double> fp_, fm_, flux_;
};

/// -d/dv[(-v + offset) p] by WENO5 with global Lax-Friedrichs splitting.
inline std::vector<double> advection_rhs(const Grid& grid, std::span<const double> p, double drift_offset) {
  std::vector<double> u(grid.size()), out(grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = -grid.node(i) + drift_offset;
  AdvectionWorkspace ws;
  ws.rhs(grid, p, u, out);
  return out;
}

/// Same operator with an arbitrary nodal velocity field.
inline std::vector<double> advection_rhs(const Grid& grid, std::span<const double> p,
                                         std::span<const double> velocity) {
  std::vector<double> out(grid.size());
  AdvectionWorkspace ws;
  ws.rhs(grid, p, velocity, out);
  return out;
}

/// a (p_{i+1} - 2 p_i + p_{i-1}) / dv^2 on interior nodes, zero on the boundary.
inline void diffusion_rhs(const Grid& grid, std::span<const double> p, double a, std::span<double> out) {
  const std::size_t n = grid.size();
  const double k = a / (grid.dv * grid.dv);
  out[0] = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = k * (p[i + 1] - 2.0 * p[i] + p[i - 1]);
}

inline std::vector<double> diffusion_rhs(const Grid& grid, std::span<const double> p, double a) {
  std::vector<double> out(grid.size());
  diffusion_rhs(grid, p, a, out);
  return out;
}

/// Discretely normalized Gaussian approximation of delta(v - V_R) with width
/// max(sigma, dv); `single_node` gives the Kronecker limit 1/dv at V_R.
inline std::vector<double> source_profile(const Grid& grid, double sigma, bool single_node = false) {
  if (!(sigma > 0.0)) throw DomainError("source width must be positive");
  std::vector<double> m(grid.size(), 0.0);
  if (single_node) {
    m[grid.i_vr] = 1.0 / grid.dv;
    return m;
  }
  const double s = std::max(sigma, grid.dv);
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    const double z = (grid.node(i) - grid.v_reset) / s;
    m[i] = std::exp(-0.5 * z * z);
  }
  const double mass = trapezoid_mass(grid, m);
  for (double& x : m) x /= mass;
  return m;
}

/// N = -a p_v(V_F) by the second-order one-sided difference, clamped at 0.
inline double firing_rate(const Grid& grid, std::span<const double> p, double a) {
  const std::size_t n = grid.n_v;
  const double slope = (3.0 * p[n] - 4.0 * p[n - 1] + p[n - 2]) / (2.0 * grid.dv);
  return std::max(0.0, -a * slope);
}

inline double firing_rate(const DensityProfile& prof, double a) { return firing_rate(prof.grid, prof.values, a); }

/// dt = safety * min(a dv^2 / 2, C_CFL dv / drift_max).
inline double cfl_dt(double a, double dv, double drift_max, double c_cfl, double safety = 0.9) {
  const double diffusive = a * dv * dv / 2.0;
  const double advective = drift_max > 0.0 ? c_cfl * dv / drift_max : std::numeric_limits<double>::infinity();
  return safety * std::min(diffusive, advective);
}

/// CFL step for the current delayed rate: drift_max = max_i |b N_del - v_i|.
inline double cfl_dt(const ModelParams& params, const Grid& grid, double delayed_rate, double c_cfl,
                     double safety = 0.9) {
  const double shift = params.b * delayed_rate;
  const double drift_max = std::max(std::abs(shift - grid.v_min), std::abs(shift - grid.v_fire));
  return cfl_dt(params.a, grid.dv, drift_max, c_cfl, safety);
}

/// Largest firing rate the mesh resolves for b > 0: the boundary layer at V_F
/// has width a / (b N), and the cell Peclet number b N dv / a is kept <= 1/2.
/// Beyond it the computed N(t) saturates at O(1/dv) and stops being monotone.
inline double resolution_rate_cap(const ModelParams& params, const Grid& grid) {
  if (!(params.b > 0.0)) return std::numeric_limits<double>::infinity();
  return 0.5 * params.a / (params.b * grid.dv);
}

/// History of the firing rate covering [t - d, t]. Before t = 0 the rate is
/// the constant `history`.
class DelayBuffer {
 public:
  DelayBuffer() = default;
  DelayBuffer(double delay, double history) : delay_(delay), history_(history) {}

  double delay() const noexcept { return delay_; }
  double history() const noexcept { return history_; }
  std::size_t size() const noexcept { return samples_.size(); }

  void push(double t, double rate) {
    if (!samples_.empty() && !(t > samples_.back().t)) throw DomainError("delay buffer times must increase");
    samples_.push_back({t, rate});
    const double horizon = t - delay_;
    while (samples_.size() > 2 && samples_[1].t <= horizon) samples_.pop_front();
  }

  /// Rate at time s, linearly interpolated between stored samples.
  double lookup(double s) const {
    if (samples_.empty() || s < samples_.front().t) {
      if (s <= 0.0) return history_;
      throw DomainError("delay buffer lookup before the stored window");
    }
    if (s >= samples_.back().t) return samples_.back().rate;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                               [](double x, const Sample& smp) { return x < smp.t; });
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double w = (s - lo.t) / (hi.t - lo.t);
    return lo.rate + w * (hi.rate - lo.rate);
  }

  double delayed(double t) const { return lookup(t - delay_); }

 private:
  struct Sample {
    double t;
    double rate;
  };
  double delay_ = 0.0;
  double history_ = 0.0;
  std::deque<Sample> samples_;
};

struct SolverOptions {
  double c_cfl = 0.5;
  double safety = 0.9;
  double source_sigma = 1e-6;
  bool single_node_source = false;
  /// Stop once N(t) exceeds this value (plateau / divergence regime).
  double rate_cap = std::numeric_limits<double>::infinity();
  /// Linear mode: the delayed rate is frozen at this value for all t.
  std::optional<double> frozen_delayed_rate;
  /// Minimum time between recorded samples of N(t) and mass(t); 0 records
  /// every step. The final step is always kept.
  double record_interval = 0.0;
  double max_step_mass_drift = 1e-4;
};

/// Full state of a running simulation.
struct SimState {
  Grid grid;
  std::vector<double> p;
  double t = 0.0;
  double rate = 0.0;
  DelayBuffer buffer;
};

/// Owns the work arrays for one simulation and advances its state.
class Stepper {
 public:
  Stepper(const ModelParams& params, const Grid& grid, const SolverOptions& opts)
      : params_(params), grid_(grid), opts_(opts) {
    const std::size_t n = grid.size();
    source_ = source_profile(grid, opts.source_sigma, opts.single_node_source);
    velocity_.resize(n);
    adv_.resize(n);
    diff_.resize(n);
    k_.resize(n);
    s1_.resize(n);
    s2_.resize(n);
  }

  double delayed_rate(const SimState& s) const {
    if (opts_.frozen_delayed_rate) return *opts_.frozen_delayed_rate;
    return s.buffer.delayed(s.t);
  }

  double dt_for(const SimState& s) const {
    return cfl_dt(params_, grid_, delayed_rate(s), opts_.c_cfl, opts_.safety);
  }

  /// Spatial operator L(p) including the reset source. The source strength
  /// equals the discrete outflow of the transport operator, so the scheme
  /// conserves trapezoid mass to round-off.
  void operator_L(std::span<const double> p, double delayed, std::span<double> out) {
    const std::size_t n = grid_.size();
    const double shift = params_.b * delayed;
    for (std::size_t i = 0; i < n; ++i) velocity_[i] = -grid_.node(i) + shift;
    adv_ws_.rhs(grid_, p, velocity_, adv_);
    diffusion_rhs(grid_, p, params_.a, diff_);
    double net = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = adv_[i] + diff_[i];
      net += out[i];
    }
    const double outflow = -net * grid_.dv;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] += outflow * source_[i];
    out[0] = 0.0;
    out[n - 1] = 0.0;
    last_outflow_ = outflow;
  }

  /// One Shu-Osher TVD-RK3 step; the delayed rate is frozen over the step.
  void step(SimState& s, double dt) {
    const std::size_t n = grid_.size();
    const double delayed = delayed_rate(s);
    const double mass_before = trapezoid_mass(grid_, s.p);

    operator_L(s.p, delayed, k_);
    for (std::size_t i = 0; i < n; ++i) s1_[i] = s.p[i] + dt * k_[i];
    zero_boundary(s1_);

    operator_L(s1_, delayed, k_);
    for (std::size_t i = 0; i < n; ++i) s2_[i] = 0.75 * s.p[i] + 0.25 * (s1_[i] + dt * k_[i]);
    zero_boundary(s2_);

    operator_L(s2_, delayed, k_);
    for (std::size_t i = 0; i < n; ++i) s.p[i] = (s.p[i] + 2.0 * (s2_[i] + dt * k_[i])) / 3.0;
    zero_boundary(s.p);

    s.t += dt;
    const double mass_after = trapezoid_mass(grid_, s.p);
    if (!std::isfinite(mass_after) || std::abs(mass_after - mass_before) > opts_.max_step_mass_drift) {
      throw InstabilityError("mass drift or NaN in RK3 step at t = " + std::to_string(s.t), s.t);
    }
    s.rate = firing_rate(grid_, s.p, params_.a);
    s.buffer.push(s.t, s.rate);
  }

  double last_outflow() const noexcept { return last_outflow_; }
  const std::vector<double>& source() const noexcept { return source_; }

 private:
  static void zero_boundary(std::vector<double>& v) {
    v.front() = 0.0;
    v.back() = 0.0;
  }

  ModelParams params_;
  Grid grid_;
  SolverOptions opts_;
  AdvectionWorkspace adv_ws_;
  std::vector<double> source_, velocity_, adv_, diff_, k_, s1_, s2_;
  double last_outflow_ = 0.0;
};

/// Initial state: the rate history on [-d, 0] is the firing rate of p0.
inline SimState make_initial_state(const ModelParams& params, const DensityProfile& initial) {
  if (initial.values.size() != initial.grid.size()) throw DomainError("profile does not match its grid");
  SimState s;
  s.grid = initial.grid;
  s.p = initial.values;
  s.p.front() = 0.0;
  s.p.back() = 0.0;
  s.t = 0.0;
  s.rate = firing_rate(s.grid, s.p, params.a);
  s.buffer = DelayBuffer(params.delay, s.rate);
  s.buffer.push(0.0, s.rate);
  return s;
}

/// Single RK3 step of the nonlinear problem from `state`.
inline SimState step_rk3(const ModelParams& params, SimState state, double dt, const SolverOptions& opts = {}) {
  Stepper st(params, state.grid, opts);
  st.step(state, dt);
  return state;
}

enum class StopReason { Completed, RateCap };

struct Snapshot {
  double requested = 0.0;
  double time = 0.0;
  DensityProfile profile;
};

/// Time series of one run.
struct SimRecord {
  ModelParams params;
  std::vector<double> times;
  std::vector<double> rates;
  std::vector<double> masses;
  std::vector<Snapshot> snapshots;
  DensityProfile final_profile;
  double history_rate = 0.0;
  StopReason stop = StopReason::Completed;
  std::size_t steps = 0;

  double t_end() const { return times.empty() ? 0.0 : times.back(); }

  /// Rate at time t by linear interpolation of the recorded series.
  double rate_at(double t) const {
    if (times.empty()) return history_rate;
    if (t <= times.front()) return rates.front();
    if (t >= times.back()) return rates.back();
    auto it = std::lower_bound(times.begin(), times.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
    return rates[j - 1] + w * (rates[j] - rates[j - 1]);
  }

  const Snapshot* snapshot_near(double t) const {
    const Snapshot* best = nullptr;
    for (const auto& s : snapshots) {
      if (!best || std::abs(s.requested - t) < std::abs(best->requested - t)) best = &s;
    }
    return best;
  }
};

/// Runs the scheme from `initial` to t_end, recording N(t) and mass(t) and
/// the profile at the step nearest to each requested snapshot time.
inline SimRecord simulate(const ModelParams& params, const DensityProfile& initial, double t_end,
                          std::vector<double> snapshot_times = {}, const SolverOptions& opts = {}) {
  params.validate();
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  std::sort(snapshot_times.begin(), snapshot_times.end());

  SimState s = make_initial_state(params, initial);
  Stepper stepper(params, s.grid, opts);
  SimRecord rec;
  rec.params = params;
  rec.history_rate = s.rate;
  rec.times.push_back(0.0);
  rec.rates.push_back(s.rate);
  rec.masses.push_back(trapezoid_mass(s.grid, s.p));

  std::size_t next_snap = 0;
  auto take_snapshots = [&](double horizon) {
    while (next_snap < snapshot_times.size() && snapshot_times[next_snap] <= horizon) {
      rec.snapshots.push_back({snapshot_times[next_snap], s.t, DensityProfile(s.grid, s.p)});
      ++next_snap;
    }
  };

  while (s.t < t_end) {
    double dt = stepper.dt_for(s);
    const bool last = s.t + dt >= t_end * (1.0 - 1e-14);
    if (last) dt = t_end - s.t;
    take_snapshots(s.t + 0.5 * dt);
    stepper.step(s, dt);
    if (last) s.t = t_end;
    ++rec.steps;
    const bool capped = s.rate > opts.rate_cap;
    if (s.t - rec.times.back() >= opts.record_interval || last || capped) {
      rec.times.push_back(s.t);
      rec.rates.push_back(s.rate);
      rec.masses.push_back(trapezoid_mass(s.grid, s.p));
    }
    if (capped) {
      rec.stop = StopReason::RateCap;
      break;
    }
    if (last) break;
  }
  take_snapshots(rec.stop == StopReason::Completed ? std::numeric_limits<double>::infinity() : s.t);
  rec.final_profile = DensityProfile(s.grid, s.p);
  return rec;
}

/// CSV with columns t, N, mass; 17 significant digits.
inline void write_timeseries_csv(std::ostream& os, const SimRecord& rec, double min_spacing = 0.0) {
  const auto old = os.precision(17);
  os << "t,N,mass\n";
  double last_t = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    const bool keep = i == 0 || i + 1 == rec.times.size() || rec.times[i] - last_t >= min_spacing;
    if (!keep) continue;
    os << rec.times[i] << ',' << rec.rates[i] << ',' << rec.masses[i] << '\n';
    last_t = rec.times[i];
  }
  os.precision(old);
}

/// CSV with columns v, p; 17 significant digits.
inline void write_profile_csv(std::ostream& os, const DensityProfile& prof) {
  const auto old = os.precision(17);
  os << "v,p\n";
  for (std::size_t i = 0; i < prof.values.size(); ++i) os << prof.grid.node(i) << ',' << prof.values[i] << '\n';
  os.precision(old);
}

}  // namespace pde
}  // namespace nnlif

#endif  // NNLIF_PDE_HPP
