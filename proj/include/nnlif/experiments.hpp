#ifndef NNLIF_EXPERIMENTS_HPP
#define NNLIF_EXPERIMENTS_HPP

// Long-time classification of PDE runs and their comparison with the
// discrete firing-rate system.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "discrete.hpp"
#include "grid.hpp"
#include "init.hpp"
#include "params.hpp"
#include "pde.hpp"
#include "specfun.hpp"

namespace nnlif {

enum class PdeVerdictKind { SteadyState, Plateau, Periodic, Undetermined };

inline const char* to_string(PdeVerdictKind k) {
  switch (k) {
    case PdeVerdictKind::SteadyState: return "steady";
    case PdeVerdictKind::Plateau: return "plateau";
    case PdeVerdictKind::Periodic: return "periodic";
    case PdeVerdictKind::Undetermined: return "undetermined";
  }
  return "?";
}

struct PdeVerdict {
  PdeVerdictKind kind = PdeVerdictKind::Undetermined;
  double n_inf = std::numeric_limits<double>::quiet_NaN();   // SteadyState: trailing mean of N
  double target = std::numeric_limits<double>::quiet_NaN();  // SteadyState: stationary rate matched
  double period = std::numeric_limits<double>::quiet_NaN();  // Periodic
  double n_min = std::numeric_limits<double>::quiet_NaN();   // Periodic
  double n_max = std::numeric_limits<double>::quiet_NaN();   // Periodic
  double residual = std::numeric_limits<double>::quiet_NaN();  // max |N - N_inf| over the window
};

/// Tolerances of the long-time detectors.
struct DetectorSettings {
  double window_fraction = 0.2;  // trailing window: max(fraction * t_end, delays * d)
  double window_delays = 4.0;
  double steady_tol_abs = 1e-3;  // |N - N_inf| < abs + rel * N_inf over the window
  double steady_tol_rel = 0.05;
  double steady_profile_tol = 0.05;  // sup-norm distance to the stationary profile
  std::size_t min_cycles = 3;
  double periodic_amplitude_tol = 0.10;
  double periodic_period_tol = 0.05;
  double plateau_tol = 0.15;
  double plateau_min_mass = 0.9;
};

namespace experiments {

/// Length of the trailing detector window, clipped to the record.
inline double detector_window(const pde::SimRecord& rec, const DetectorSettings& s) {
  const double len = rec.t_end() - (rec.times.empty() ? 0.0 : rec.times.front());
  return std::min(len, std::max(s.window_fraction * rec.t_end(), s.window_delays * rec.params.delay));
}

namespace detail {

inline std::size_t first_index_at(const pde::SimRecord& rec, double t) {
  return static_cast<std::size_t>(std::lower_bound(rec.times.begin(), rec.times.end(), t) - rec.times.begin());
}

}  // namespace detail

struct SteadyCheck {
  bool steady = false;
  double mean = 0.0;              // mean of N over the window
  double residual = 0.0;          // max |N - N_inf| over the window
  double profile_distance = 0.0;  // sup-norm to the stationary profile of N_inf
};

/// Steady iff max |N(t) - N_inf| over the trailing window is below `tol` and
/// the final profile is within `tol_profile` of the stationary profile.
inline SteadyCheck detect_steady(const ModelParams& params, const pde::SimRecord& rec, double n_inf, double window,
                                 double tol, double tol_profile) {
  if (rec.times.empty()) throw DomainError("empty record");
  SteadyCheck c;
  const std::size_t i0 = detail::first_index_at(rec, rec.t_end() - window);
  double sum = 0.0;
  for (std::size_t i = i0; i < rec.rates.size(); ++i) {
    c.residual = std::max(c.residual, std::abs(rec.rates[i] - n_inf));
    sum += rec.rates[i];
  }
  c.mean = sum / static_cast<double>(rec.rates.size() - i0);
  const Grid& grid = rec.final_profile.grid;
  try {
    const auto target = specfun::pseudo_equilibrium_profile(params, n_inf, grid);
    c.profile_distance = sup_distance(rec.final_profile, target);
  } catch (const Error&) {
    c.profile_distance = std::numeric_limits<double>::infinity();
  }
  c.steady = c.residual < tol && c.profile_distance < tol_profile;
  return c;
}

struct PeriodicCheck {
  bool periodic = false;
  std::size_t cycles = 0;  // rising mid-level crossings found in the window
  double period = std::numeric_limits<double>::quiet_NaN();
  double period_spread = std::numeric_limits<double>::quiet_NaN();     // (max - min) / mean of the periods
  double amplitude_spread = std::numeric_limits<double>::quiet_NaN();  // (max - min) / mean of the amplitudes
  double n_min = 0.0;
  double n_max = 0.0;
  std::vector<double> crossings;
};

/// Periodicity from the spacing of rising crossings of the mid level
/// (n_min + n_max) / 2, with hysteresis of 10% of the range.
///
/// The window is the trailing half of the record, extended when needed so
/// that it can hold min_cycles putative periods of length 2d plus a margin.
/// Periodic iff at least min_cycles crossings are found, the periods agree
/// within `period_tol` and the per-cycle peak-to-peak amplitudes within
/// `amplitude_tol` (both relative to their means).
inline PeriodicCheck detect_periodic(const pde::SimRecord& rec, std::size_t min_cycles = 3,
                                     double amplitude_tol = 0.10, double period_tol = 0.05) {
  PeriodicCheck c;
  if (rec.times.size() < 4) return c;
  const double t0 = rec.times.front(), t1 = rec.t_end();
  double window = 0.5 * (t1 - t0);
  if (rec.params.delay > 0.0) {
    window = std::max(window, (static_cast<double>(min_cycles) + 0.5) * 2.0 * rec.params.delay);
  }
  window = std::min(window, t1 - t0);
  const std::size_t i0 = detail::first_index_at(rec, t1 - window);
  const auto lo_it = std::min_element(rec.rates.begin() + static_cast<std::ptrdiff_t>(i0), rec.rates.end());
  const auto hi_it = std::max_element(rec.rates.begin() + static_cast<std::ptrdiff_t>(i0), rec.rates.end());
  c.n_min = *lo_it;
  c.n_max = *hi_it;
  const double range = c.n_max - c.n_min;
  if (!(range > std::max(1e-9, 1e-3 * std::abs(c.n_max)))) return c;
  const double mid = 0.5 * (c.n_min + c.n_max);
  const double h = 0.1 * range;

  // state: -1 below mid - h, +1 above mid + h, 0 unknown
  int state = 0;
  std::size_t last_below_mid = i0;
  for (std::size_t i = i0; i < rec.rates.size(); ++i) {
    const double x = rec.rates[i];
    if (x <= mid) last_below_mid = i;
    if (x < mid - h) {
      state = -1;
    } else if (x > mid + h) {
      if (state == -1) {
        // Interpolated time of the last upward crossing of mid.
        const std::size_t j = last_below_mid;
        const double xa = rec.rates[j], xb = rec.rates[j + 1];
        const double w = xb != xa ? (mid - xa) / (xb - xa) : 0.0;
        c.crossings.push_back(rec.times[j] + w * (rec.times[j + 1] - rec.times[j]));
      }
      state = 1;
    }
  }
  c.cycles = c.crossings.size();
  if (c.cycles < std::max<std::size_t>(min_cycles, 2)) return c;

  std::vector<double> periods, amplitudes;
  for (std::size_t k = 0; k + 1 < c.crossings.size(); ++k) {
    periods.push_back(c.crossings[k + 1] - c.crossings[k]);
    const std::size_t a = detail::first_index_at(rec, c.crossings[k]);
    const std::size_t b = detail::first_index_at(rec, c.crossings[k + 1]);
    const auto [mn, mx] = std::minmax_element(rec.rates.begin() + static_cast<std::ptrdiff_t>(a),
                                              rec.rates.begin() + static_cast<std::ptrdiff_t>(b));
    amplitudes.push_back(*mx - *mn);
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    return (*mx - *mn) / mean;
  };
  c.period = std::accumulate(periods.begin(), periods.end(), 0.0) / static_cast<double>(periods.size());
  c.period_spread = spread(periods);
  c.amplitude_spread = spread(amplitudes);
  c.periodic = c.period_spread <= period_tol && c.amplitude_spread <= amplitude_tol;
  return c;
}

struct PlateauCheck {
  bool plateau = false;
  bool increasing = false;
  double flatness = std::numeric_limits<double>::infinity();  // sup |p - mean| / mean on the trimmed interval
  double mass_between = 0.0;                                   // trapezoid mass on [V_R, V_F]
};

/// Plateau iff N(t) is non-decreasing (and actually grows) over the trailing
/// window, the final profile is flat on (V_R, V_F) and holds most of the mass
/// there.
///
/// Flatness is measured on [V_R + 0.1 L, V_F - 0.2 L], L = V_F - V_R: the
/// profile must vanish at V_F through a boundary layer of width ~ a / (b N),
/// and has a kink at V_R.
inline PlateauCheck detect_plateau(const pde::SimRecord& rec, double window, double plateau_tol = 0.15,
                                   double min_mass = 0.9) {
  PlateauCheck c;
  if (rec.times.size() < 2) return c;
  const std::size_t i0 = detail::first_index_at(rec, rec.t_end() - window);
  bool non_decreasing = true;
  for (std::size_t i = i0 + 1; i < rec.rates.size(); ++i) {
    const double slack = 1e-8 * std::max(1.0, std::abs(rec.rates[i]));
    if (rec.rates[i] < rec.rates[i - 1] - slack) {
      non_decreasing = false;
      break;
    }
  }
  const double growth = rec.rates.back() - rec.rates[i0];
  c.increasing = non_decreasing && growth > 1e-6 * std::max(1.0, std::abs(rec.rates.back()));

  const DensityProfile& p = rec.final_profile;
  const Grid& g = p.grid;
  const double L = g.v_fire - g.v_reset;
  const std::vector<double> between(p.values.begin() + static_cast<std::ptrdiff_t>(g.i_vr), p.values.end());
  c.mass_between = trapezoid_mass(g, between);

  double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t count = 0;
  for (std::size_t i = g.i_vr; i <= g.n_v; ++i) {
    const double v = g.node(i);
    if (v < g.v_reset + 0.1 * L || v > g.v_fire - 0.2 * L) continue;
    sum += p.values[i];
    lo = std::min(lo, p.values[i]);
    hi = std::max(hi, p.values[i]);
    ++count;
  }
  if (count > 0) {
    const double mean = sum / static_cast<double>(count);
    if (mean > 0.0) c.flatness = std::max(hi - mean, mean - lo) / mean;
  }
  c.plateau = c.increasing && c.flatness < plateau_tol && c.mass_between > min_mass;
  return c;
}

/// Exactly one verdict per record, tested in the order Plateau, Periodic,
/// SteadyState (against the stationary rate closest to the trailing mean).
inline PdeVerdict classify(const ModelParams& params, const pde::SimRecord& rec, const DetectorSettings& s = {}) {
  PdeVerdict v;
  const double window = detector_window(rec, s);

  const auto plateau = detect_plateau(rec, window, s.plateau_tol, s.plateau_min_mass);
  if (plateau.plateau) {
    v.kind = PdeVerdictKind::Plateau;
    return v;
  }
  const auto periodic = detect_periodic(rec, s.min_cycles, s.periodic_amplitude_tol, s.periodic_period_tol);
  if (periodic.periodic) {
    v.kind = PdeVerdictKind::Periodic;
    v.period = periodic.period;
    v.n_min = periodic.n_min;
    v.n_max = periodic.n_max;
    return v;
  }

  std::vector<double> roots;
  try {
    for (const auto& r : specfun::solve_stationary(params).roots) roots.push_back(r.rate);
  } catch (const ScanExhausted&) {
  }
  const std::size_t i0 = detail::first_index_at(rec, rec.t_end() - window);
  const double mean = std::accumulate(rec.rates.begin() + static_cast<std::ptrdiff_t>(i0), rec.rates.end(), 0.0) /
                      static_cast<double>(rec.rates.size() - i0);
  if (!roots.empty()) {
    const double target = *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
      return std::abs(a - mean) < std::abs(b - mean);
    });
    const auto steady = detect_steady(params, rec, target, window, s.steady_tol_abs + s.steady_tol_rel * target,
                                      s.steady_profile_tol);
    v.residual = steady.residual;
    v.target = target;
    if (steady.steady) {
      v.kind = PdeVerdictKind::SteadyState;
      v.n_inf = steady.mean;
      return v;
    }
  }
  return v;
}

/// Verdict correspondence between the discrete and continuous systems.
inline bool verdicts_agree(SequenceKind discrete, PdeVerdictKind pde) {
  return (discrete == SequenceKind::Converged && pde == PdeVerdictKind::SteadyState) ||
         (discrete == SequenceKind::Diverging && pde == PdeVerdictKind::Plateau) ||
         (discrete == SequenceKind::TwoCycle && pde == PdeVerdictKind::Periodic);
}

/// Distance between the PDE at t = k d and the k-th pseudo-equilibrium.
struct TrackingSample {
  std::size_t k = 0;
  double time = 0.0;
  double sup_distance = 0.0;    // || p(., k d) - p_{k,inf} ||_inf
  double rate_deviation = 0.0;  // | N(k d) - N_{k,inf} |
};

/// One PDE run and everything needed to reproduce it.
struct RunSpec {
  std::string label = "run";
  ModelParams params;
  double v_min = std::numeric_limits<double>::quiet_NaN();  // NaN: default_v_min(params)
  double dv = 0.02;
  init::IcSpec ic;
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  pde::SolverOptions solver;
  DetectorSettings detector;
  bool track_pseudo_equilibria = true;
};

struct ExperimentReport {
  std::string label;
  ModelParams params;
  std::string ic;
  double n_bar = 0.0;  // initial firing rate, also the constant history on [-d, 0]
  FiringRateTrajectory trajectory;
  PdeVerdict verdict;
  bool agreement = false;
  std::vector<TrackingSample> tracking;
  pde::SimRecord record;

  double max_tracking_sup() const {
    double m = 0.0;
    for (const auto& s : tracking) m = std::max(m, s.sup_distance);
    return m;
  }
  double max_tracking_rate() const {
    double m = 0.0;
    for (const auto& s : tracking) m = std::max(m, s.rate_deviation);
    return m;
  }
};

inline Grid grid_for(const RunSpec& spec) {
  const double v_min = std::isnan(spec.v_min) ? default_v_min(spec.params) : spec.v_min;
  return make_grid(spec.params, v_min, spec.dv);
}

/// Runs the PDE and the discrete system side by side.
///
/// The firing-rate sequence starts at N_0 = n_bar, the initial firing rate
/// of the IC (which is also the rate history on [-d, 0]); p(., k d) is then
/// compared with p_{k,inf}, the pseudo-equilibrium associated to N_{k-1}.
inline ExperimentReport run_experiment(const RunSpec& spec) {
  spec.params.validate();
  if (!(spec.t_end > 0.0)) throw DomainError("t_end must be positive");
  const Grid grid = grid_for(spec);
  const InitialCondition ic = init::make_initial(spec.params, grid, spec.ic);

  ExperimentReport rep;
  rep.label = spec.label;
  rep.params = spec.params;
  rep.ic = spec.ic.describe();
  rep.n_bar = ic.n_bar;
  rep.trajectory = discrete::iterate_firing_rate(spec.params, ic.n_bar);

  const double d = spec.params.delay;
  std::vector<double> snaps = spec.snapshot_times;
  std::vector<double> seq;  // N_0, N_1, ... for the tracking comparison
  std::size_t k_max = 0;
  if (spec.track_pseudo_equilibria && d > 0.0) {
    k_max = static_cast<std::size_t>(std::floor(spec.t_end / d + 1e-9));
    // The classified trajectory stops once its fate is known; keep iterating
    // the map so every delay interval of the run has a pseudo-equilibrium.
    seq = rep.trajectory.values;
    try {
      while (seq.size() <= k_max && std::isfinite(seq.back())) seq.push_back(specfun::eval_f(spec.params, seq.back()));
    } catch (const Error&) {
    }
    while (!seq.empty() && !std::isfinite(seq.back())) seq.pop_back();
    k_max = std::min(k_max, seq.size() - 1);
    for (std::size_t k = 1; k <= k_max; ++k) snaps.push_back(static_cast<double>(k) * d);
  }
  pde::SolverOptions opts = spec.solver;
  opts.rate_cap = std::min(opts.rate_cap, pde::resolution_rate_cap(spec.params, grid));
  rep.record = pde::simulate(spec.params, ic.profile, spec.t_end, snaps, opts);
  rep.verdict = classify(spec.params, rep.record, spec.detector);
  rep.agreement = verdicts_agree(rep.trajectory.classification.kind, rep.verdict.kind);

  for (std::size_t k = 1; k <= k_max; ++k) {
    const double t = static_cast<double>(k) * d;
    if (t > rep.record.t_end() + 1e-9) break;
    const pde::Snapshot* snap = rep.record.snapshot_near(t);
    if (!snap) break;
    try {
      const auto pk = specfun::pseudo_equilibrium_profile(spec.params, seq[k - 1], grid);
      TrackingSample ts;
      ts.k = k;
      ts.time = snap->time;
      ts.sup_distance = sup_distance(snap->profile, pk);
      ts.rate_deviation = std::abs(pde::firing_rate(snap->profile, spec.params.a) - seq[k]);
      rep.tracking.push_back(ts);
    } catch (const Error&) {
      break;  // the sequence left the range the mesh can represent
    }
  }
  return rep;
}

/// Standard comparison run: IC = pseudo-equilibrium associated to n_assoc.
inline ExperimentReport compare_discrete_continuous(const ModelParams& params, double n_assoc, double t_end,
                                                    double dv = 0.02, const pde::SolverOptions& solver = {},
                                                    const DetectorSettings& detector = {}) {
  if (!(params.delay > 0.0)) throw DomainError("the discrete/continuous comparison needs d > 0");
  RunSpec spec;
  spec.label = "compare";
  spec.params = params;
  spec.dv = dv;
  spec.ic.family = "pseudo-equilibrium";
  spec.ic.n = n_assoc;
  spec.t_end = t_end;
  spec.solver = solver;
  spec.detector = detector;
  return run_experiment(spec);
}

/// Runs independent experiments concurrently; results keep the input order.
inline std::vector<ExperimentReport> run_all(const std::vector<RunSpec>& specs) {
  std::vector<std::future<ExperimentReport>> futures;
  futures.reserve(specs.size());
  for (const auto& s : specs) futures.push_back(std::async(std::launch::async, run_experiment, s));
  std::vector<ExperimentReport> out;
  out.reserve(specs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

/// One run per delay from the same IC; t_end = max(t_factor * d, t_min).
inline std::vector<ExperimentReport> delay_sweep(const RunSpec& base, const std::vector<double>& delays,
                                                 double t_factor = 12.0, double t_min = 0.0) {
  if (delays.empty()) throw DomainError("delay sweep needs at least one delay");
  std::vector<RunSpec> specs;
  for (double d : delays) {
    RunSpec s = base;
    s.params = base.params.with_delay(d);
    s.t_end = std::max(t_factor * d, t_min);
    std::ostringstream os;
    os << base.label << "_d" << d;
    s.label = os.str();
    specs.push_back(std::move(s));
  }
  return run_all(specs);
}

/// Pointwise comparison of two N(t) traces on [t_from, min(t_end)].
struct SyncMetrics {
  double max_abs = 0.0;     // max |N1 - N2|
  double peak = 0.0;        // max of both traces on the interval
  double max_rel_peak = 0.0;  // max_abs / peak
  double max_rel_pointwise = 0.0;  // max |N1 - N2| / max(N1, N2)
};

inline SyncMetrics trace_sync(const pde::SimRecord& a, const pde::SimRecord& b, double t_from, double step = 0.01) {
  SyncMetrics m;
  const double t_to = std::min(a.t_end(), b.t_end());
  if (!(t_to > t_from)) throw DomainError("traces do not overlap after t_from");
  const auto n = static_cast<std::size_t>(std::floor((t_to - t_from) / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = t_from + static_cast<double>(i) * step;
    const double x = a.rate_at(t), y = b.rate_at(t);
    const double diff = std::abs(x - y);
    m.max_abs = std::max(m.max_abs, diff);
    m.peak = std::max({m.peak, x, y});
    const double scale = std::max(x, y);
    if (scale > 0.0) m.max_rel_pointwise = std::max(m.max_rel_pointwise, diff / scale);
  }
  m.max_rel_peak = m.peak > 0.0 ? m.max_abs / m.peak : 0.0;
  return m;
}

/// Flat CSV summary, one row per report.
inline void write_report_csv(std::ostream& os, const std::vector<ExperimentReport>& reports) {
  const auto old = os.precision(17);
  os << "label,a,b,v_reset,v_fire,d,ic,n_bar,discrete,discrete_limit,discrete_n_minus,discrete_n_plus,"
        "pde_verdict,n_inf,period,n_min,n_max,residual,t_final,stop,agreement,max_tracking_sup,max_tracking_rate\n";
  for (const auto& r : reports) {
    const auto& c = r.trajectory.classification;
    const auto& v = r.verdict;
    os << r.label << ',' << r.params.a << ',' << r.params.b << ',' << r.params.v_reset << ',' << r.params.v_fire
       << ',' << r.params.delay << ',' << r.ic << ',' << r.n_bar << ',' << to_string(c.kind) << ',' << c.limit << ','
       << c.cycle.n_minus << ',' << c.cycle.n_plus << ',' << to_string(v.kind) << ',' << v.n_inf << ',' << v.period
       << ',' << v.n_min << ',' << v.n_max << ',' << v.residual << ',' << r.record.t_end() << ','
       << (r.record.stop == pde::StopReason::RateCap ? "rate-cap" : "completed") << ','
       << (r.agreement ? "true" : "false") << ',' << r.max_tracking_sup() << ',' << r.max_tracking_rate() << '\n';
  }
  os.precision(old);
}

/// CSV of the pseudo-equilibrium tracking metrics of one report.
inline void write_tracking_csv(std::ostream& os, const ExperimentReport& r) {
  const auto old = os.precision(17);
  os << "k,t,sup_distance,rate_deviation\n";
  for (const auto& s : r.tracking) os << s.k << ',' << s.time << ',' << s.sup_distance << ',' << s.rate_deviation << '\n';
  os.precision(old);
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"bistability", "delay-sweep-excitatory", "delay-sweep-no-eq",
                                                 "inhibitory-periodic", "fig13-sync"};
  return names;
}

/// The runs behind each named study, at mesh spacing dv.
inline std::vector<RunSpec> experiment_plan(const std::string& name, double dv = 0.02) {
  RunSpec base;
  base.dv = dv;
  base.solver.record_interval = 0.005;
  std::vector<RunSpec> runs;
  auto sweep = [&](double b, double n, const std::vector<double>& delays, double t_factor, double t_min) {
    for (double d : delays) {
      RunSpec s = base;
      s.params.b = b;
      s.params.delay = d;
      s.ic.n = n;
      s.t_end = std::max(t_factor * d, t_min);
      std::ostringstream os;
      os << "d" << d;
      s.label = os.str();
      runs.push_back(s);
    }
  };
  if (name == "bistability") {
    for (double n : {2.25, 2.35}) {
      RunSpec s = base;
      s.params.b = 1.5;
      s.params.delay = 10.0;
      s.ic.n = n;
      s.t_end = 200.0;
      s.label = n < 2.3 ? "lower" : "upper";
      runs.push_back(s);
    }
  } else if (name == "delay-sweep-excitatory") {
    sweep(0.5, 6.0, {0.1, 2.0, 10.0}, 12.0, 30.0);
  } else if (name == "delay-sweep-no-eq") {
    sweep(2.2, 2.0, {0.1, 1.0, 10.0}, 12.0, 30.0);
  } else if (name == "inhibitory-periodic") {
    sweep(-14.0, 0.0, {2.0, 10.0, 25.0}, 12.0, 0.0);
  } else if (name == "fig13-sync") {
    auto add = [&](const std::string& label, const std::string& family, double mu) {
      RunSpec s = base;
      s.params.b = -14.0;
      s.params.delay = 25.0;
      s.ic.family = family;
      s.ic.mu = mu;
      s.ic.sigma = 0.5;
      s.ic.max_truncated = 1e-3;
      s.t_end = 300.0;
      s.label = label;
      runs.push_back(s);
    };
    add("cycle_low", "cycle-low", 0.0);
    add("maxwellian_low", "double-maxwellian", -1.0);
    add("cycle_high", "cycle-high", 0.0);
    add("maxwellian_high", "double-maxwellian", 0.4);
  } else {
    throw DomainError("unknown experiment '" + name + "'");
  }
  return runs;
}

}  // namespace experiments
}  // namespace nnlif

#endif  // NNLIF_EXPERIMENTS_HPP
