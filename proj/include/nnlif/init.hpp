#ifndef NNLIF_INIT_HPP
#define NNLIF_INIT_HPP

// Initial-condition families for the PDE solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "discrete.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "pde.hpp"
#include "specfun.hpp"

namespace nnlif {

/// A gridded initial profile together with the analytic firing slope of the
/// family member it was built from (N-bar; for a pseudo-equilibrium
/// associated to N this is 1/I(N)).
struct InitialCondition {
  DensityProfile profile;
  double n_bar = 0.0;
};

namespace init {

/// Pseudo-equilibrium associated to N; n_bar = 1/I(N).
inline InitialCondition ic_pseudo_equilibrium(const ModelParams& params, const Grid& grid, double N) {
  InitialCondition ic;
  ic.profile = specfun::pseudo_equilibrium_profile(params, N, grid);
  ic.n_bar = specfun::eval_f(params, N);
  return ic;
}

/// Low member of the 2-cycle profiles: the pseudo-equilibrium associated to
/// N+, whose firing slope is N- = 1/I(N+).
inline InitialCondition ic_cycle_low(const ModelParams& params, const Grid& grid) {
  const TwoCycle c = discrete::find_two_cycle(params);
  InitialCondition ic;
  ic.profile = specfun::pseudo_equilibrium_profile(params, c.n_plus, grid);
  ic.n_bar = specfun::eval_f(params, c.n_plus);
  return ic;
}

/// High member: the pseudo-equilibrium associated to N-, with firing slope N+.
inline InitialCondition ic_cycle_high(const ModelParams& params, const Grid& grid) {
  const TwoCycle c = discrete::find_two_cycle(params);
  InitialCondition ic;
  ic.profile = specfun::pseudo_equilibrium_profile(params, c.n_minus, grid);
  ic.n_bar = specfun::eval_f(params, c.n_minus);
  return ic;
}

/// Analytic mass of the double Maxwellian that lies right of `v_fire`.
inline double double_maxwellian_mass_above(double mu, double sigma, double v_fire) {
  auto upper = [&](double center) { return 0.25 * std::erfc((v_fire - center) / (sigma * std::numbers::sqrt2)); };
  return upper(mu) + upper(-mu - 2.0);
}

/// Two Gaussians of width sigma centred at mu and -mu - 2 (symmetric about
/// v = -1), truncated to the grid, boundary nodes zeroed and renormalized.
/// Throws when more than `max_truncated` of the analytic mass lies right of V_F.
inline DensityProfile ic_double_maxwellian(const Grid& grid, double mu, double sigma, double max_truncated = 1e-6) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double cut = double_maxwellian_mass_above(mu, sigma, grid.v_fire);
  if (cut > max_truncated) {
    throw DomainError("double Maxwellian loses " + std::to_string(cut) + " of its mass beyond V_F");
  }
  const double pref = 1.0 / (std::sqrt(8.0 * std::numbers::pi) * sigma);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = grid.node(i);
    const double z1 = (v - mu) / sigma, z2 = (v + mu + 2.0) / sigma;
    values[i] = pref * (std::exp(-0.5 * z1 * z1) + std::exp(-0.5 * z2 * z2));
  }
  DensityProfile prof(grid, std::move(values));
  prof.normalize();
  return prof;
}

/// Undershoot tolerated (and clamped to zero) when reading saved profiles.
inline constexpr double kCsvUndershoot = 1e-8;

/// Reads a `v,p` CSV (optional header) whose rows coincide with the grid
/// nodes; boundary nodes are zeroed and the profile renormalized.
inline DensityProfile ic_from_csv(std::istream& in, const Grid& grid) {
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string sv, sp;
    if (!std::getline(ls, sv, ',') || !std::getline(ls, sp)) throw DomainError("malformed profile row: " + line);
    double v = 0.0, p = 0.0;
    try {
      v = std::stod(sv);
      p = std::stod(sp);
    } catch (const std::exception&) {
      if (row == 0 && values.empty()) {
        ++row;
        continue;  // header
      }
      throw DomainError("non-numeric profile row: " + line);
    }
    ++row;
    if (values.size() >= grid.size()) throw DomainError("profile has more rows than grid nodes");
    if (std::abs(v - grid.node(values.size())) > 1e-9 * std::max(1.0, std::abs(v))) {
      throw DomainError("profile node " + std::to_string(values.size()) + " does not match the grid");
    }
    if (!std::isfinite(p)) throw DomainError("non-finite profile value");
    if (p < -kCsvUndershoot) throw DomainError("negative profile value in row " + std::to_string(row));
    values.push_back(std::max(p, 0.0));
  }
  if (values.size() != grid.size()) throw DomainError("profile has fewer rows than grid nodes");
  DensityProfile prof(grid, std::move(values));
  prof.normalize();
  return prof;
}

/// Initial-condition family selected by name.
struct IcSpec {
  std::string family = "pseudo-equilibrium";  // | cycle-low | cycle-high | double-maxwellian | csv
  double n = 0.0;                              // pseudo-equilibrium: associated rate N
  double mu = -1.0;                            // double-maxwellian
  double sigma = 0.5;
  double max_truncated = 1e-6;
  std::string path;  // csv

  std::string describe() const {
    std::ostringstream os;
    os.precision(10);
    if (family == "pseudo-equilibrium") {
      os << family << "(N=" << n << ")";
    } else if (family == "double-maxwellian") {
      os << family << "(mu=" << mu << ";sigma=" << sigma << ")";
    } else if (family == "csv") {
      os << family << "(" << path << ")";
    } else {
      os << family;
    }
    return os.str();
  }
};

inline bool is_known_family(const std::string& family) {
  return family == "pseudo-equilibrium" || family == "cycle-low" || family == "cycle-high" ||
         family == "double-maxwellian" || family == "csv";
}

/// Builds the initial condition; for families without an analytic firing
/// slope n_bar is the discrete firing rate of the gridded profile.
inline InitialCondition make_initial(const ModelParams& params, const Grid& grid, const IcSpec& spec) {
  if (spec.family == "pseudo-equilibrium") return ic_pseudo_equilibrium(params, grid, spec.n);
  if (spec.family == "cycle-low") return ic_cycle_low(params, grid);
  if (spec.family == "cycle-high") return ic_cycle_high(params, grid);
  InitialCondition ic;
  if (spec.family == "double-maxwellian") {
    ic.profile = ic_double_maxwellian(grid, spec.mu, spec.sigma, spec.max_truncated);
  } else if (spec.family == "csv") {
    std::ifstream in(spec.path);
    if (!in) throw DomainError("cannot open initial profile " + spec.path);
    ic.profile = ic_from_csv(in, grid);
  } else {
    throw DomainError("unknown initial-condition family '" + spec.family + "'");
  }
  ic.n_bar = pde::firing_rate(ic.profile, params.a);
  return ic;
}

}  // namespace init
}  // namespace nnlif

#endif  // NNLIF_INIT_HPP
