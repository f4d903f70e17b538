// nnlif: command-line front end.
//
//   nnlif stationary --b B [--v-reset R --v-fire F --a A]
//   nnlif discrete --b B --n0 N0 [--max-k K --tol T --out DIR]
//   nnlif bifurcation [--v-reset R --v-fire F --a A]
//   nnlif simulate CONFIG.ini [--output-root DIR]
//   nnlif experiment NAME [--dv DV --output-root DIR]
//
// Exit codes: 0 success, 2 configuration / usage error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnlif/bundle.hpp"
#include "nnlif/config.hpp"
#include "nnlif/discrete.hpp"
#include "nnlif/experiments.hpp"
#include "nnlif/specfun.hpp"

namespace fs = std::filesystem;
using namespace nnlif;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct ModelArgs {
  double b = 0.0;
  double v_reset = 1.0;
  double v_fire = 2.0;
  double a = 1.0;

  ModelParams params() const {
    ModelParams p;
    p.a = a;
    p.b = b;
    p.v_reset = v_reset;
    p.v_fire = v_fire;
    p.validate();
    return p;
  }
};

void add_model_options(CLI::App* cmd, ModelArgs& m, bool need_b) {
  auto* b = cmd->add_option("--b", m.b, "connectivity parameter b");
  if (need_b) b->required();
  cmd->add_option("--v-reset", m.v_reset, "reset potential V_R")->capture_default_str();
  cmd->add_option("--v-fire", m.v_fire, "threshold potential V_F")->capture_default_str();
  cmd->add_option("--a", m.a, "diffusion coefficient a")->capture_default_str();
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

void print_verdict(const experiments::ExperimentReport& r) {
  const auto& v = r.verdict;
  std::cout << r.label << ": discrete = " << to_string(r.trajectory.classification.kind)
            << ", pde = " << to_string(v.kind);
  if (v.kind == PdeVerdictKind::SteadyState) std::cout << " (N_inf = " << fmt(v.n_inf, 6) << ")";
  if (v.kind == PdeVerdictKind::Periodic) {
    std::cout << " (period = " << fmt(v.period, 6) << ", N in [" << fmt(v.n_min, 6) << ", " << fmt(v.n_max, 6)
              << "])";
  }
  std::cout << ", agreement = " << (r.agreement ? "yes" : "no") << ", t_final = " << fmt(r.record.t_end(), 6)
            << (r.record.stop == pde::StopReason::RateCap ? " (rate cap)" : "") << '\n';
}

int cmd_stationary(const ModelArgs& m) {
  const auto params = m.params();
  const auto set = specfun::solve_stationary(params);
  std::cout << "b = " << fmt(params.b) << "\ncount = " << set.count() << '\n';
  for (std::size_t i = 0; i < set.count(); ++i) {
    std::cout << "root " << i + 1 << ": N* = " << fmt(set.roots[i].rate) << ", slope f'(N*) = "
              << fmt(set.roots[i].slope) << '\n';
  }
  return 0;
}

int cmd_discrete(const ModelArgs& m, double n0, std::size_t max_k, double tol, const std::string& out_dir) {
  const auto params = m.params();
  const auto traj = discrete::iterate_firing_rate(params, n0, max_k, tol);
  fs::path dir = out_dir.empty() ? bundle::default_output_root() / ("discrete_b" + fmt(params.b) + "_n0" + fmt(n0))
                                 : fs::path(out_dir);
  bundle::write_trajectory(dir, traj);
  const auto& c = traj.classification;
  std::cout << "classification = " << to_string(c.kind);
  if (c.kind == SequenceKind::Converged) std::cout << " (limit " << fmt(c.limit) << ")";
  if (c.kind == SequenceKind::TwoCycle) {
    std::cout << " (N- = " << fmt(c.cycle.n_minus) << ", N+ = " << fmt(c.cycle.n_plus) << ")";
  }
  std::cout << "\niterations = " << traj.iterations_used << "\nlast = " << fmt(traj.values.back())
            << "\noutput = " << dir.string() << '\n';
  return 0;
}

int cmd_bifurcation(const ModelArgs& m) {
  const auto params = m.params();
  const double b_star = specfun::find_b_star(params);
  std::cout << "b* = " << fmt(b_star) << "\ng(b*) = " << fmt(specfun::eval_g(params.with_b(b_star))) << '\n';
  return 0;
}

int cmd_simulate(const std::string& config_file, const std::string& root) {
  const RunConfig cfg = config::load(config_file);
  const auto rep = experiments::run_experiment(cfg.spec);
  const fs::path base = root.empty() ? bundle::default_output_root() : fs::path(root);
  const fs::path dir = fs::path(cfg.output_dir).is_absolute() ? fs::path(cfg.output_dir) : base / cfg.output_dir;
  bundle::write_run(dir, rep, cfg.spec.snapshot_times);
  print_verdict(rep);
  std::cout << "output = " << dir.string() << '\n';
  return 0;
}

int cmd_experiment(const std::string& name, double dv, const std::string& root) {
  const auto plan = experiments::experiment_plan(name, dv);
  const auto reports = experiments::run_all(plan);
  const fs::path base = (root.empty() ? bundle::default_output_root() : fs::path(root)) / name;
  fs::create_directories(base);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    bundle::write_run(base / reports[i].label, reports[i], plan[i].snapshot_times);
    print_verdict(reports[i]);
  }
  {
    auto out = bundle::open_for_write(base / "report.csv");
    experiments::write_report_csv(out, reports);
  }
  plot::Chart chart;
  chart.title = name + ": firing rates";
  chart.x_label = "t";
  chart.y_label = "N(t)";
  for (const auto& r : reports) chart.series.push_back(plot::rate_series(r.record, r.label));
  {
    auto out = bundle::open_for_write(base / "firing_rates.svg");
    plot::write_svg(out, chart);
  }
  if (name == "fig13-sync") {
    auto out = bundle::open_for_write(base / "sync.csv");
    out.precision(17);
    out << "pair,t_from,max_abs,peak,max_rel_peak,max_rel_pointwise\n";
    for (std::size_t i = 0; i + 1 < reports.size(); i += 2) {
      const auto m = experiments::trace_sync(reports[i].record, reports[i + 1].record, 150.0);
      out << reports[i].label << '/' << reports[i + 1].label << ",150," << m.max_abs << ',' << m.peak << ','
          << m.max_rel_peak << ',' << m.max_rel_pointwise << '\n';
      std::cout << "sync " << reports[i].label << " vs " << reports[i + 1].label
                << ": max |dN| = " << fmt(m.max_abs, 4) << " (" << fmt(100.0 * m.max_rel_peak, 3)
                << "% of peak)\n";
    }
  }
  std::cout << "output = " << base.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed NNLIF Fokker-Planck laboratory"};
  app.require_subcommand(1);

  ModelArgs stationary_args;
  auto* stationary = app.add_subcommand("stationary", "stationary firing rates N* with N I(N) = 1");
  add_model_options(stationary, stationary_args, true);

  ModelArgs discrete_args;
  double n0 = 0.0;
  std::size_t max_k = discrete::kDefaultMaxK;
  double tol = discrete::kDefaultTol;
  std::string discrete_out;
  auto* disc = app.add_subcommand("discrete", "iterate N_{k+1} = 1/I(N_k); writes CSV and a cobweb plot");
  add_model_options(disc, discrete_args, true);
  disc->add_option("--n0", n0, "initial firing rate N_0")->required();
  disc->add_option("--max-k", max_k, "maximum number of iterations")->capture_default_str();
  disc->add_option("--tol", tol, "convergence tolerance")->capture_default_str();
  disc->add_option("--out", discrete_out, "output directory");

  ModelArgs bif_args;
  auto* bif = app.add_subcommand("bifurcation", "inhibitory bifurcation value b* (g(b*) = -1)");
  add_model_options(bif, bif_args, false);

  std::string config_file, sim_root;
  auto* sim = app.add_subcommand("simulate", "run the PDE from a configuration file");
  sim->add_option("config", config_file, "INI run configuration")->required();
  sim->add_option("--output-root", sim_root, "output root (default: $NNLIF_OUTPUT_ROOT or ./nnlif-output)");

  std::string exp_name, exp_root;
  double exp_dv = 0.02;
  auto* exp = app.add_subcommand("experiment", "run a named study");
  exp->add_option("name", exp_name, "study name")
      ->required()
      ->check(CLI::IsMember(experiments::experiment_names()));
  exp->add_option("--dv", exp_dv, "mesh spacing")->capture_default_str();
  exp->add_option("--output-root", exp_root, "output root (default: $NNLIF_OUTPUT_ROOT or ./nnlif-output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*stationary) return cmd_stationary(stationary_args);
    if (*disc) return cmd_discrete(discrete_args, n0, max_k, tol, discrete_out);
    if (*bif) return cmd_bifurcation(bif_args);
    if (*sim) return cmd_simulate(config_file, sim_root);
    if (*exp) return cmd_experiment(exp_name, exp_dv, exp_root);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
