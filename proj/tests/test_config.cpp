#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "nnlif/config.hpp"

using namespace nnlif;

namespace {

RunConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return config::parse(in, base);
}

const char* kMinimal = "[model]\nb = 1.5\n[run]\nt_end = 10\n";

}  // namespace

TEST(Config, MinimalUsesDefaults) {
  const auto cfg = parse(kMinimal);
  EXPECT_EQ(cfg.spec.params.b, 1.5);
  EXPECT_EQ(cfg.spec.params.a, 1.0);
  EXPECT_EQ(cfg.spec.params.delay, 0.0);
  EXPECT_EQ(cfg.spec.t_end, 10.0);
  EXPECT_EQ(cfg.spec.dv, 0.02);
  EXPECT_TRUE(std::isnan(cfg.spec.v_min));
  EXPECT_EQ(cfg.spec.ic.family, "pseudo-equilibrium");
  EXPECT_EQ(cfg.output_dir, "run");
}

TEST(Config, FullConfiguration) {
  const auto cfg = parse(
      "[model]\na = 1.2\nb = -14\nv_reset = 0.5\nv_fire = 2.5\ndelay = 25\n"
      "[grid]\nv_min = -9\ndv = 0.05\n"
      "[initial]\nfamily = double-maxwellian\nmu = 0.4\nsigma = 0.4\nmax_truncated = 1e-3\n"
      "[run]\nlabel = x\nt_end = 300\nsnapshots = 50, 100,300\nrecord_interval = 0.01\nrate_cap = inf\n"
      "output_dir = out/x\n"
      "[solver]\nc_cfl = 0.4\nsafety = 0.8\nsource_sigma = 0.01\nsingle_node_source = yes\n"
      "max_step_mass_drift = 1e-5\n"
      "[detector]\nwindow_fraction = 0.3\nwindow_delays = 2\nsteady_tol_abs = 1e-4\nsteady_tol_rel = 0.01\n"
      "steady_profile_tol = 0.1\nmin_cycles = 4\nperiodic_amplitude_tol = 0.2\nperiodic_period_tol = 0.1\n"
      "plateau_tol = 0.2\nplateau_min_mass = 0.8\n");
  const auto& s = cfg.spec;
  EXPECT_EQ(s.params.a, 1.2);
  EXPECT_EQ(s.params.v_reset, 0.5);
  EXPECT_EQ(s.params.v_fire, 2.5);
  EXPECT_EQ(s.params.delay, 25.0);
  EXPECT_EQ(s.v_min, -9.0);
  EXPECT_EQ(s.dv, 0.05);
  EXPECT_EQ(s.ic.mu, 0.4);
  EXPECT_EQ(s.ic.max_truncated, 1e-3);
  EXPECT_EQ(s.label, "x");
  EXPECT_EQ(s.snapshot_times, (std::vector<double>{50.0, 100.0, 300.0}));
  EXPECT_TRUE(std::isinf(s.solver.rate_cap));
  EXPECT_EQ(s.solver.record_interval, 0.01);
  EXPECT_TRUE(s.solver.single_node_source);
  EXPECT_EQ(s.solver.max_step_mass_drift, 1e-5);
  EXPECT_EQ(s.detector.min_cycles, 4u);
  EXPECT_EQ(s.detector.plateau_min_mass, 0.8);
  EXPECT_EQ(cfg.output_dir, "out/x");
}

TEST(Config, RejectsInvalidInput) {
  const std::vector<std::string> bad = {
      "[run]\nt_end = 10\n",                                          // missing b
      "[model]\nb = 1\n",                                             // missing t_end
      "[model]\nb = 1\n[run]\nt_end = 0\n",                           // t_end must be positive
      "[model]\nb = 1\n[run]\nt_end = inf\n",                         // and finite
      "[model]\nb = 1\n[run]\nt_end = -3\n",
      "[model]\nb = one\n[run]\nt_end = 1\n",                         // not a number
      "[model]\nb = 1x\n[run]\nt_end = 1\n",                          // trailing garbage
      "[model]\nb = 1\nc = 2\n[run]\nt_end = 1\n",                    // unknown key
      "[model]\nb = 1\n[output]\nx = 1\n[run]\nt_end = 1\n",          // unknown section
      "[model]\nb = 1\n[run]\nt_end = 1\nsnapshots = 0.5, 2\n",       // snapshot beyond t_end
      "[model]\nb = 1\na = 0\n[run]\nt_end = 1\n",                    // invalid model
      "[model]\nb = 1\nv_reset = 3\n[run]\nt_end = 1\n",              // V_R >= V_F
      "[model]\nb = 1\n[grid]\ndv = 0\n[run]\nt_end = 1\n",
      "[model]\nb = 1\n[grid]\nv_min = 1.5\n[run]\nt_end = 1\n",
      "[model]\nb = 1\n[initial]\nfamily = spline\n[run]\nt_end = 1\n",
      "[model]\nb = 1\n[initial]\nfamily = csv\n[run]\nt_end = 1\n",  // csv without a path
      "[model]\nb = 1\n[initial]\nn = -1\n[run]\nt_end = 1\n",
      "[model]\nb = 1\n[initial]\nsigma = 0\n[run]\nt_end = 1\n",
      "[model]\nb = 1\n[run]\nt_end = 1\n[solver]\nc_cfl = 0\n",
      "[model]\nb = 1\n[run]\nt_end = 1\n[solver]\nsingle_node_source = maybe\n",
      "[model]\nb = 1\n[run]\nt_end = 1\n[detector]\nmin_cycles = 2.5\n",
      "[model]\nb = 1\n[run]\nt_end = 1\n[detector]\nmin_cycles = 1\n",
      "[model\nb = 1\n",  // malformed
  };
  for (const auto& text : bad) EXPECT_THROW(parse(text), ConfigError) << text;
}

TEST(Config, RelativeCsvPathResolvesAgainstConfigDirectory) {
  const auto cfg = parse("[model]\nb = 0\n[initial]\nfamily = csv\npath = p0.csv\n[run]\nt_end = 1\n", "/data/runs");
  EXPECT_EQ(cfg.spec.ic.path, "/data/runs/p0.csv");
  const auto abs = parse("[model]\nb = 0\n[initial]\nfamily = csv\npath = /tmp/p.csv\n[run]\nt_end = 1\n", "/data");
  EXPECT_EQ(abs.spec.ic.path, "/tmp/p.csv");
}

TEST(Config, MissingFile) { EXPECT_THROW(config::load("/nonexistent/run.ini"), ConfigError); }

TEST(Config, CheckedInConfigurationsParse) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(NNLIF_CONFIG_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(config::load(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10u);
}
