#ifndef NNLIF_BUNDLE_HPP
#define NNLIF_BUNDLE_HPP

// On-disk artifacts of a run: CSV series, profiles and SVG plots.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "discrete.hpp"
#include "experiments.hpp"
#include "pde.hpp"
#include "svg.hpp"

namespace nnlif::bundle {

namespace fs = std::filesystem;

/// Output root: NNLIF_OUTPUT_ROOT if set, otherwise ./nnlif-output.
inline fs::path default_output_root() {
  if (const char* env = std::getenv("NNLIF_OUTPUT_ROOT"); env && *env) return fs::path(env);
  return fs::path("nnlif-output");
}

inline std::ofstream open_for_write(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  return out;
}

/// "profile_t<value>.csv" with the shortest exact-enough rendering of t.
inline std::string profile_file_name(double t) {
  std::ostringstream os;
  os.precision(10);
  os << "profile_t" << t << ".csv";
  return os.str();
}

inline void write_trajectory(const fs::path& dir, const FiringRateTrajectory& traj) {
  fs::create_directories(dir);
  auto csv = open_for_write(dir / "trajectory.csv");
  discrete::write_trajectory_csv(csv, traj);
  auto svg = open_for_write(dir / "cobweb.svg");
  plot::write_svg(svg, plot::cobweb_chart(traj));
}

/// Writes one experiment report into `dir`:
///   timeseries.csv, profile_t<t>.csv for each requested snapshot,
///   profile_final.csv, trajectory.csv, tracking.csv, report.csv,
///   firing_rate.svg, profiles.svg, cobweb.svg.
inline void write_run(const fs::path& dir, const experiments::ExperimentReport& rep,
                      const std::vector<double>& requested_snapshots) {
  fs::create_directories(dir);
  {
    auto out = open_for_write(dir / "timeseries.csv");
    pde::write_timeseries_csv(out, rep.record);
  }
  plot::Chart profiles;
  profiles.title = rep.label + ": density profiles";
  profiles.x_label = "v";
  profiles.y_label = "p(v)";
  for (double t : requested_snapshots) {
    const pde::Snapshot* s = rep.record.snapshot_near(t);
    if (!s || s->requested != t) continue;
    auto out = open_for_write(dir / profile_file_name(t));
    pde::write_profile_csv(out, s->profile);
    std::ostringstream name;
    name << "t = " << t;
    profiles.series.push_back(plot::profile_series(s->profile, name.str()));
  }
  {
    auto out = open_for_write(dir / "profile_final.csv");
    pde::write_profile_csv(out, rep.record.final_profile);
    std::ostringstream name;
    name << "final, t = " << rep.record.t_end();
    profiles.series.push_back(plot::profile_series(rep.record.final_profile, name.str()));
  }
  {
    auto out = open_for_write(dir / "tracking.csv");
    experiments::write_tracking_csv(out, rep);
  }
  {
    auto out = open_for_write(dir / "report.csv");
    experiments::write_report_csv(out, {rep});
  }
  write_trajectory(dir, rep.trajectory);

  plot::Chart rate;
  rate.title = rep.label + ": firing rate (" + to_string(rep.verdict.kind) + ")";
  rate.x_label = "t";
  rate.y_label = "N(t)";
  rate.series.push_back(plot::rate_series(rep.record, "PDE N(t)"));
  const double d = rep.params.delay;
  if (d > 0.0) {
    // Firing-rate sequence drawn as a staircase N(t) = N_k on [k d, (k+1) d).
    plot::Series seq{"N_k on [kd, (k+1)d)", {}, {}, "#2ca02c", true};
    for (std::size_t k = 0; k < rep.trajectory.values.size(); ++k) {
      const double t0 = static_cast<double>(k) * d;
      if (t0 > rep.record.t_end()) break;
      seq.x.push_back(t0);
      seq.y.push_back(rep.trajectory.values[k]);
      seq.x.push_back(std::min(t0 + d, rep.record.t_end()));
      seq.y.push_back(rep.trajectory.values[k]);
    }
    rate.series.push_back(seq);
  }
  {
    auto out = open_for_write(dir / "firing_rate.svg");
    plot::write_svg(out, rate);
  }
  {
    auto out = open_for_write(dir / "profiles.svg");
    plot::write_svg(out, profiles);
  }
}

}  // namespace nnlif::bundle

#endif  // NNLIF_BUNDLE_HPP
