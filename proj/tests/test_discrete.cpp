#include <gtest/gtest.h>

#include <sstream>

#include "nnlif/discrete.hpp"

using namespace nnlif;

namespace {

// Frozen reference values from tests/oracles/generate_oracles.py.
constexpr double kRoot1_b15 = 0.19236401256847936;
constexpr double kRoot_b05 = 0.13477507993525008;
constexpr double kRoot_bm14 = 0.039569563352805255;
constexpr double kCycleMinus_bm14 = 0.0022038005558459045;
constexpr double kCyclePlus_bm14 = 0.11360830371089943;
constexpr double kF0 = 0.11997596523910497;

ModelParams with_b(double b) {
  ModelParams p;
  p.b = b;
  return p;
}

struct Case {
  double b, n0;
  SequenceKind kind;
  double limit;  // NaN: not checked
};

}  // namespace

TEST(DiscreteClassification, Matrix) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<Case> cases = {
      {0.5, 0.01, SequenceKind::Converged, kRoot_b05},  {0.5, 6.0, SequenceKind::Converged, kRoot_b05},
      {1.5, 0.1, SequenceKind::Converged, kRoot1_b15},  {1.5, 2.2, SequenceKind::Converged, kRoot1_b15},
      {1.5, 2.4, SequenceKind::Diverging, nan},         {2.2, 0.5, SequenceKind::Diverging, nan},
      {-5.0, 0.004, SequenceKind::Converged, nan},      {-14.0, 0.004, SequenceKind::TwoCycle, nan},
  };
  for (const auto& c : cases) {
    const auto traj = discrete::iterate_firing_rate(with_b(c.b), c.n0);
    EXPECT_EQ(traj.classification.kind, c.kind) << "b = " << c.b << ", N0 = " << c.n0;
    if (!std::isnan(c.limit)) {
      EXPECT_NEAR(traj.classification.limit, c.limit, 1e-8);
    }
    EXPECT_NO_THROW(discrete::monotonicity_report(traj)) << "b = " << c.b << ", N0 = " << c.n0;
    EXPECT_EQ(traj.values.front(), c.n0);
    EXPECT_EQ(traj.values.size(), traj.iterations_used + 1);
  }
}

TEST(DiscreteClassification, InhibitoryConvergenceToUniqueRoot) {
  const auto traj = discrete::iterate_firing_rate(with_b(-5.0), 0.004);
  const double root = specfun::solve_stationary(with_b(-5.0)).roots.front().rate;
  EXPECT_NEAR(traj.classification.limit, root, 1e-8);
  const auto rep = discrete::monotonicity_report(traj);
  EXPECT_EQ(rep.shape, discrete::MonotoneShape::ParityMonotone);
  EXPECT_EQ(rep.even_direction, -rep.odd_direction);
  EXPECT_TRUE(rep.interleaved);
}

TEST(DiscreteClassification, StationaryStartIsFixed) {
  const auto traj = discrete::iterate_firing_rate(with_b(1.5), kRoot1_b15);
  EXPECT_EQ(traj.classification.kind, SequenceKind::Converged);
  EXPECT_EQ(traj.iterations_used, 1u);
}

TEST(DiscreteClassification, MonotoneDirection) {
  EXPECT_EQ(discrete::monotonicity_report(discrete::iterate_firing_rate(with_b(1.5), 0.1)).direction, 1);
  EXPECT_EQ(discrete::monotonicity_report(discrete::iterate_firing_rate(with_b(1.5), 2.2)).direction, -1);
  EXPECT_EQ(discrete::monotonicity_report(discrete::iterate_firing_rate(with_b(1.5), 2.4)).direction, 1);
}

TEST(DiscreteClassification, UndeterminedWhenIterationBudgetTooSmall) {
  const auto traj = discrete::iterate_firing_rate(with_b(1.5), 0.1, 3);
  EXPECT_EQ(traj.classification.kind, SequenceKind::Undetermined);
  EXPECT_EQ(traj.values.size(), 4u);
}

TEST(DiscreteClassification, RejectsInvalidArguments) {
  EXPECT_THROW(discrete::iterate_firing_rate(with_b(1.5), -1.0), DomainError);
  EXPECT_THROW(discrete::iterate_firing_rate(with_b(1.5), 0.1, 0), DomainError);
  EXPECT_THROW(discrete::iterate_firing_rate(with_b(1.5), 0.1, 10, 0.0), DomainError);
}

TEST(DiscreteTwoCycle, StronglyInhibitoryValues) {
  const auto c = discrete::find_two_cycle(with_b(-14.0));
  EXPECT_NEAR(c.n_minus, kCycleMinus_bm14, 1e-9);
  EXPECT_NEAR(c.n_plus, kCyclePlus_bm14, 1e-9);
  EXPECT_LT(c.residual, 1e-12);
  EXPECT_LT(c.n_minus, kRoot_bm14);
  EXPECT_GT(c.n_plus, kRoot_bm14);

  const auto traj = discrete::iterate_firing_rate(with_b(-14.0), 0.004);
  ASSERT_EQ(traj.classification.kind, SequenceKind::TwoCycle);
  EXPECT_NEAR(traj.classification.cycle.n_minus, c.n_minus, 1e-8);
  EXPECT_NEAR(traj.classification.cycle.n_plus, c.n_plus, 1e-8);
}

TEST(DiscreteTwoCycle, LimitForVeryStrongInhibition) {
  const auto c = discrete::find_two_cycle(with_b(-100.0));
  EXPECT_NEAR(c.n_plus, kF0, 1e-10);  // f(N-) with N- ~ 1.6e-42
  EXPECT_LT(c.n_minus, 1e-30);
}

TEST(DiscreteTwoCycle, NoCycleAboveBifurcation) {
  EXPECT_THROW(discrete::find_two_cycle(with_b(-5.0)), NoCycleFound);
  EXPECT_THROW(discrete::find_two_cycle(with_b(0.5)), DomainError);
}

TEST(DiscreteMonotonicity, ViolationIsReported) {
  FiringRateTrajectory traj;
  traj.params = with_b(1.5);
  traj.values = {0.1, 0.2, 0.15, 0.3};
  EXPECT_THROW(discrete::monotonicity_report(traj), MonotonicityViolation);

  FiringRateTrajectory inh;
  inh.params = with_b(-14.0);
  inh.values = {0.01, 0.09, 0.02, 0.08, 0.005};  // odd terms rise then the even terms reverse
  EXPECT_THROW(discrete::monotonicity_report(inh), MonotonicityViolation);

  FiringRateTrajectory short_traj;
  short_traj.params = with_b(1.5);
  short_traj.values = {0.1, 0.2};
  EXPECT_THROW(discrete::monotonicity_report(short_traj), DomainError);
}

TEST(DiscretePseudoEquilibria, SequenceFollowsTrajectory) {
  const auto p = with_b(1.5);
  const auto traj = discrete::iterate_firing_rate(p, 0.1);
  const Grid grid = make_grid(p, -6.0, 0.02);
  const auto seq = discrete::pseudo_equilibria_sequence(p, traj, grid, 5);
  ASSERT_EQ(seq.size(), 5u);
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    const auto expect = specfun::pseudo_equilibrium_profile(p, traj.values[k - 1], grid);
    EXPECT_EQ(sup_distance(seq[k - 1], expect), 0.0);
  }
}

TEST(DiscreteCsv, Format) {
  FiringRateTrajectory traj;
  traj.values = {0.5, 0.25};
  std::ostringstream os;
  discrete::write_trajectory_csv(os, traj);
  EXPECT_EQ(os.str(), "k,N_k\n0,0.5\n1,0.25\n");
}
