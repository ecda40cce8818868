#include "discordlab/dynamics.hpp"
#include "discordlab/errors.hpp"
#include "discordlab/steering.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace discordlab {
namespace {

using testing::max_abs_diff;

const XStateParams kCoherent{0.4, 0.1, 0.2, 0.3, 0.1, 0.1, 0, 0};

TEST(PhaseDamping, RejectsOutOfRange) {
  EXPECT_THROW(PhaseDampingChannel(-0.1), ParameterError);
  EXPECT_THROW(PhaseDampingChannel(1.1), ParameterError);
  EXPECT_NEAR(PhaseDampingChannel::at_time(2.0, 0.5).gamma(), std::exp(-1.0), 1e-15);
}

TEST(PhaseDamping, KrausCompleteness) {
  const auto k = PhaseDampingChannel(0.3).kraus();
  const Eigen::Matrix2cd sum = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
  EXPECT_LE(max_abs_diff(sum, Eigen::Matrix2cd::Identity()), 1e-15);
}

TEST(PhaseDamping, IdentityAndFullDephasing) {
  const auto rho = make_x_state(kCoherent);
  EXPECT_LE(max_abs_diff(apply_channel(rho, PhaseDampingChannel(1.0)).matrix(), rho.matrix()),
            1e-15);
  auto diag = kCoherent;
  diag.u = diag.v = 0.0;
  EXPECT_LE(max_abs_diff(apply_channel(rho, PhaseDampingChannel(0.0)).matrix(),
                         make_x_state(diag).matrix()),
            1e-15);
}

TEST(PhaseDamping, HalfStrengthQuartersCoherences) {
  const auto out = as_x_state(apply_channel(make_x_state(kCoherent), PhaseDampingChannel(0.5)));
  ASSERT_TRUE(out.has_value());
  EXPECT_NEAR(out->u, 0.025, 1e-15);
  EXPECT_NEAR(out->v, 0.025, 1e-15);
  const auto before = ellipsoid_from_x_state(kCoherent);
  const auto after = ellipsoid_from_x_state(*out);
  EXPECT_NEAR(after.semi_axes(0), before.semi_axes(0) / 4.0, 1e-15);
}

TEST(PhaseDamping, SinglePartyScalesOnce) {
  const auto out = as_x_state(
      apply_channel(make_x_state(kCoherent), PhaseDampingChannel(0.5), /*both_parties=*/false));
  ASSERT_TRUE(out.has_value());
  EXPECT_NEAR(out->u, 0.05, 1e-15);
}

TEST(NamedChannel, ParseAndPrint) {
  EXPECT_EQ(NamedChannel::parse("phase_damping").kind, ChannelKind::phase_damping);
  EXPECT_EQ(NamedChannel::parse("amplitude_damping").kind, ChannelKind::amplitude_damping);
  const auto pauli = NamedChannel::parse("pauli(0.1,0.2,0.3)");
  EXPECT_EQ(pauli.kind, ChannelKind::pauli);
  EXPECT_DOUBLE_EQ(pauli.pz, 0.3);
  EXPECT_EQ(NamedChannel::parse(pauli.to_string()).py, 0.2);
  EXPECT_THROW(NamedChannel::parse("depolarize"), ParameterError);
  EXPECT_THROW(NamedChannel::parse("pauli(0.5,0.5,0.5)"), ParameterError);
  EXPECT_THROW(NamedChannel::parse("pauli(0.1,0.2)"), ParameterError);
}

TEST(NamedChannel, PauliZeroIsIdentity) {
  testing::Rng rng(1);
  const auto rho = testing::random_state(rng);
  const auto out = apply_named_channel(rho, NamedChannel::parse("pauli(0,0,0)"), 1.0);
  EXPECT_LE(max_abs_diff(out.matrix(), rho.matrix()), 1e-15);
}

TEST(NamedChannel, FullAmplitudeDampingResetsQubits) {
  const auto out = apply_named_channel(make_x_state(kCoherent),
                                       NamedChannel::parse("amplitude_damping"), 1.0);
  Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
  ground(0, 0) = 1.0;
  EXPECT_LE(max_abs_diff(partial_trace(out, Party::A), ground), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace(out, Party::B), ground), 1e-15);
}

TEST(CriticalTime, BellDiagonal) {
  const auto t = critical_time(BellDiagonalParams{0.8, 0.1, -0.2}, 1.0);
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 0.6931471805599453, 1e-15);
  EXPECT_FALSE(critical_time(BellDiagonalParams{0.2, 0.1, -0.8}, 1.0).has_value());
  EXPECT_FALSE(critical_time(BellDiagonalParams{0.5, 0.1, 0.0}, 1.0).has_value());
  EXPECT_THROW(critical_time(BellDiagonalParams{0.8, 0.1, -0.2}, 0.0), ParameterError);
}

TEST(CriticalTime, XRouteMatchesBellDiagonalFormula) {
  const BellDiagonalParams t{0.8, 0.1, -0.2};
  const auto x = critical_time(bell_diagonal_to_x(t), 1.0);
  ASSERT_TRUE(x.has_value());
  EXPECT_NEAR(*x, std::log(4.0) / 2.0, 1e-12);
  EXPECT_THROW(critical_time(bell_diagonal_to_x(t), -1.0), ParameterError);
  EXPECT_FALSE(critical_time(kCoherent, 1.0).has_value());  // quasi-eigen from the start
}

TEST(Trajectory, SuddenChangeForBellDiagonal) {
  const auto traj =
      evolve_trajectory(make_bell_diagonal_state({0.8, 0.1, -0.2}), 1.0, 2.0, 201);
  ASSERT_TRUE(traj.critical_time.has_value());
  EXPECT_NEAR(*traj.critical_time, std::log(4.0) / 2.0, 1e-6);
  const double plateau = 1.0 - binary_entropy(0.2);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double c = traj.reports[k].classical;
    if (traj.times[k] > *traj.critical_time) {
      EXPECT_NEAR(c, plateau, 1e-8) << traj.times[k];
    } else {
      EXPECT_NEAR(c, 1.0 - binary_entropy(0.8 * traj.gammas[k] * traj.gammas[k]), 1e-12);
    }
  }
}

TEST(Trajectory, QuasiEigenStartKeepsClassicalConstant) {
  const auto traj = evolve_trajectory(make_x_state(kCoherent), 1.0, 3.0, 61);
  EXPECT_FALSE(traj.critical_time.has_value());
  for (const auto& report : traj.reports) {
    EXPECT_NEAR(report.classical, traj.reports.front().classical, 1e-8);
  }
}

TEST(Trajectory, ProductStateStaysUncorrelated) {
  const auto traj = evolve_trajectory(make_x_state({0.42, 0.18, 0.28, 0.12, 0, 0, 0, 0}), 1.0,
                                      1.0, 11);
  for (const auto& report : traj.reports) {
    EXPECT_NEAR(report.classical, 0.0, 1e-12);
    EXPECT_NEAR(report.discord, 0.0, 1e-12);
  }
}

TEST(Trajectory, ArgumentChecks) {
  const auto rho = make_x_state(kCoherent);
  EXPECT_THROW(evolve_trajectory(rho, 1.0, 1.0, 1), ParameterError);
  EXPECT_THROW(evolve_trajectory(rho, -1.0, 1.0, 5), ParameterError);
  TrajectoryOptions fast;
  fast.fast = true;
  EXPECT_THROW(evolve_trajectory(testing::synak_state(), 1.0, 1.0, 3, fast),
               UnsupportedStructureError);
}

TEST(Trajectory, ThreadCountDoesNotChangeResults) {
  TrajectoryOptions serial, parallel;
  parallel.threads = 4;
  const auto rho = make_bell_diagonal_state({0.8, 0.1, -0.2});
  const auto a = evolve_trajectory(rho, 1.0, 2.0, 21, serial);
  const auto b = evolve_trajectory(rho, 1.0, 2.0, 21, parallel);
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    EXPECT_EQ(a.reports[k].classical, b.reports[k].classical);
  }
}

// ---------------------------------------------------------------------------
// Properties over seeded random states

TEST(DynamicsProperties, PhaseDampingSemigroup) {
  testing::Rng rng(401);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = testing::random_state(rng);
    const double rate = testing::uniform(rng, 0.1, 2.0);
    const double s = testing::uniform(rng, 0.0, 2.0);
    const double t = testing::uniform(rng, 0.0, 2.0);
    const auto composed = apply_channel(apply_channel(rho, PhaseDampingChannel::at_time(rate, s)),
                                        PhaseDampingChannel::at_time(rate, t));
    const auto direct = apply_channel(rho, PhaseDampingChannel::at_time(rate, s + t));
    EXPECT_LE(max_abs_diff(composed.matrix(), direct.matrix()), 1e-12);
  }
}

TEST(DynamicsProperties, ChannelsPreserveValidity) {
  testing::Rng rng(402);
  const NamedChannel channels[] = {NamedChannel::parse("phase_damping"),
                                   NamedChannel::parse("amplitude_damping"),
                                   NamedChannel::parse("pauli(0.2,0.1,0.3)")};
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = make_x_state(testing::random_x_params(rng));
    for (const auto& ch : channels) {
      const auto out = apply_named_channel(rho, ch, testing::uniform(rng));
      EXPECT_TRUE(as_x_state(out).has_value());
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    }
  }
}

TEST(DynamicsProperties, PhaseDampingScalesCoherencesBySquare) {
  testing::Rng rng(403);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_x_params(rng);
    const double gamma = testing::uniform(rng);
    const auto out = as_x_state(apply_channel(make_x_state(p), PhaseDampingChannel(gamma)));
    ASSERT_TRUE(out.has_value());
    EXPECT_NEAR(out->u, gamma * gamma * p.u, 1e-14);
    EXPECT_NEAR(out->v, gamma * gamma * p.v, 1e-14);
    EXPECT_NEAR(out->a, p.a, 1e-14);
  }
}

}  // namespace
}  // namespace discordlab
