#include "discordlab/conjectures.hpp"
#include "discordlab/errors.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace discordlab {
namespace {

using testing::max_abs_diff;
constexpr double kPi = std::numbers::pi;

GeneralRParams synak_params() {
  const auto R = pauli_expansion(testing::synak_state());
  GeneralRParams p;
  p.r1 = R(1, 0);
  p.r3 = R(3, 0);
  p.s1 = R(0, 1);
  p.s3 = R(0, 3);
  p.t13 = R(1, 3);
  p.t22 = R(2, 2);
  p.t31 = R(3, 1);
  return p;
}

double chord_entropy(const Chord& chord) {
  return chord.first_weight * binary_entropy(chord.first.norm()) +
         (1.0 - chord.first_weight) * binary_entropy(chord.second.norm());
}

TEST(Mixture, ValidatesParameters) {
  EXPECT_THROW(validate(MixtureParams{1.5, 0.1, 0.1}), ParameterError);
  EXPECT_THROW(validate(MixtureParams{0.5, -0.1, 0.1}), ParameterError);
  EXPECT_THROW(validate(MixtureParams{0.5, 0.1, 2.0}), ParameterError);
}

TEST(Mixture, SpecialStates) {
  Eigen::Matrix4cd zero_zero = Eigen::Matrix4cd::Zero();
  zero_zero(0, 0) = 1.0;
  EXPECT_LE(max_abs_diff(make_mixture_state({1.0, 0.7, 0.3}).matrix(), zero_zero), 1e-15);

  const auto classical = make_mixture_state({0.5, kPi / 2, kPi / 2});
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LE(max_abs_diff(classical.matrix(), expected), 1e-15);

  const auto product = correlation_report(make_mixture_state({0.3, 0.0, 1.1}));
  EXPECT_NEAR(product.mutual_info, 0.0, 1e-12);
  EXPECT_NEAR(product.classical, 0.0, 1e-9);
  EXPECT_NEAR(product.discord, 0.0, 1e-9);
}

TEST(Mixture, EnsembleExample) {
  const MixtureParams p{0.5, kPi / 4, kPi / 4};
  const auto ens = mixture_ensemble(p, ProjectiveMeasurement(Eigen::Vector3d(0, 0, 1)));
  EXPECT_NEAR(ens[0].probability, 0.75, 1e-15);
  EXPECT_LE((ens[0].bloch - BlochVector(1.0 / 3.0, 0, 2.0 / 3.0)).norm(), 1e-15);
  const BlochVector sum = ens[0].probability * ens[0].bloch + ens[1].probability * ens[1].bloch;
  EXPECT_LE((sum - mixture_bloch_a(p)).norm(), 1e-15);
  EXPECT_NEAR(ens[0].bloch(0) + ens[0].bloch(2), 1.0, 1e-15);
  EXPECT_NEAR(ens[1].bloch(0) + ens[1].bloch(2), 1.0, 1e-15);
}

TEST(Mixture, ClassicalLimitHasZeroGap) {
  const auto sample = evaluate_gap({0.5, kPi / 2, kPi / 2});
  EXPECT_NEAR(sample.gap, 0.0, 1e-9);
  EXPECT_NEAR(sample.min_entropy, 0.0, 1e-9);
  EXPECT_NEAR(std::abs(sample.optimal_measurement.direction()(2)), 1.0, 1e-6);

  const auto pure = evaluate_gap({1.0, 0.4, 0.9});
  EXPECT_EQ(pure.gap, 0.0);
  EXPECT_NEAR(pure.min_entropy, 0.0, 1e-12);
}

TEST(Mixture, ConjectureRouteOnClassicalState) {
  const auto r = mixture_correlations_via_conjecture({0.5, kPi / 2, kPi / 2});
  EXPECT_NEAR(r.report.mutual_info, 1.0, 1e-12);
  EXPECT_NEAR(r.report.classical, 1.0, 1e-9);
  EXPECT_NEAR(r.report.discord, 0.0, 1e-9);
  EXPECT_EQ(r.report.branch, Branch::equi_entropy);
}

TEST(Mixture, ConjectureRouteAgreesWithOracle) {
  const MixtureParams p{0.5, kPi / 4, kPi / 3};
  const auto constrained = mixture_correlations_via_conjecture(p);
  const auto oracle = mixture_correlations(p);
  EXPECT_NEAR(constrained.report.classical, oracle.classical, 1e-6);
  EXPECT_LE(std::abs(constrained.discrepancy), 1e-6);
}

TEST(Mixture, RunIsIndependentOfThreadCount) {
  const auto serial = test_equi_entropy_conjecture(24, 7, {}, 1);
  const auto parallel = test_equi_entropy_conjecture(24, 7, {}, 3);
  ASSERT_EQ(serial.samples.size(), 24u);
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    EXPECT_EQ(serial.samples[i].params.lambda, parallel.samples[i].params.lambda);
    EXPECT_EQ(serial.samples[i].gap, parallel.samples[i].gap);
  }
  EXPECT_THROW(test_equi_entropy_conjecture(0, 7), ParameterError);
}

TEST(Mixture, GapStatisticsSummary) {
  std::vector<GapSample> samples(1000);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].gap = i < 995 ? 1e-7 : 2e-5;
  samples[3].gap = 5e-6;
  const auto s = summarize_gaps(samples);
  EXPECT_EQ(s.max_gap, 2e-5);
  EXPECT_NEAR(s.fraction_within_1e6, 0.994, 1e-15);
  EXPECT_NEAR(s.fraction_within_1e5, 0.995, 1e-15);
  EXPECT_EQ(s.percentile_999, 2e-5);
}

TEST(GeneralR, SynakFitsTemplate) {
  const auto p = synak_params();
  const auto R = pauli_expansion(testing::synak_state());
  EXPECT_NEAR(p.t11(), R(1, 1), 1e-12);
  EXPECT_NEAR(p.t33(), R(3, 3), 1e-12);
  EXPECT_LE((p.matrix().entries() - R.entries()).cwiseAbs().maxCoeff(), 1e-12);
  const auto e = general_r_ellipsoid(p);
  EXPECT_LE((e.center - BlochVector(0, 0, 0.5)).norm(), 1e-12);
  EXPECT_LE((e.semi_axes - Eigen::Vector3d(std::sqrt(0.5), std::sqrt(0.5), 0.5)).norm(), 1e-12);
}

TEST(GeneralR, ValidationErrors) {
  auto p = synak_params();
  p.s1 = 0.0;
  EXPECT_THROW(validate(p), ParameterError);
  p = synak_params();
  p.t13 = 0.0;
  EXPECT_THROW(validate(p), ParameterError);
  p = synak_params();
  p.r1 = 0.9;
  p.t22 = 0.95;
  EXPECT_THROW(make_general_r_state(p), ValidationError);
}

TEST(GeneralR, SynakIsClassIWithSlidingChords) {
  const auto p = synak_params();
  const auto cls = classify_optimal_line(p);
  EXPECT_EQ(cls.cls, OptimalLineClass::I);
  EXPECT_NEAR(cls.min_entropy_a, 0.2804, 5e-4);
  EXPECT_TRUE(std::isnan(cls.min_entropy_a_tilde));

  // Every horizontal chord through r_A is optimal.
  const auto e = general_r_ellipsoid(p);
  const BlochVector r_a = p.matrix().bloch_a();
  for (int k = 0; k < 12; ++k) {
    const double phi = kPi * k / 12.0;
    const auto chord = chord_through(e, r_a, Eigen::Vector3d(std::cos(phi), std::sin(phi), 0));
    ASSERT_TRUE(chord.has_value());
    EXPECT_NEAR(chord->first.norm(), chord->second.norm(), 1e-12);
    EXPECT_NEAR(chord_entropy(*chord), cls.min_entropy_a, 1e-6);
  }
  EXPECT_NEAR(ellipsoid_min_entropy(e, r_a), cls.min_entropy_a, 1e-6);
  EXPECT_NEAR(equal_norm_optimum(p.matrix()).entropy, cls.min_entropy_a, 1e-6);
}

TEST(GeneralR, ChordRejectsExteriorPoints) {
  const auto e = general_r_ellipsoid(synak_params());
  EXPECT_FALSE(chord_through(e, BlochVector(0, 0, -0.5), Eigen::Vector3d(1, 0, 0)).has_value());
  EXPECT_THROW(ellipsoid_min_entropy(e, BlochVector(0, 0, -0.5)), ParameterError);
}

TEST(GeneralR, XStatesFollowClosedFormBranch) {
  const auto equi = classify_optimal_line(pauli_expansion(make_bell_diagonal_state({0.8, 0.1, -0.2})));
  EXPECT_EQ(equi.cls, OptimalLineClass::I);
  EXPECT_NEAR(equi.min_entropy_a, binary_entropy(0.8), 1e-12);

  const auto quasi = classify_optimal_line(pauli_expansion(make_bell_diagonal_state({0.2, 0.1, -0.8})));
  EXPECT_EQ(quasi.cls, OptimalLineClass::II);
  EXPECT_NEAR(quasi.min_entropy_a, binary_entropy(0.8), 1e-12);
  EXPECT_NEAR(quasi.min_entropy_a_tilde, binary_entropy(0.8), 1e-12);
}

// ---------------------------------------------------------------------------
// Properties over seeded random parameters

TEST(ConjectureProperties, LineIdentity) {
  testing::Rng rng(501);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_mixture(rng);
    const auto ens = mixture_ensemble(p, ProjectiveMeasurement(testing::random_unit_vector(rng)));
    for (const auto& member : ens) {
      if (!member.zero_probability) EXPECT_NEAR(line_residual(p, member.bloch), 0.0, 1e-10);
    }
    EXPECT_NEAR(line_residual(p, mixture_bloch_a(p)), 0.0, 1e-10);
  }
}

TEST(ConjectureProperties, MixtureEnsembleMatchesGeneralConstruction) {
  testing::Rng rng(502);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_mixture(rng);
    const ProjectiveMeasurement m(testing::random_unit_vector(rng));
    const auto direct = mixture_ensemble(p, m);
    const auto general = post_measurement_ensemble(pauli_expansion(make_mixture_state(p)), m);
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(direct[k].probability, general[k].probability, 1e-12);
      if (direct[k].probability > 1e-6) {
        EXPECT_LE((direct[k].bloch - general[k].bloch).norm(), 1e-9);
      }
    }
  }
}

TEST(ConjectureProperties, EquiEntropyGapAtOptimum) {
  testing::Rng rng(503);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sample = evaluate_gap(testing::random_mixture(rng));
    EXPECT_LE(sample.gap, 1e-5);
  }
}

TEST(ConjectureProperties, GeneralRClosedFormMatchesQuadric) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto p = sample_general_r(99, i);
    const auto closed = general_r_ellipsoid(p);
    const auto quad = quadric_to_ellipsoid(steering_quadric(p.matrix()));
    Eigen::Vector3d axes = closed.semi_axes;
    std::sort(axes.data(), axes.data() + 3, std::greater<>());
    EXPECT_LE((quad.center - closed.center).norm(), 1e-8) << i;
    EXPECT_LE((quad.semi_axes - axes).norm(), 1e-8) << i;
    EXPECT_NEAR(closed.center(0), 0.0, 0.0);
  }
}

TEST(ConjectureProperties, SampledStatesContainTheirMarginal) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto p = sample_general_r(7, i);
    const auto rho = make_general_r_state(p);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(rho.matrix()).eigenvalues().minCoeff(),
              -1e-12);
    EXPECT_TRUE(contains(general_r_ellipsoid(p), p.matrix().bloch_a()).inside) << i;
  }
}

TEST(ConjectureProperties, SamplerIsDeterministic) {
  const auto a = sample_general_r(5, 3);
  const auto b = sample_general_r(5, 3);
  EXPECT_EQ(a.r1, b.r1);
  EXPECT_EQ(a.t31, b.t31);
  EXPECT_NE(a.r1, sample_general_r(5, 4).r1);
}

}  // namespace
}  // namespace discordlab
