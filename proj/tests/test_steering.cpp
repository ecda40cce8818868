#include "discordlab/discord.hpp"
#include "discordlab/errors.hpp"
#include "discordlab/steering.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace discordlab {
namespace {

Eigen::Vector3d sorted_desc(Eigen::Vector3d v) {
  std::sort(v.data(), v.data() + 3, std::greater<>());
  return v;
}

TEST(SteeringQuadric, BellStateGivesUnitSphere) {
  const CorrelationMatrix R(Eigen::Vector4d(1, 1, -1, 1).asDiagonal());
  const auto q = steering_quadric(R);
  testing::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    EXPECT_NEAR(q.evaluate(testing::random_unit_vector(rng)), 0.0, 1e-12);
  }
  const auto e = quadric_to_ellipsoid(q);
  EXPECT_LE(e.center.norm(), 1e-12);
  EXPECT_LE((e.semi_axes - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SteeringQuadric, SingularMatrixThrows) {
  EXPECT_THROW(steering_quadric(CorrelationMatrix(Eigen::Matrix4d::Identity() * 0.0)),
               SingularCorrelationError);
  const auto singular = make_x_state({0.4, 0.1, 0.2, 0.3, 0.1, 0.1, 0, 0});
  EXPECT_THROW(steering_quadric(pauli_expansion(singular)), SingularCorrelationError);
}

TEST(SteeringQuadric, IndefiniteQuadricIsRejected) {
  QuadricForm q;
  q.matrix = Eigen::Vector4d(1, -1, 1, -1).asDiagonal();
  EXPECT_THROW(quadric_to_ellipsoid(q), NotAnEllipsoidError);
}

TEST(SteeringEllipsoid, SynakExample) {
  const auto rho = testing::synak_state();
  const auto q = steering_quadric(pauli_expansion(rho));
  const auto e = quadric_to_ellipsoid(q);
  EXPECT_LE((e.center - BlochVector(0, 0, 0.5)).norm(), 1e-12);
  EXPECT_LE((e.semi_axes - Eigen::Vector3d(std::sqrt(0.5), std::sqrt(0.5), 0.5)).norm(), 1e-12);
  // Proportional to y1^2 + y2^2 + 2 (y3 - 1/2)^2 - 1/2.
  testing::Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const BlochVector y = testing::random_unit_vector(rng) * testing::uniform(rng);
    const double reference = 0.5 - y(0) * y(0) - y(1) * y(1) - 2 * (y(2) - 0.5) * (y(2) - 0.5);
    EXPECT_NEAR(q.evaluate(y) / q.evaluate(BlochVector(0, 0, 0.5)), reference / 0.5, 1e-10);
  }
  const BlochVector r_a(49.0 / (50.0 * std::sqrt(2.0)), 0.0, 0.57);
  EXPECT_LE((pauli_expansion(rho).bloch_a() - r_a).norm(), 1e-12);
  EXPECT_TRUE(contains(e, r_a).inside);
}

TEST(SteeringEllipsoid, BellDiagonalStandardForm) {
  const auto e = steering_ellipsoid(make_bell_diagonal_state({0.5, 0.2, 0.1}));
  EXPECT_LE(e.center.norm(), 1e-15);
  EXPECT_LE((sorted_desc(e.semi_axes) - Eigen::Vector3d(0.5, 0.2, 0.1)).norm(), 1e-14);
  EXPECT_EQ(e.degeneracy, Degeneracy::full);

  const auto q = quadric_to_ellipsoid(steering_quadric(pauli_expansion(make_bell_diagonal_state({0.5, 0.2, 0.1}))));
  EXPECT_LE((q.semi_axes - Eigen::Vector3d(0.5, 0.2, 0.1)).norm(), 1e-12);
}

TEST(SteeringEllipsoid, XClosedFormMatchesQuadric) {
  // Nonsingular neighbour of the coherent example (u != v).
  const XStateParams p{0.4, 0.1, 0.2, 0.3, 0.1, 0.05, 0.3, -0.4};
  const auto closed = ellipsoid_from_x_state(p);
  const double marginals = (p.a + p.c) * (p.b + p.d);
  EXPECT_NEAR(closed.semi_axes(0), 0.15 / std::sqrt(marginals), 1e-15);
  EXPECT_NEAR(closed.semi_axes(1), 0.05 / std::sqrt(marginals), 1e-15);
  EXPECT_NEAR(closed.semi_axes(2), 0.1 / marginals, 1e-15);
  EXPECT_NEAR(closed.center(2), -0.02 / marginals, 1e-15);
  const auto quad = quadric_to_ellipsoid(steering_quadric(pauli_expansion(make_x_state(p))));
  EXPECT_LE((quad.center - closed.center).norm(), 1e-12);
  EXPECT_LE((quad.semi_axes - sorted_desc(closed.semi_axes)).norm(), 1e-12);
}

TEST(SteeringEllipsoid, XDeterminantFormula) {
  testing::Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto p = testing::random_x_params(rng);
    EXPECT_NEAR(x_state_det_r(p), pauli_expansion(make_x_state(p)).determinant(), 1e-13);
  }
}

TEST(DegenerateEllipsoid, CoherentExampleIsEllipse) {
  const auto e = ellipsoid_from_x_state({0.4, 0.1, 0.2, 0.3, 0.1, 0.1, 0, 0});
  EXPECT_EQ(e.degeneracy, Degeneracy::ellipse);
  EXPECT_NEAR(e.semi_axes(0), 0.2 / std::sqrt(0.24), 1e-15);
  EXPECT_NEAR(e.semi_axes(1), 0.0, 1e-15);
  EXPECT_NEAR(e.semi_axes(2), 0.1 / 0.24, 1e-15);
  EXPECT_NEAR(e.center(2), -0.02 / 0.24, 1e-15);
}

TEST(DegenerateEllipsoid, Segment) {
  const auto e = ellipsoid_from_x_state({0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0, 0});
  EXPECT_EQ(e.degeneracy, Degeneracy::segment);
  EXPECT_NEAR(e.semi_axes(0), 1.0, 1e-15);
  EXPECT_NEAR(e.semi_axes(1), 0.0, 1e-15);
  EXPECT_NEAR(e.semi_axes(2), 0.0, 1e-15);
}

TEST(DegenerateEllipsoid, PointPair) {
  const XStateParams p{0.4, 0.1, 0.2, 0.3, 0, 0, 0, 0};
  const auto e = ellipsoid_from_x_state(p);
  EXPECT_EQ(e.degeneracy, Degeneracy::point_pair);
  const double g = (p.a - p.c) / (p.a + p.c);
  const double h = (p.b - p.d) / (p.b + p.d);
  EXPECT_NEAR(e.center(2) + e.semi_axes(2), std::max(g, h), 1e-15);
  EXPECT_NEAR(e.center(2) - e.semi_axes(2), std::min(g, h), 1e-15);
}

TEST(DegenerateEllipsoid, ProductIsPoint) {
  // (0.6|0><0| + 0.4|1><1|) x (0.7|0><0| + 0.3|1><1|)
  const auto e = ellipsoid_from_x_state({0.42, 0.18, 0.28, 0.12, 0, 0, 0, 0});
  EXPECT_EQ(e.degeneracy, Degeneracy::point);
  EXPECT_NEAR(e.center(2), 0.2, 1e-15);
  EXPECT_EQ(e.semi_axes, Eigen::Vector3d::Zero());
}

TEST(Containment, CenterSurfaceAndOutside) {
  const auto e = steering_ellipsoid(testing::synak_state());
  EXPECT_TRUE(contains(e, e.center).inside);
  EXPECT_NEAR(contains(e, e.center).margin, 1.0, 1e-12);
  EXPECT_NEAR(contains(e, e.surface_point(Eigen::Vector3d(0, 0, 1))).margin, 0.0, 1e-12);
  EXPECT_FALSE(contains(e, BlochVector(0, 0, -0.5)).inside);

  const auto segment = ellipsoid_from_x_state({0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0, 0});
  EXPECT_TRUE(contains(segment, BlochVector(0.5, 0, 0)).inside);
  EXPECT_FALSE(contains(segment, BlochVector(0.5, 0, 0.1)).inside);
}

// ---------------------------------------------------------------------------
// Properties over seeded random states

TEST(SteeringProperties, RankOneOutcomesLieOnSurface) {
  testing::Rng rng(201);
  int checked = 0;
  while (checked < 100) {
    const auto rho = testing::random_state(rng);
    const auto R = pauli_expansion(rho);
    if (std::abs(R.determinant()) <= 1e-6) continue;
    const auto e = steering_ellipsoid(rho);
    const auto ensemble =
        post_measurement_ensemble(R, ProjectiveMeasurement(testing::random_unit_vector(rng)));
    for (const auto& member : ensemble) {
      if (member.zero_probability) continue;
      EXPECT_NEAR(contains(e, member.bloch).margin, 0.0, 1e-9);
    }
    EXPECT_TRUE(contains(e, R.bloch_a()).inside);
    ++checked;
  }
}

TEST(SteeringProperties, QuadricAgreesWithClosedFormOnRandomXStates) {
  testing::Rng rng(202);
  int checked = 0;
  while (checked < 100) {
    const auto p = testing::random_x_params(rng);
    if (std::abs(x_state_det_r(p)) <= 1e-6) continue;
    const auto closed = ellipsoid_from_x_state(p);
    const auto quad = quadric_to_ellipsoid(steering_quadric(pauli_expansion(make_x_state(p))));
    EXPECT_LE((quad.center - closed.center).norm(), 1e-8);
    EXPECT_LE((quad.semi_axes - sorted_desc(closed.semi_axes)).norm(), 1e-8);
    ++checked;
  }
}

}  // namespace
}  // namespace discordlab
