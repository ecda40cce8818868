#include "discordlab/steering.hpp"

#include "discordlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace discordlab {
namespace {

constexpr double kZeroFactor = 1e-10;
constexpr double kTieTolerance = 1e-9;
constexpr double kOffPlaneTolerance = 1e-9;

Eigen::Matrix3d rotation_about_y3(double phi) {
  // Columns are the directions of the primed axes y'_1, y'_2, y'_3.
  const double c = std::cos(phi), s = std::sin(phi);
  Eigen::Matrix3d rot;
  rot << c, s, 0.0,
        -s, c, 0.0,
         0.0, 0.0, 1.0;
  return rot;
}

// Within each group of tied eigenvalues, replace the solver's arbitrary basis
// by the projections of the standard axes, so ties resolve to the identity.
void resolve_ties(const Eigen::Vector3d& values, Eigen::Matrix3d& vectors) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  int begin = 0;
  while (begin < 3) {
    int end = begin + 1;
    while (end < 3 && std::abs(values[end] - values[begin]) <= kTieTolerance * scale) ++end;
    const int size = end - begin;
    if (size > 1) {
      const Eigen::MatrixXd basis = vectors.middleCols(begin, size);
      const Eigen::Matrix3d projector = basis * basis.transpose();
      int filled = 0;
      for (int axis = 0; axis < 3 && filled < size; ++axis) {
        Eigen::Vector3d candidate = projector.col(axis);
        for (int k = 0; k < filled; ++k) {
          const Eigen::Vector3d prev = vectors.col(begin + k);
          candidate -= prev.dot(candidate) * prev;
        }
        if (candidate.norm() > 0.5) vectors.col(begin + filled++) = candidate.normalized();
      }
    }
    begin = end;
  }
}

double in_plane_orientation(const SteeringEllipsoid& e) {
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d dir = e.rotation.col(k);
    if (std::abs(dir.z()) <= 1e-6) {
      double phi = std::atan2(-dir.y(), dir.x());
      if (phi < 0.0) phi += std::numbers::pi;
      if (phi >= std::numbers::pi) phi -= std::numbers::pi;
      return phi;
    }
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(Degeneracy degeneracy) {
  switch (degeneracy) {
    case Degeneracy::full: return "full";
    case Degeneracy::ellipse: return "ellipse";
    case Degeneracy::segment: return "segment";
    case Degeneracy::point_pair: return "point_pair";
    case Degeneracy::point: return "point";
  }
  return "unknown";
}

QuadricForm steering_quadric(const CorrelationMatrix& R) {
  const double det = R.determinant();
  if (std::abs(det) <= kSingularityThreshold) {
    throw SingularCorrelationError(
        "correlation matrix is singular (|det R| <= 1e-10); use the degenerate classification");
  }
  const Eigen::Matrix4d inv = R.entries().inverse();
  const Eigen::Vector4d eta(1.0, -1.0, -1.0, -1.0);
  const Eigen::Matrix4d q = inv.transpose() * eta.asDiagonal() * inv;
  return QuadricForm{0.5 * (q + q.transpose())};
}

SteeringEllipsoid quadric_to_ellipsoid(const QuadricForm& quadric) {
  const Eigen::Matrix4d& q = quadric.matrix;
  const Eigen::Matrix3d shape = -q.block<3, 3>(1, 1);
  const Eigen::Vector3d linear = q.block<3, 1>(1, 0);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(shape);
  const Eigen::Vector3d values = solver.eigenvalues();  // ascending
  if (values.minCoeff() <= 1e-14 * std::max(1.0, values.cwiseAbs().maxCoeff())) {
    throw NotAnEllipsoidError("quadric spatial block is not negative definite");
  }
  const Eigen::Vector3d center = shape.ldlt().solve(linear);
  const double level = q(0, 0) + linear.dot(center);
  if (level <= 0.0) throw NotAnEllipsoidError("quadric region is empty");

  Eigen::Matrix3d vectors = solver.eigenvectors();
  resolve_ties(values, vectors);

  SteeringEllipsoid e;
  e.center = center;
  for (int k = 0; k < 3; ++k) {
    e.semi_axes[k] = std::sqrt(level / values[k]);
    Eigen::Index largest = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&largest);
    if (vectors(largest, k) < 0.0) vectors.col(k) *= -1.0;
  }
  vectors.col(2) = vectors.col(0).cross(vectors.col(1));
  e.rotation = vectors;
  e.orientation = in_plane_orientation(e);
  e.degeneracy = Degeneracy::full;
  return e;
}

double x_state_det_r(const XStateParams& p) {
  return 16.0 * (p.b * p.c - p.a * p.d) * (p.u * p.u - p.v * p.v);
}

SteeringEllipsoid ellipsoid_from_x_state(const XStateParams& p) {
  const double marginals = (p.a + p.c) * (p.b + p.d);
  if (marginals <= kZeroFactor || std::abs(x_state_det_r(p)) <= kSingularityThreshold) {
    return classify_degenerate(p);
  }
  const double root = std::sqrt(marginals);
  SteeringEllipsoid e;
  e.semi_axes = {(p.u + p.v) / root, std::abs(p.u - p.v) / root,
                 std::abs(p.a * p.d - p.b * p.c) / marginals};
  e.center = {0.0, 0.0, (p.a * p.b - p.c * p.d) / marginals};
  e.orientation = 0.5 * (p.mu + p.nu);
  e.rotation = rotation_about_y3(e.orientation);
  e.degeneracy = Degeneracy::full;
  return e;
}

SteeringEllipsoid classify_degenerate(const XStateParams& p) {
  const BlochVector bloch_a{0.0, 0.0, p.a + p.b - p.c - p.d};
  const double pa = p.a + p.c;  // probability of B in |0>
  const double pb = p.b + p.d;

  SteeringEllipsoid e;
  e.orientation = 0.5 * (p.mu + p.nu);
  e.rotation = rotation_about_y3(e.orientation);

  // B in a pure state: nothing to steer.
  if (pa * pb <= kZeroFactor) {
    e.center = bloch_a;
    e.rotation = Eigen::Matrix3d::Identity();
    e.orientation = 0.0;
    e.degeneracy = Degeneracy::point;
    return e;
  }

  const double f_ad = std::abs(p.a * p.d - p.b * p.c);
  const double f_uv = std::abs(p.u * p.u - p.v * p.v);
  bool ad_zero = f_ad <= kZeroFactor;
  bool uv_equal = f_uv <= kZeroFactor;
  if (!ad_zero && !uv_equal) {
    // det R below threshold without either factor being negligible alone.
    (f_ad <= f_uv ? ad_zero : uv_equal) = true;
  }
  const bool coherent = p.u + p.v > kZeroFactor;

  const double marginals = pa * pb;
  const double root = std::sqrt(marginals);
  const double l1 = (p.u + p.v) / root;
  const double l2 = std::abs(p.u - p.v) / root;
  const double l3 = f_ad / marginals;
  const double y3 = (p.a * p.b - p.c * p.d) / marginals;

  if (!coherent) {
    e.rotation = Eigen::Matrix3d::Identity();
    e.orientation = 0.0;
    if (ad_zero) {
      e.center = bloch_a;
      e.degeneracy = Degeneracy::point;
      return e;
    }
    // G and H: the quasi-eigendecomposition endpoints.
    const double g = (p.a - p.c) / pa;
    const double h = (p.b - p.d) / pb;
    e.center = {0.0, 0.0, 0.5 * (g + h)};
    e.semi_axes = {0.0, 0.0, 0.5 * std::abs(g - h)};
    e.degeneracy = Degeneracy::point_pair;
    return e;
  }

  e.center = {0.0, 0.0, y3};
  if (ad_zero && !uv_equal) {
    e.semi_axes = {l1, l2, 0.0};
    e.degeneracy = Degeneracy::ellipse;
  } else if (ad_zero && uv_equal) {
    e.semi_axes = {l1, 0.0, 0.0};
    e.degeneracy = Degeneracy::segment;
  } else {
    e.semi_axes = {l1, 0.0, l3};
    e.degeneracy = Degeneracy::ellipse;
  }
  return e;
}

SteeringEllipsoid steering_ellipsoid(const TwoQubitState& rho) {
  if (const auto params = as_x_state(rho)) return ellipsoid_from_x_state(*params);
  return quadric_to_ellipsoid(steering_quadric(pauli_expansion(rho)));
}

Containment contains(const SteeringEllipsoid& e, const BlochVector& y) {
  const Eigen::Vector3d local = e.to_principal(y);
  double margin = 1.0;
  double off_plane = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (e.semi_axes[k] > 1e-12) {
      const double ratio = local[k] / e.semi_axes[k];
      margin -= ratio * ratio;
    } else {
      off_plane = std::max(off_plane, std::abs(local[k]));
    }
  }
  if (off_plane > kOffPlaneTolerance) margin = std::min(margin, -off_plane);
  return Containment{margin >= -1e-9, margin};
}

}  // namespace discordlab
