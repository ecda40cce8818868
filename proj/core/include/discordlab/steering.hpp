#pragma once

// Quantum steering ellipsoid: the set of Bloch vectors of qubit A reachable
// as post-measurement states when qubit B is measured.

#include "discordlab/qstate.hpp"

#include <string_view>

namespace discordlab {

/// |det R| at or below this value is treated as singular.
inline constexpr double kSingularityThreshold = 1e-10;

enum class Degeneracy { full, ellipse, segment, point_pair, point };

std::string_view to_string(Degeneracy degeneracy);

struct SteeringEllipsoid {
  BlochVector center = BlochVector::Zero();
  /// Semi-axis lengths. Closed-form X-state ellipsoids keep the order
  /// (y'_1, y'_2, y'_3) with y'_3 the y_3 axis, so axis 0 >= axis 1;
  /// quadric-derived ellipsoids are sorted in descending order.
  Eigen::Vector3d semi_axes = Eigen::Vector3d::Zero();
  /// Column k is the principal direction of semi_axes[k].
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  /// Rotation angle phi about y_3: y'_1 = y_1 cos phi - y_2 sin phi.
  double orientation = 0.0;
  Degeneracy degeneracy = Degeneracy::full;

  /// Coordinates in the principal frame centred on the ellipsoid.
  Eigen::Vector3d to_principal(const BlochVector& y) const {
    return rotation.transpose() * (y - center);
  }
  /// Surface point along a unit direction expressed in the principal frame.
  BlochVector surface_point(const Eigen::Vector3d& unit) const {
    return center + rotation * semi_axes.cwiseProduct(unit);
  }
};

/// Q = R^{-T} eta R^{-1}, eta = diag(1, -1, -1, -1). Reachable extended
/// vectors y = (1, y_vec) satisfy y Q y^T >= 0.
struct QuadricForm {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();

  double evaluate(const BlochVector& y) const {
    Eigen::Vector4d ext;
    ext << 1.0, y;
    return ext.dot(matrix * ext);
  }
};

/// Throws SingularCorrelationError when |det R| <= kSingularityThreshold.
QuadricForm steering_quadric(const CorrelationMatrix& R);

/// Centre, semi-axes (descending) and principal directions of a quadric.
/// Throws NotAnEllipsoidError when the spatial block is not negative
/// definite or the region is empty.
SteeringEllipsoid quadric_to_ellipsoid(const QuadricForm& quadric);

/// det R = 16 (bc - ad)(u^2 - v^2).
double x_state_det_r(const XStateParams& params);

/// Closed-form ellipsoid of an X state. Singular parameter sets are routed
/// to classify_degenerate.
SteeringEllipsoid ellipsoid_from_x_state(const XStateParams& params);

/// Degenerate steering sets of X states with det R = 0: planar ellipses,
/// segments, a pair of points, or a single point (product states).
SteeringEllipsoid classify_degenerate(const XStateParams& params);

/// Closed form for X states, quadric construction otherwise.
SteeringEllipsoid steering_ellipsoid(const TwoQubitState& rho);

struct Containment {
  bool inside = false;
  /// 1 - sum (y'_k / s_k)^2: positive inside, zero on the surface, negative
  /// outside. Collapsed axes contribute -|y'_k| when y'_k is off the plane.
  double margin = 0.0;
};

/// Membership in the ellipsoid (the convex hull for degenerate sets).
Containment contains(const SteeringEllipsoid& ellipsoid, const BlochVector& y);

}  // namespace discordlab
