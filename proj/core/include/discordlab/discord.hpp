#pragma once

// Classical correlation and quantum discord of two-qubit states.
//
// The minimal average entropy of the steered qubit is obtained either in
// closed form (X states: min of the quasi-eigen and equi-entropy
// decompositions; Bell-diagonal states: min h(|t_k|)) or by a brute-force
// search over two-outcome rank-1 projective measurements on the measured
// qubit. The search space is projective measurements only; reports carry
// that restriction.

#include "discordlab/qstate.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace discordlab {

/// Two-outcome rank-1 projective measurement M_+- = (1 +- n.sigma)/2.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement() : direction_(0.0, 0.0, 1.0) {}
  /// Normalizes `direction`; throws ParameterError for a zero vector.
  explicit ProjectiveMeasurement(const Eigen::Vector3d& direction);

  static ProjectiveMeasurement from_angles(double polar, double azimuth);

  const Eigen::Vector3d& direction() const noexcept { return direction_; }

 private:
  Eigen::Vector3d direction_;
};

struct EnsembleMember {
  double probability = 0.0;
  BlochVector bloch = BlochVector::Zero();
  /// Set when the outcome probability is <= 1e-14; bloch is then undefined
  /// (left at zero) and the member contributes nothing to entropies.
  bool zero_probability = false;
};

using Ensemble = std::array<EnsembleMember, 2>;

enum class Branch { equi_entropy, quasi_eigen, numeric };
enum class Direction { b_to_a, a_to_b };
enum class Method { automatic, analytic, numeric };

std::string_view to_string(Branch branch);
std::string_view to_string(Direction direction);
std::string_view to_string(Method method);

struct CorrelationReport {
  Direction direction = Direction::b_to_a;
  double mutual_info = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  double min_avg_entropy = 0.0;
  /// Entropy of the qubit that is learned about (A for b_to_a).
  double local_entropy = 0.0;
  ProjectiveMeasurement optimal_measurement;
  Ensemble optimal_ensemble{};
  Branch branch = Branch::numeric;
};

/// p_k y_k = x_k R^T with x_+- = (1/2, +-n/2).
Ensemble post_measurement_ensemble(const CorrelationMatrix& R, const ProjectiveMeasurement& m);

/// sum_k p_k h(|y_k|); zero-probability members contribute 0.
double avg_entropy(std::span<const EnsembleMember> ensemble);

/// |(|y_+| - |y_-|)|, zero when either member has zero probability.
double norm_gap(const Ensemble& ensemble);

/// Average entropy induced by measuring along `direction` (not necessarily
/// unit; interior points of the ball give noisy two-outcome POVMs).
double measurement_entropy(const CorrelationMatrix& R, const Eigen::Vector3d& direction);

struct XMinEntropy {
  double value = 0.0;
  Branch branch = Branch::quasi_eigen;
  double quasi_eigen = 0.0;   // S_GH
  double equi_entropy = 0.0;  // S_EF
};

/// min{S_GH, S_EF}; ties within 1e-12 are labelled quasi_eigen. For a small
/// fraction of X states an oblique measurement does better (by up to ~1e-3);
/// brute_force_min_entropy or cross_checked_report detects those cases.
XMinEntropy x_state_min_entropy(const XStateParams& params);

/// Measurement realizing a closed-form branch: n = (0, 0, 1) for the
/// quasi-eigendecomposition, n = (sin t, cos t, 0) with t = (pi + mu - nu)/2
/// for the equi-entropy decomposition.
ProjectiveMeasurement x_state_optimal_measurement(const XStateParams& params, Branch branch);

/// min{h(|t1|), h(|t2|), h(|t3|)}.
double bell_diagonal_min_entropy(const BellDiagonalParams& params);

/// Polar x azimuth node counts for the hemisphere scan, plus the angular
/// step at which local refinement stops.
struct GridSpec {
  int polar = 181;
  int azimuth = 360;
  double refine_tolerance = 1e-6;

  /// Parses "<polar>x<azimuth>"; throws ParameterError.
  static GridSpec parse(std::string_view text);
  std::string to_string() const;
};

struct OracleResult {
  double min_entropy = 0.0;
  ProjectiveMeasurement measurement;
};

/// Scans n over a (polar, azimuth) grid of the upper hemisphere (n and -n
/// are the same measurement), then refines the best few nodes by a pattern
/// search in the tangent plane until the step is below
/// grid.refine_tolerance. The result is never above any grid node value.
OracleResult brute_force_min_entropy(const CorrelationMatrix& R, const GridSpec& grid = {});

/// I, C = S(rho_learned) - S_min, Q = I - C. Direction a_to_b exchanges the
/// parties. Method automatic uses the closed form when all non-X entries are
/// below 1e-12 and the oracle otherwise; analytic on a non-X state throws
/// UnsupportedStructureError.
CorrelationReport correlation_report(const TwoQubitState& rho,
                                     Direction direction = Direction::b_to_a,
                                     Method method = Method::automatic,
                                     const GridSpec& grid = {});

/// Runs the analytic and numeric routes on an X state and throws
/// ConjectureViolation if their minimal entropies differ by more than
/// `tolerance`. Returns the analytic report.
CorrelationReport cross_checked_report(const TwoQubitState& rho, Direction direction,
                                       const GridSpec& grid = {}, double tolerance = 1e-5);

}  // namespace discordlab
