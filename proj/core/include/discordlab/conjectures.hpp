#pragma once

// Two state families whose optimal measurements are only conjectured:
// mixtures of two pure product states and a family with a constrained
// correlation matrix. Both are probed numerically against the brute-force
// oracle.

#include "discordlab/discord.hpp"
#include "discordlab/qstate.hpp"
#include "discordlab/steering.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace discordlab {

// ---------------------------------------------------------------------------
// Mixture of two product states

/// rho = lambda |00><00| + (1 - lambda) |psi phi><psi phi| with
/// |psi> = cos(alpha)|0> + sin(alpha)|1>, |phi> = cos(beta)|0> + sin(beta)|1>.
struct MixtureParams {
  double lambda = 0.5;
  double alpha = 0.0;
  double beta = 0.0;
};

/// lambda in [0, 1], alpha and beta in [0, pi/2]; throws ParameterError.
void validate(const MixtureParams& params);
TwoQubitState make_mixture_state(const MixtureParams& params);
BlochVector mixture_bloch_a(const MixtureParams& params);

/// Closed-form post-measurement ensemble of qubit A. y_2 = 0 for every
/// measurement and n_2 does not enter.
Ensemble mixture_ensemble(const MixtureParams& params, const ProjectiveMeasurement& m);

/// y1 sin(alpha) + y3 cos(alpha) - cos(alpha): zero on the line through
/// |0> and |psi> that carries every induced ensemble.
double line_residual(const MixtureParams& params, const BlochVector& y);

struct GapSample {
  MixtureParams params;
  ProjectiveMeasurement optimal_measurement;
  /// ||y_+| - |y_-|| at the numeric optimum.
  double gap = 0.0;
  double min_entropy = 0.0;
};

struct GapStatistics {
  double max_gap = 0.0;
  double fraction_within_1e6 = 0.0;
  double fraction_within_1e5 = 0.0;
  /// 99.9th percentile of the gap (nearest rank).
  double percentile_999 = 0.0;
};

struct ConjectureRun {
  std::uint64_t seed = 0;
  std::vector<GapSample> samples;
  GapStatistics stats;
};

/// lambda ~ U[0, 1], alpha, beta ~ U[0, pi/2]. Sample i draws from its own
/// generator seeded with (seed, i), so the run does not depend on the
/// thread count. Throws ParameterError for samples < 1.
ConjectureRun test_equi_entropy_conjecture(std::size_t samples, std::uint64_t seed,
                                           const GridSpec& grid = {}, int threads = 1);

GapStatistics summarize_gaps(const std::vector<GapSample>& samples);

/// A single mixture sample, exposed for reuse by sweeps and tests.
GapSample evaluate_gap(const MixtureParams& params, const GridSpec& grid = {});

struct ConstrainedReport {
  /// Branch is equi_entropy; entropies follow the constrained optimum.
  CorrelationReport report;
  /// Largest |y_+| with |y_+| = |y_-|.
  double max_equal_norm = 0.0;
  double oracle_min_entropy = 0.0;
  /// constrained minimal entropy - oracle minimal entropy.
  double discrepancy = 0.0;
};

/// Largest |y_+| over measurements n = (sin w, 0, cos w) with |y_+| = |y_-|,
/// scanned on `nodes` points of w in [0, pi] and bisected at sign changes.
/// C = S(rho_A) - h(|y|*). Cross-checks against the oracle and throws
/// ConjectureViolation when the two minimal entropies differ by more than
/// 1e-4.
ConstrainedReport mixture_correlations_via_conjecture(const MixtureParams& params,
                                                      const GridSpec& grid = {},
                                                      int nodes = 2048);

/// Plain oracle-based report for the mixture family.
CorrelationReport mixture_correlations(const MixtureParams& params, const GridSpec& grid = {});

// ---------------------------------------------------------------------------
// Constrained correlation-matrix family
//
//       | 1    s1   0    s3  |
//   R = | r1   t11  0    t13 |     t11 = (r1 - s3 t13) / s1
//       | 0    0    t22  0   |     t33 = (r1 r3 s1 - r1 t31 + s3 t13 t31) / (s1 t13)
//       | r3   t31  0    t33 |

struct GeneralRParams {
  double r1 = 0.0, r3 = 0.0;
  double s1 = 0.0, s3 = 0.0;
  double t13 = 0.0, t22 = 0.0, t31 = 0.0;

  double t11() const;
  double t33() const;
  CorrelationMatrix matrix() const;
};

/// s1 != 0, t13 != 0, |s| < 1 and |det R| > kSingularityThreshold; throws
/// ParameterError. Positivity is checked by make_general_r_state.
void validate(const GeneralRParams& params);

/// Throws ValidationError when the reconstructed matrix is not PSD.
TwoQubitState make_general_r_state(const GeneralRParams& params);

/// Axis-aligned ellipsoid centred at (0, 0, Y3) with semi-axes
/// (l1, l2, l3) along (y1, y2, y3).
SteeringEllipsoid general_r_ellipsoid(const GeneralRParams& params);

/// Parameters uniform in [-1, 1], rejected until validate and the
/// positivity check pass. Throws Error after `max_attempts` rejections.
GeneralRParams sample_general_r(std::uint64_t seed, std::uint64_t index,
                                std::size_t max_attempts = 1'000'000);

// ---------------------------------------------------------------------------
// Geometric routes

struct Chord {
  BlochVector first;   // end point in the +direction
  BlochVector second;  // end point in the -direction
  double first_weight = 0.0;
};

/// Chord of a full ellipsoid through an interior point. Empty when the
/// point is outside or the ellipsoid is degenerate.
std::optional<Chord> chord_through(const SteeringEllipsoid& ellipsoid, const BlochVector& point,
                                   const Eigen::Vector3d& direction);

/// Minimum over chords through `point` of the two-point decomposition
/// entropy. Throws NotAnEllipsoidError for degenerate ellipsoids and
/// ParameterError for exterior points.
double ellipsoid_min_entropy(const SteeringEllipsoid& ellipsoid, const BlochVector& point,
                             const GridSpec& grid = {});

struct EqualNormOptimum {
  double norm = 0.0;
  ProjectiveMeasurement measurement;
  /// h(norm).
  double entropy = 1.0;
};

/// Largest |y_+| over all measurements with |y_+| = |y_-|: meridian scans
/// over the half sphere followed by a local refinement in azimuth.
EqualNormOptimum equal_norm_optimum(const CorrelationMatrix& R, const GridSpec& grid = {});

enum class OptimalLineClass { I, II };
std::string_view to_string(OptimalLineClass cls);

struct ClassifyOptions {
  GridSpec grid{181, 360, 1e-9};
  double chord_threshold = 1e-6;
  double gap_threshold = 1e-6;
  /// Decide X states from the closed-form branch instead of the oracle.
  bool analytic_x = true;
};

struct LineClassification {
  OptimalLineClass cls = OptimalLineClass::II;
  double gap = 0.0;
  /// |y_3 component| of the unit chord through the optimal pair.
  double chord_y3 = 0.0;
  double min_entropy_a = 0.0;
  /// Entropy of the apex-pair decomposition of (0, 0, r3); NaN when the
  /// state is Class I or the projection is outside the ellipsoid.
  double min_entropy_a_tilde = 0.0;
  Ensemble optimal_ensemble{};
};

LineClassification classify_optimal_line(const CorrelationMatrix& R,
                                         const ClassifyOptions& options = {});
LineClassification classify_optimal_line(const GeneralRParams& params,
                                         const ClassifyOptions& options = {});

}  // namespace discordlab
