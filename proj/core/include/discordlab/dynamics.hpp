#pragma once

// Local decoherence channels acting identically on both qubits, correlation
// trajectories, and the critical time of the sudden change from the
// equi-entropy to the quasi-eigen regime under phase damping.

#include "discordlab/discord.hpp"
#include "discordlab/qstate.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace discordlab {

/// Kraus pair K1 = diag(gamma, 1), K2 = diag(sqrt(1 - gamma^2), 0).
class PhaseDampingChannel {
 public:
  /// Throws ParameterError unless gamma is in [0, 1].
  explicit PhaseDampingChannel(double gamma);
  /// gamma = exp(-rate * t).
  static PhaseDampingChannel at_time(double rate, double t);

  double gamma() const noexcept { return gamma_; }
  std::array<Eigen::Matrix2cd, 2> kraus() const;

 private:
  double gamma_;
};

/// Applies the channel to both qubits, or to qubit A only when
/// `both_parties` is false.
TwoQubitState apply_channel(const TwoQubitState& rho, const PhaseDampingChannel& channel,
                            bool both_parties = true);

enum class ChannelKind { phase_damping, amplitude_damping, pauli };

/// A channel family by name. Strength semantics:
///   phase_damping      strength = gamma (1 is the identity)
///   amplitude_damping  strength = decay probability (1 sends every qubit to |0>)
///   pauli              strength scales the probabilities (px, py, pz)
struct NamedChannel {
  ChannelKind kind = ChannelKind::phase_damping;
  double px = 0.0, py = 0.0, pz = 0.0;

  /// Accepts "phase_damping", "amplitude_damping" and "pauli(px,py,pz)".
  /// Throws ParameterError for anything else.
  static NamedChannel parse(std::string_view text);
  std::string to_string() const;

  /// Strength after time t at the given rate.
  double strength_at(double rate, double t) const;
};

TwoQubitState apply_named_channel(const TwoQubitState& rho, const NamedChannel& channel,
                                  double strength);

struct TrajectoryOptions {
  NamedChannel channel{};
  /// Analytic steps only; non-X states raise UnsupportedStructureError.
  bool fast = false;
  GridSpec grid{};
  int threads = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> gammas;  // exp(-rate t)
  std::vector<CorrelationReport> reports;
  /// (l1, l2, l3) of the steering ellipsoid; NaN where it is not available.
  std::vector<Eigen::Vector3d> axes;
  /// Only reported for phase damping of X states.
  std::optional<double> critical_time;
};

/// Evaluates the correlation report on `steps` equally spaced times in
/// [0, t_max]. Throws ParameterError for steps < 2 or negative rate/t_max.
Trajectory evolve_trajectory(const TwoQubitState& rho0, double rate, double t_max, int steps,
                             const TrajectoryOptions& options = {});

/// Time at which S_EF(gamma(t)) reaches S_GH, found by bisection. Empty when
/// the state starts in the quasi-eigen regime or never leaves the
/// equi-entropy regime. Throws ParameterError for rate <= 0.
std::optional<double> critical_time(const XStateParams& params, double rate);

/// ln(max(|t1|, |t2|) / |t3|) / (2 rate) when max(|t1|, |t2|) > |t3| > 0.
std::optional<double> critical_time(const BellDiagonalParams& params, double rate);

}  // namespace discordlab
