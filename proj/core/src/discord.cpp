#include "discordlab/discord.hpp"

#include "discordlab/detail/sphere_search.hpp"
#include "discordlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace discordlab {
namespace {

constexpr double kZeroProbability = 1e-14;
constexpr double kTieTolerance = 1e-12;
constexpr int kRefinedCandidates = 3;

// Average entropy of the two-outcome measurement along n, with the Bloch
// vectors of A and B and the correlation block unpacked once.
class MeasurementObjective {
 public:
  explicit MeasurementObjective(const CorrelationMatrix& R)
      : bloch_a_(R.bloch_a()), bloch_b_(R.bloch_b()), correlations_(R.correlations()) {}

  double operator()(const Eigen::Vector3d& n) const {
    const Eigen::Vector3d steered = correlations_ * n;
    const double bias = bloch_b_.dot(n);
    double total = 0.0;
    for (const double sign : {1.0, -1.0}) {
      const double p = 0.5 * (1.0 + sign * bias);
      if (p <= kZeroProbability) continue;
      const double norm = 0.5 * (bloch_a_ + sign * steered).norm() / p;
      total += p * binary_entropy(norm);
    }
    return total;
  }

 private:
  Eigen::Vector3d bloch_a_;
  Eigen::Vector3d bloch_b_;
  Eigen::Matrix3d correlations_;
};

Eigen::Vector3d direction_from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(const Eigen::Vector3d& direction) {
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ParameterError("measurement direction must be a nonzero finite vector");
  }
  direction_ = direction / norm;
}

ProjectiveMeasurement ProjectiveMeasurement::from_angles(double polar, double azimuth) {
  return ProjectiveMeasurement(direction_from_angles(polar, azimuth));
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::equi_entropy: return "equi_entropy";
    case Branch::quasi_eigen: return "quasi_eigen";
    case Branch::numeric: return "numeric";
  }
  return "unknown";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::b_to_a ? "b-to-a" : "a-to-b";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::automatic: return "auto";
    case Method::analytic: return "analytic";
    case Method::numeric: return "numeric";
  }
  return "unknown";
}

Ensemble post_measurement_ensemble(const CorrelationMatrix& R, const ProjectiveMeasurement& m) {
  const Eigen::Vector3d& n = m.direction();
  const Eigen::Vector3d steered = R.correlations() * n;
  const double bias = R.bloch_b().dot(n);
  Ensemble out{};
  for (int k = 0; k < 2; ++k) {
    const double sign = k == 0 ? 1.0 : -1.0;
    const double p = 0.5 * (1.0 + sign * bias);
    if (p <= kZeroProbability) {
      out[k] = EnsembleMember{0.0, BlochVector::Zero(), true};
      continue;
    }
    out[k] = EnsembleMember{p, 0.5 * (R.bloch_a() + sign * steered) / p, false};
  }
  return out;
}

double avg_entropy(std::span<const EnsembleMember> ensemble) {
  double total = 0.0;
  for (const auto& member : ensemble) {
    if (member.zero_probability) continue;
    total += member.probability * binary_entropy(member.bloch.norm());
  }
  return total;
}

double norm_gap(const Ensemble& ensemble) {
  if (ensemble[0].zero_probability || ensemble[1].zero_probability) return 0.0;
  return std::abs(ensemble[0].bloch.norm() - ensemble[1].bloch.norm());
}

double measurement_entropy(const CorrelationMatrix& R, const Eigen::Vector3d& direction) {
  return MeasurementObjective(R)(direction);
}

XMinEntropy x_state_min_entropy(const XStateParams& p) {
  XMinEntropy out;
  // Quasi-eigendecomposition: measuring sigma_z on B yields the apexes G, H.
  const double p_plus = p.a + p.c;
  const double p_minus = p.b + p.d;
  if (p_plus > kZeroProbability) out.quasi_eigen += p_plus * binary_entropy(std::abs(p.a - p.c) / p_plus);
  if (p_minus > kZeroProbability) out.quasi_eigen += p_minus * binary_entropy(std::abs(p.b - p.d) / p_minus);
  // Equi-entropy decomposition: the horizontal chord E F through A.
  const double r3 = p.a + p.b - p.c - p.d;
  const double coherence = 2.0 * (p.u + p.v);
  out.equi_entropy = binary_entropy(std::sqrt(coherence * coherence + r3 * r3));

  if (out.equi_entropy < out.quasi_eigen - kTieTolerance) {
    out.value = out.equi_entropy;
    out.branch = Branch::equi_entropy;
  } else {
    out.value = out.quasi_eigen;
    out.branch = Branch::quasi_eigen;
  }
  return out;
}

ProjectiveMeasurement x_state_optimal_measurement(const XStateParams& p, Branch branch) {
  if (branch == Branch::equi_entropy) {
    const double theta = 0.5 * (std::numbers::pi + p.mu - p.nu);
    return ProjectiveMeasurement(Eigen::Vector3d(std::sin(theta), std::cos(theta), 0.0));
  }
  return ProjectiveMeasurement(Eigen::Vector3d(0.0, 0.0, 1.0));
}

double bell_diagonal_min_entropy(const BellDiagonalParams& t) {
  return std::min({binary_entropy(std::abs(t.t1)), binary_entropy(std::abs(t.t2)),
                   binary_entropy(std::abs(t.t3))});
}

GridSpec GridSpec::parse(std::string_view text) {
  const auto sep = text.find('x');
  if (sep == std::string_view::npos) {
    throw ParameterError("grid must look like <polar>x<azimuth>, got '" + std::string(text) + "'");
  }
  GridSpec spec;
  const auto parse_int = [&](std::string_view part, int& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size() || out < 1) {
      throw ParameterError("invalid grid dimension '" + std::string(part) + "'");
    }
  };
  parse_int(text.substr(0, sep), spec.polar);
  parse_int(text.substr(sep + 1), spec.azimuth);
  return spec;
}

std::string GridSpec::to_string() const {
  return std::to_string(polar) + "x" + std::to_string(azimuth);
}

OracleResult brute_force_min_entropy(const CorrelationMatrix& R, const GridSpec& grid) {
  if (grid.polar < 1 || grid.azimuth < 1 || !(grid.refine_tolerance > 0.0)) {
    throw ParameterError("grid dimensions and refinement tolerance must be positive");
  }
  const MeasurementObjective f(R);
  const auto best = detail::minimize_on_hemisphere(f, grid.polar, grid.azimuth,
                                                   grid.refine_tolerance, kRefinedCandidates);
  return OracleResult{best.value, ProjectiveMeasurement(best.direction)};
}

CorrelationReport correlation_report(const TwoQubitState& rho, Direction direction, Method method,
                                     const GridSpec& grid) {
  const TwoQubitState oriented = direction == Direction::b_to_a ? rho : swap_parties(rho);
  const CorrelationMatrix R = pauli_expansion(oriented);

  CorrelationReport report;
  report.direction = direction;
  report.mutual_info = mutual_information(rho);
  report.local_entropy = von_neumann_entropy(partial_trace(oriented, Party::A));

  const auto x_params = method == Method::numeric ? std::nullopt : as_x_state(oriented);
  if (method == Method::analytic && !x_params) {
    throw UnsupportedStructureError("analytic method requires an X state (non-X entries > 1e-12)");
  }

  if (x_params) {
    const XMinEntropy closed = x_state_min_entropy(*x_params);
    report.min_avg_entropy = closed.value;
    report.branch = closed.branch;
    report.optimal_measurement = x_state_optimal_measurement(*x_params, closed.branch);
  } else {
    const OracleResult oracle = brute_force_min_entropy(R, grid);
    report.min_avg_entropy = oracle.min_entropy;
    report.branch = Branch::numeric;
    report.optimal_measurement = oracle.measurement;
  }
  report.optimal_ensemble = post_measurement_ensemble(R, report.optimal_measurement);
  report.classical = report.local_entropy - report.min_avg_entropy;
  report.discord = report.mutual_info - report.classical;
  return report;
}

CorrelationReport cross_checked_report(const TwoQubitState& rho, Direction direction,
                                       const GridSpec& grid, double tolerance) {
  const CorrelationReport analytic = correlation_report(rho, direction, Method::analytic, grid);
  const CorrelationReport numeric = correlation_report(rho, direction, Method::numeric, grid);
  const double difference = std::abs(analytic.min_avg_entropy - numeric.min_avg_entropy);
  if (difference > tolerance) {
    throw ConjectureViolation("analytic and numeric minimal entropies differ by " +
                              std::to_string(difference));
  }
  return analytic;
}

}  // namespace discordlab
