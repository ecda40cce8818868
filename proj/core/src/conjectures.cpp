#include "discordlab/conjectures.hpp"

#include "discordlab/detail/sphere_search.hpp"
#include "discordlab/errors.hpp"
#include "discordlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace discordlab {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kZeroProbability = 1e-14;
constexpr double kRangeSlack = 1e-12;
constexpr double kRootTolerance = 1e-13;
constexpr double kViolationTolerance = 1e-4;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::mt19937_64 sample_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Eigen::Vector3d meridian_point(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

// Equal-norm sample along a measurement direction: g = |y+| - |y-| and
// |y+|, or nothing when an outcome has zero probability.
struct EqualNormProbe {
  double g = 0.0;
  double norm = 0.0;
};

template <class Eval>
std::optional<EqualNormProbe> probe(const Eval& eval, const Eigen::Vector3d& n) {
  const Ensemble e = eval(n);
  if (e[0].zero_probability || e[1].zero_probability) return std::nullopt;
  const double plus = e[0].bloch.norm();
  return EqualNormProbe{plus - e[1].bloch.norm(), plus};
}

struct MeridianBest {
  double norm = -1.0;
  double polar = 0.0;
};

// Roots of g along the meridian at `azimuth` for polar angles in [lo, hi];
// keeps the largest |y+| among them.
template <class Eval>
MeridianBest scan_meridian(const Eval& eval, double azimuth, double lo, double hi, int nodes) {
  MeridianBest best;
  const auto consider = [&](double polar, double norm) {
    if (norm > best.norm) best = {norm, polar};
  };
  std::optional<EqualNormProbe> prev;
  double prev_polar = lo;
  for (int k = 0; k < nodes; ++k) {
    const double polar = lo + (hi - lo) * k / (nodes - 1);
    const auto cur = probe(eval, meridian_point(polar, azimuth));
    if (cur && std::abs(cur->g) <= kRootTolerance) consider(polar, cur->norm);
    if (cur && prev && (cur->g > 0.0) != (prev->g > 0.0) && std::abs(prev->g) > kRootTolerance &&
        std::abs(cur->g) > kRootTolerance) {
      double a = prev_polar, b = polar;
      double ga = prev->g;
      std::optional<EqualNormProbe> mid;
      for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        mid = probe(eval, meridian_point(m, azimuth));
        if (!mid) break;
        if ((mid->g > 0.0) == (ga > 0.0)) {
          a = m;
          ga = mid->g;
        } else {
          b = m;
        }
      }
      if (mid) consider(0.5 * (a + b), mid->norm);
    }
    prev = cur;
    prev_polar = polar;
  }
  return best;
}

double chord_entropy(const Chord& chord) {
  return chord.first_weight * binary_entropy(chord.first.norm()) +
         (1.0 - chord.first_weight) * binary_entropy(chord.second.norm());
}

bool is_x_structured(const CorrelationMatrix& R, double tolerance) {
  constexpr std::array<std::pair<int, int>, 8> kOffX{
      {{0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 3}, {2, 3}, {3, 1}, {3, 2}}};
  return std::all_of(kOffX.begin(), kOffX.end(),
                     [&](const auto& ij) { return std::abs(R(ij.first, ij.second)) <= tolerance; });
}

double apex_entropy(const SteeringEllipsoid& ellipsoid, double r3) {
  const auto chord = chord_through(ellipsoid, BlochVector(0.0, 0.0, r3), Eigen::Vector3d::UnitZ());
  return chord ? chord_entropy(*chord) : kNaN;
}

// Average entropy of the mixture family on the measurement circle
// n = (sin t, 0, cos t), which contains every optimum since n_2 does not
// enter the ensemble. The derivative is formed from the outcome weights
// directly, so it stays accurate when one outcome is nearly impossible.
class MixtureCircle {
 public:
  explicit MixtureCircle(const MixtureParams& p)
      : params_(p),
        psi_(std::sin(2.0 * p.alpha), 0.0, std::cos(2.0 * p.alpha)),
        phi_(std::sin(2.0 * p.beta), 0.0, std::cos(2.0 * p.beta)) {}

  static Eigen::Vector3d direction(double theta) {
    return {std::sin(theta), 0.0, std::cos(theta)};
  }

  double value(double theta) const {
    return avg_entropy(mixture_ensemble(params_, ProjectiveMeasurement(direction(theta))));
  }

  double derivative(double theta) const {
    const Eigen::Vector3d n = direction(theta);
    const Eigen::Vector3d dn(std::cos(theta), 0.0, -std::sin(theta));
    const Eigen::Vector3d zero = Eigen::Vector3d::UnitZ();
    double total = 0.0;
    for (const double sign : {1.0, -1.0}) {
      const double w0 = 0.25 * params_.lambda * (n + sign * zero).squaredNorm();
      const double w1 = 0.25 * (1.0 - params_.lambda) * (n + sign * phi_).squaredNorm();
      const double p = w0 + w1;
      if (p <= kZeroProbability) continue;
      const double dw0 = 0.5 * params_.lambda * sign * zero.dot(dn);
      const double dw1 = 0.5 * (1.0 - params_.lambda) * sign * phi_.dot(dn);
      const Eigen::Vector3d v = w0 * zero + w1 * psi_;
      const Eigen::Vector3d dv = dw0 * zero + dw1 * psi_;
      const double v_norm = v.norm();
      const double x = std::min(v_norm / p, 1.0 - 1e-15);
      const double dh = -std::atanh(x) / std::numbers::ln2;
      total += (binary_entropy(x) - x * dh) * (dw0 + dw1);
      if (v_norm > 0.0) total += dh * v.dot(dv) / v_norm;
    }
    return total;
  }

  // Bisects the stationary point bracketing theta0; returns theta0 when no
  // bracket is found or the value would rise above `bound`.
  double polish(double theta0, double bound) const {
    double lo = theta0, hi = theta0;
    double step = 1e-7;
    double d_lo = derivative(lo), d_hi = d_lo;
    while (!(d_lo < 0.0 && d_hi > 0.0) && step < 1e-2) {
      if (!(d_lo < 0.0)) d_lo = derivative(lo = theta0 - step);
      if (!(d_hi > 0.0)) d_hi = derivative(hi = theta0 + step);
      step *= 2.0;
    }
    if (!(d_lo < 0.0 && d_hi > 0.0)) return theta0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (derivative(mid) < 0.0 ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    return value(theta) <= bound + 1e-13 ? theta : theta0;
  }

 private:
  MixtureParams params_;
  Eigen::Vector3d psi_;
  Eigen::Vector3d phi_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Mixture family

void validate(const MixtureParams& p) {
  const auto in_range = [](double x, double hi) {
    return x >= -kRangeSlack && x <= hi + kRangeSlack;
  };
  if (!in_range(p.lambda, 1.0) || !in_range(p.alpha, kHalfPi) || !in_range(p.beta, kHalfPi)) {
    std::ostringstream msg;
    msg << "mixture parameters out of range: lambda=" << p.lambda << " alpha=" << p.alpha
        << " beta=" << p.beta << " (need lambda in [0,1], angles in [0,pi/2])";
    throw ParameterError(msg.str());
  }
}

TwoQubitState make_mixture_state(const MixtureParams& p) {
  validate(p);
  Eigen::Vector4cd zero_zero = Eigen::Vector4cd::Zero();
  zero_zero(0) = 1.0;
  const Eigen::Vector2cd psi(std::cos(p.alpha), std::sin(p.alpha));
  const Eigen::Vector2cd phi(std::cos(p.beta), std::sin(p.beta));
  Eigen::Vector4cd product;
  product << psi(0) * phi(0), psi(0) * phi(1), psi(1) * phi(0), psi(1) * phi(1);
  const Eigen::Matrix4cd rho = p.lambda * zero_zero * zero_zero.adjoint() +
                               (1.0 - p.lambda) * product * product.adjoint();
  return TwoQubitState::from_matrix(rho);
}

BlochVector mixture_bloch_a(const MixtureParams& p) {
  return {(1.0 - p.lambda) * std::sin(2.0 * p.alpha), 0.0,
          p.lambda + (1.0 - p.lambda) * std::cos(2.0 * p.alpha)};
}

Ensemble mixture_ensemble(const MixtureParams& p, const ProjectiveMeasurement& m) {
  const Eigen::Vector3d& n = m.direction();
  const BlochVector zero(0.0, 0.0, 1.0);
  const BlochVector psi(std::sin(2.0 * p.alpha), 0.0, std::cos(2.0 * p.alpha));
  const BlochVector phi(std::sin(2.0 * p.beta), 0.0, std::cos(2.0 * p.beta));
  Ensemble out{};
  for (int k = 0; k < 2; ++k) {
    const double sign = k == 0 ? 1.0 : -1.0;
    // (1 +- n.s)/2 written as |n +- s|^2 / 4 to keep small outcome weights
    // accurate near the poles.
    const double w0 = 0.25 * p.lambda * (n + sign * zero).squaredNorm();
    const double w1 = 0.25 * (1.0 - p.lambda) * (n + sign * phi).squaredNorm();
    const double prob = w0 + w1;
    if (prob <= kZeroProbability) {
      out[k] = EnsembleMember{0.0, BlochVector::Zero(), true};
    } else {
      out[k] = EnsembleMember{prob, (w0 * zero + w1 * psi) / prob, false};
    }
  }
  return out;
}

double line_residual(const MixtureParams& p, const BlochVector& y) {
  return y.x() * std::sin(p.alpha) + y.z() * std::cos(p.alpha) - std::cos(p.alpha);
}

GapSample evaluate_gap(const MixtureParams& params, const GridSpec& grid) {
  const CorrelationMatrix R = pauli_expansion(make_mixture_state(params));
  const OracleResult oracle = brute_force_min_entropy(R, grid);
  const Eigen::Vector3d& n = oracle.measurement.direction();
  const MixtureCircle circle(params);
  const double theta = circle.polish(std::atan2(n.x(), n.z()), oracle.min_entropy);

  GapSample sample;
  sample.params = params;
  sample.optimal_measurement = ProjectiveMeasurement(circle.direction(theta));
  sample.gap = norm_gap(mixture_ensemble(params, sample.optimal_measurement));
  sample.min_entropy = std::min(oracle.min_entropy, circle.value(theta));
  return sample;
}

GapStatistics summarize_gaps(const std::vector<GapSample>& samples) {
  GapStatistics stats;
  if (samples.empty()) return stats;
  std::vector<double> gaps;
  gaps.reserve(samples.size());
  for (const auto& s : samples) gaps.push_back(s.gap);
  std::sort(gaps.begin(), gaps.end());
  const auto n = static_cast<double>(gaps.size());
  stats.max_gap = gaps.back();
  stats.fraction_within_1e6 =
      static_cast<double>(std::upper_bound(gaps.begin(), gaps.end(), 1e-6) - gaps.begin()) / n;
  stats.fraction_within_1e5 =
      static_cast<double>(std::upper_bound(gaps.begin(), gaps.end(), 1e-5) - gaps.begin()) / n;
  const auto rank = static_cast<std::size_t>(std::ceil(0.999 * n));
  stats.percentile_999 = gaps[std::max<std::size_t>(rank, 1) - 1];
  return stats;
}

ConjectureRun test_equi_entropy_conjecture(std::size_t samples, std::uint64_t seed,
                                           const GridSpec& grid, int threads) {
  if (samples < 1) throw ParameterError("conjecture test needs at least one sample");
  ConjectureRun run;
  run.seed = seed;
  run.samples.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    auto gen = sample_generator(seed, i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MixtureParams params;
    params.lambda = unit(gen);
    params.alpha = kHalfPi * unit(gen);
    params.beta = kHalfPi * unit(gen);
    run.samples[i] = evaluate_gap(params, grid);
  });
  run.stats = summarize_gaps(run.samples);
  return run;
}

CorrelationReport mixture_correlations(const MixtureParams& params, const GridSpec& grid) {
  return correlation_report(make_mixture_state(params), Direction::b_to_a, Method::numeric, grid);
}

ConstrainedReport mixture_correlations_via_conjecture(const MixtureParams& params,
                                                      const GridSpec& grid, int nodes) {
  if (nodes < 2) throw ParameterError("constrained scan needs at least 2 nodes");
  const TwoQubitState rho = make_mixture_state(params);
  const auto eval = [&](const Eigen::Vector3d& n) {
    return mixture_ensemble(params, ProjectiveMeasurement(n));
  };
  const MeridianBest best = scan_meridian(eval, 0.0, 0.0, std::numbers::pi, nodes);
  if (best.norm < 0.0) throw Error("no equal-norm measurement found for the mixture state");

  ConstrainedReport out;
  out.max_equal_norm = best.norm;
  CorrelationReport& report = out.report;
  report.direction = Direction::b_to_a;
  report.mutual_info = mutual_information(rho);
  report.local_entropy = von_neumann_entropy(partial_trace(rho, Party::A));
  report.min_avg_entropy = binary_entropy(best.norm);
  report.optimal_measurement = ProjectiveMeasurement(meridian_point(best.polar, 0.0));
  report.optimal_ensemble = mixture_ensemble(params, report.optimal_measurement);
  report.classical = report.local_entropy - report.min_avg_entropy;
  report.discord = report.mutual_info - report.classical;
  report.branch = Branch::equi_entropy;

  out.oracle_min_entropy = brute_force_min_entropy(pauli_expansion(rho), grid).min_entropy;
  out.discrepancy = report.min_avg_entropy - out.oracle_min_entropy;
  if (std::abs(out.discrepancy) > kViolationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "equal-norm optimum differs from the oracle by " << out.discrepancy
        << " at lambda=" << params.lambda << " alpha=" << params.alpha
        << " beta=" << params.beta;
    throw ConjectureViolation(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constrained correlation-matrix family

double GeneralRParams::t11() const { return (r1 - s3 * t13) / s1; }

double GeneralRParams::t33() const {
  return (r1 * r3 * s1 - r1 * t31 + s3 * t13 * t31) / (s1 * t13);
}

CorrelationMatrix GeneralRParams::matrix() const {
  Eigen::Matrix4d m;
  m << 1.0, s1, 0.0, s3,
       r1, t11(), 0.0, t13,
       0.0, 0.0, t22, 0.0,
       r3, t31, 0.0, t33();
  return CorrelationMatrix(m);
}

void validate(const GeneralRParams& p) {
  if (std::abs(p.s1) <= kRangeSlack || std::abs(p.t13) <= kRangeSlack) {
    throw ParameterError("s1 and t13 must be nonzero");
  }
  if (p.s1 * p.s1 + p.s3 * p.s3 >= 1.0) {
    throw ParameterError("the Bloch vector of B must lie strictly inside the unit ball");
  }
  if (std::abs(p.matrix().determinant()) <= kSingularityThreshold) {
    throw ParameterError("correlation matrix is singular");
  }
}

TwoQubitState make_general_r_state(const GeneralRParams& p) {
  validate(p);
  return state_from_correlation_matrix(p.matrix());
}

SteeringEllipsoid general_r_ellipsoid(const GeneralRParams& p) {
  validate(p);
  const double s_sq = p.s1 * p.s1 + p.s3 * p.s3;
  const double d = 1.0 - s_sq;
  const double numerator =
      p.r1 * p.r1 * (1.0 - p.s1 * p.s1) - 2.0 * p.r1 * p.s3 * p.t13 + s_sq * p.t13 * p.t13;
  const double l1_sq = numerator / (p.s1 * p.s1 * d);
  const double l2_sq = p.t22 * p.t22 / d;
  const double tilt = p.r3 * p.s1 - p.t31;
  const double l3_sq = l1_sq * tilt * tilt / (p.t13 * p.t13 * d);
  const double y3 =
      (p.r3 * p.s1 * p.t13 - p.r1 * p.s3 * tilt - p.t13 * p.t31 * s_sq) / (p.s1 * p.t13 * d);

  SteeringEllipsoid e;
  e.center = BlochVector(0.0, 0.0, y3);
  e.semi_axes = Eigen::Vector3d(std::sqrt(std::max(0.0, l1_sq)), std::sqrt(std::max(0.0, l2_sq)),
                                std::sqrt(std::max(0.0, l3_sq)));
  e.rotation = Eigen::Matrix3d::Identity();
  e.orientation = 0.0;
  e.degeneracy = Degeneracy::full;
  return e;
}

GeneralRParams sample_general_r(std::uint64_t seed, std::uint64_t index,
                                std::size_t max_attempts) {
  auto gen = sample_generator(seed, index);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    GeneralRParams p;
    p.r1 = coord(gen);
    p.r3 = coord(gen);
    p.s1 = coord(gen);
    p.s3 = coord(gen);
    p.t13 = coord(gen);
    p.t22 = coord(gen);
    p.t31 = coord(gen);
    try {
      validate(p);
    } catch (const ParameterError&) {
      continue;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(reconstruct(p.matrix()),
                                                                 Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() >= 0.0) return p;
  }
  throw Error("general-R sampler exceeded its attempt budget");
}

// ---------------------------------------------------------------------------
// Geometric routes

std::optional<Chord> chord_through(const SteeringEllipsoid& ellipsoid, const BlochVector& point,
                                   const Eigen::Vector3d& direction) {
  if (ellipsoid.degeneracy != Degeneracy::full || (ellipsoid.semi_axes.array() <= 0.0).any()) {
    return std::nullopt;
  }
  const Eigen::Vector3d z = ellipsoid.to_principal(point).cwiseQuotient(ellipsoid.semi_axes);
  const Eigen::Vector3d w =
      (ellipsoid.rotation.transpose() * direction).cwiseQuotient(ellipsoid.semi_axes);
  const double a = w.squaredNorm();
  const double b = 2.0 * z.dot(w);
  const double c = z.squaredNorm() - 1.0;
  if (!(a > 0.0) || c > 1e-12) return std::nullopt;
  const double root = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
  const double plus = (-b + root) / (2.0 * a);
  const double minus = (-b - root) / (2.0 * a);
  if (!(plus - minus > 0.0)) return std::nullopt;
  Chord chord;
  chord.first = point + plus * direction;
  chord.second = point + minus * direction;
  chord.first_weight = std::clamp(-minus / (plus - minus), 0.0, 1.0);
  return chord;
}

double ellipsoid_min_entropy(const SteeringEllipsoid& ellipsoid, const BlochVector& point,
                             const GridSpec& grid) {
  if (ellipsoid.degeneracy != Degeneracy::full || (ellipsoid.semi_axes.array() <= 0.0).any()) {
    throw NotAnEllipsoidError("chord search needs a full ellipsoid");
  }
  if (!contains(ellipsoid, point).inside) {
    throw ParameterError("point lies outside the ellipsoid");
  }
  const auto f = [&](const Eigen::Vector3d& d) {
    const auto chord = chord_through(ellipsoid, point, d);
    return chord ? chord_entropy(*chord) : 1.0;
  };
  return detail::minimize_on_hemisphere(f, grid.polar, grid.azimuth, grid.refine_tolerance).value;
}

EqualNormOptimum equal_norm_optimum(const CorrelationMatrix& R, const GridSpec& grid) {
  const auto eval = [&](const Eigen::Vector3d& n) {
    return post_measurement_ensemble(R, ProjectiveMeasurement(n));
  };
  const int meridians = std::max(2, grid.azimuth / 2);
  const int nodes = std::max(3, 2 * grid.polar - 1);
  const double azimuth_step = std::numbers::pi / meridians;
  const double polar_step = std::numbers::pi / (nodes - 1);

  MeridianBest best;
  double best_azimuth = 0.0;
  for (int j = 0; j < meridians; ++j) {
    const double azimuth = j * azimuth_step;
    const MeridianBest m = scan_meridian(eval, azimuth, 0.0, std::numbers::pi, nodes);
    if (m.norm > best.norm) {
      best = m;
      best_azimuth = azimuth;
    }
  }
  if (best.norm < 0.0) throw Error("no equal-norm measurement found");

  // Golden-section refinement in azimuth, re-solving the polar root locally.
  const auto local = [&](double azimuth) {
    return scan_meridian(eval, azimuth, std::max(0.0, best.polar - 3.0 * polar_step),
                         std::min(std::numbers::pi, best.polar + 3.0 * polar_step), 25);
  };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_azimuth - azimuth_step, hi = best_azimuth + azimuth_step;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  MeridianBest f1 = local(x1), f2 = local(x2);
  while (hi - lo > grid.refine_tolerance) {
    if (f1.norm > f2.norm) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = local(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = local(x2);
    }
  }
  for (const auto& [cand, az] : {std::pair{f1, x1}, std::pair{f2, x2}}) {
    if (cand.norm > best.norm) {
      best = cand;
      best_azimuth = az;
    }
  }

  EqualNormOptimum out;
  out.norm = best.norm;
  out.measurement = ProjectiveMeasurement(meridian_point(best.polar, best_azimuth));
  out.entropy = binary_entropy(best.norm);
  return out;
}

std::string_view to_string(OptimalLineClass cls) { return cls == OptimalLineClass::I ? "I" : "II"; }

LineClassification classify_optimal_line(const CorrelationMatrix& R,
                                         const ClassifyOptions& options) {
  LineClassification out;
  const double r3 = R(3, 0);

  if (options.analytic_x && is_x_structured(R, 1e-12)) {
    const TwoQubitState rho = state_from_correlation_matrix(R);
    if (const auto params = as_x_state(rho)) {
      const XMinEntropy closed = x_state_min_entropy(*params);
      out.min_entropy_a = closed.value;
      out.optimal_ensemble =
          post_measurement_ensemble(R, x_state_optimal_measurement(*params, closed.branch));
      out.gap = norm_gap(out.optimal_ensemble);
      if (closed.branch == Branch::equi_entropy) {
        out.cls = OptimalLineClass::I;
        out.chord_y3 = 0.0;
        out.min_entropy_a_tilde = kNaN;
      } else {
        out.cls = OptimalLineClass::II;
        out.chord_y3 = 1.0;
        out.min_entropy_a_tilde = closed.quasi_eigen;
      }
      return out;
    }
  }

  const OracleResult oracle = brute_force_min_entropy(R, options.grid);
  out.min_entropy_a = oracle.min_entropy;
  out.optimal_ensemble = post_measurement_ensemble(R, oracle.measurement);
  out.gap = norm_gap(out.optimal_ensemble);
  const auto& [plus, minus] = out.optimal_ensemble;
  if (plus.zero_probability || minus.zero_probability) {
    out.chord_y3 = kNaN;
  } else {
    const Eigen::Vector3d chord = plus.bloch - minus.bloch;
    out.chord_y3 = chord.norm() > 1e-12 ? std::abs(chord.z()) / chord.norm() : 0.0;
  }
  const bool horizontal = out.chord_y3 <= options.chord_threshold;
  out.cls = horizontal && out.gap <= options.gap_threshold ? OptimalLineClass::I
                                                           : OptimalLineClass::II;
  out.min_entropy_a_tilde = kNaN;
  if (out.cls == OptimalLineClass::II) {
    try {
      out.min_entropy_a_tilde = apex_entropy(quadric_to_ellipsoid(steering_quadric(R)), r3);
    } catch (const Error&) {
    }
  }
  return out;
}

LineClassification classify_optimal_line(const GeneralRParams& params,
                                         const ClassifyOptions& options) {
  make_general_r_state(params);
  return classify_optimal_line(params.matrix(), options);
}

}  // namespace discordlab
