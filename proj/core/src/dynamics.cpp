#include "discordlab/dynamics.hpp"

#include "discordlab/errors.hpp"
#include "discordlab/parallel.hpp"
#include "discordlab/steering.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace discordlab {
namespace {

constexpr double kStrengthTolerance = 1e-15;

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& lhs, const Eigen::Matrix2cd& rhs) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = lhs(i, j) * rhs;
  return out;
}

template <std::size_t N>
TwoQubitState apply_local_kraus(const TwoQubitState& rho,
                                const std::array<Eigen::Matrix2cd, N>& kraus, bool both) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  if (both) {
    for (const auto& ka : kraus) {
      for (const auto& kb : kraus) {
        const Eigen::Matrix4cd k = kron(ka, kb);
        out += k * rho.matrix() * k.adjoint();
      }
    }
  } else {
    for (const auto& ka : kraus) {
      const Eigen::Matrix4cd k = kron(ka, Eigen::Matrix2cd::Identity());
      out += k * rho.matrix() * k.adjoint();
    }
  }
  return TwoQubitState::from_matrix(out);
}

void check_unit_interval(double value, const char* what) {
  if (!(value >= -kStrengthTolerance && value <= 1.0 + kStrengthTolerance)) {
    std::ostringstream msg;
    msg << what << " must lie in [0, 1], got " << value;
    throw ParameterError(msg.str());
  }
}

Eigen::Vector3d ellipsoid_axes(const TwoQubitState& rho) {
  if (const auto params = as_x_state(rho)) return ellipsoid_from_x_state(*params).semi_axes;
  try {
    return quadric_to_ellipsoid(steering_quadric(pauli_expansion(rho))).semi_axes;
  } catch (const Error&) {
    return Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

PhaseDampingChannel::PhaseDampingChannel(double gamma) : gamma_(gamma) {
  check_unit_interval(gamma, "phase damping gamma");
  gamma_ = std::clamp(gamma, 0.0, 1.0);
}

PhaseDampingChannel PhaseDampingChannel::at_time(double rate, double t) {
  if (!(rate >= 0.0) || !(t >= 0.0)) throw ParameterError("rate and time must be >= 0");
  return PhaseDampingChannel(std::exp(-rate * t));
}

std::array<Eigen::Matrix2cd, 2> PhaseDampingChannel::kraus() const {
  std::array<Eigen::Matrix2cd, 2> k;
  k[0] << gamma_, 0.0, 0.0, 1.0;
  k[1] << std::sqrt(1.0 - gamma_ * gamma_), 0.0, 0.0, 0.0;
  return k;
}

TwoQubitState apply_channel(const TwoQubitState& rho, const PhaseDampingChannel& channel,
                            bool both_parties) {
  return apply_local_kraus(rho, channel.kraus(), both_parties);
}

NamedChannel NamedChannel::parse(std::string_view text) {
  NamedChannel ch;
  if (text == "phase_damping") return ch;
  if (text == "amplitude_damping") {
    ch.kind = ChannelKind::amplitude_damping;
    return ch;
  }
  if (text.starts_with("pauli(") && text.ends_with(")")) {
    ch.kind = ChannelKind::pauli;
    std::istringstream in(std::string(text.substr(6, text.size() - 7)));
    char comma1 = 0, comma2 = 0;
    in >> ch.px >> comma1 >> ch.py >> comma2 >> ch.pz;
    if (!in || comma1 != ',' || comma2 != ',' || !(in >> std::ws).eof()) {
      throw ParameterError("pauli channel must look like pauli(px,py,pz)");
    }
    if (ch.px < 0.0 || ch.py < 0.0 || ch.pz < 0.0 || ch.px + ch.py + ch.pz > 1.0 + 1e-12) {
      throw ParameterError("pauli probabilities must be >= 0 and sum to at most 1");
    }
    return ch;
  }
  throw ParameterError("unknown channel '" + std::string(text) +
                       "' (expected phase_damping, amplitude_damping or pauli(px,py,pz))");
}

std::string NamedChannel::to_string() const {
  switch (kind) {
    case ChannelKind::phase_damping: return "phase_damping";
    case ChannelKind::amplitude_damping: return "amplitude_damping";
    case ChannelKind::pauli: {
      std::ostringstream out;
      out << "pauli(" << px << "," << py << "," << pz << ")";
      return out.str();
    }
  }
  return "unknown";
}

double NamedChannel::strength_at(double rate, double t) const {
  const double decay = std::exp(-rate * t);
  return kind == ChannelKind::phase_damping ? decay : 1.0 - decay;
}

TwoQubitState apply_named_channel(const TwoQubitState& rho, const NamedChannel& channel,
                                  double strength) {
  check_unit_interval(strength, "channel strength");
  strength = std::clamp(strength, 0.0, 1.0);
  const bool x_input = as_x_state(rho).has_value();

  TwoQubitState out = rho;
  switch (channel.kind) {
    case ChannelKind::phase_damping:
      out = apply_channel(rho, PhaseDampingChannel(strength));
      break;
    case ChannelKind::amplitude_damping: {
      std::array<Eigen::Matrix2cd, 2> k;
      k[0] << 1.0, 0.0, 0.0, std::sqrt(1.0 - strength);
      k[1] << 0.0, std::sqrt(strength), 0.0, 0.0;
      out = apply_local_kraus(rho, k, true);
      break;
    }
    case ChannelKind::pauli: {
      const double px = strength * channel.px, py = strength * channel.py,
                   pz = strength * channel.pz;
      const double p0 = std::max(0.0, 1.0 - px - py - pz);
      const std::array<Eigen::Matrix2cd, 4> k{std::sqrt(p0) * pauli(0), std::sqrt(px) * pauli(1),
                                              std::sqrt(py) * pauli(2), std::sqrt(pz) * pauli(3)};
      out = apply_local_kraus(rho, k, true);
      break;
    }
  }
  if (x_input && !as_x_state(out, 1e-12)) {
    throw Error("channel " + channel.to_string() + " did not preserve the X form");
  }
  return out;
}

Trajectory evolve_trajectory(const TwoQubitState& rho0, double rate, double t_max, int steps,
                             const TrajectoryOptions& options) {
  if (steps < 2) throw ParameterError("trajectory needs at least 2 steps");
  if (!(rate >= 0.0) || !(t_max >= 0.0)) throw ParameterError("rate and t_max must be >= 0");
  const auto x_params = as_x_state(rho0);
  if (options.fast && !x_params) {
    throw UnsupportedStructureError("--fast trajectories require an X state");
  }

  Trajectory traj;
  const auto n = static_cast<std::size_t>(steps);
  traj.times.resize(n);
  traj.gammas.resize(n);
  traj.reports.resize(n);
  traj.axes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    traj.times[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    traj.gammas[i] = std::exp(-rate * traj.times[i]);
  }

  const Method method = options.fast ? Method::analytic : Method::automatic;
  parallel_for(n, options.threads, [&](std::size_t i) {
    const double strength = options.channel.strength_at(rate, traj.times[i]);
    const TwoQubitState state = apply_named_channel(rho0, options.channel, strength);
    traj.reports[i] = correlation_report(state, Direction::b_to_a, method, options.grid);
    traj.axes[i] = ellipsoid_axes(state);
  });

  if (x_params && options.channel.kind == ChannelKind::phase_damping && rate > 0.0) {
    traj.critical_time = critical_time(*x_params, rate);
  }
  return traj;
}

std::optional<double> critical_time(const XStateParams& p, double rate) {
  if (!(rate > 0.0)) throw ParameterError("critical time needs a positive damping rate");
  const XMinEntropy initial = x_state_min_entropy(p);
  if (initial.branch != Branch::equi_entropy) return std::nullopt;

  const double target = initial.quasi_eigen;
  const double r3 = p.a + p.b - p.c - p.d;
  const double coherence = 2.0 * (p.u + p.v);
  const auto equi_entropy_at = [&](double t) {
    const double scaled = std::exp(-2.0 * rate * t) * coherence;
    return binary_entropy(std::sqrt(scaled * scaled + r3 * r3));
  };
  // As t grows, E and F collapse onto A; no crossing if that limit does not
  // exceed S_GH.
  if (binary_entropy(std::abs(r3)) <= target + 1e-12) return std::nullopt;

  double lo = 0.0;
  double hi = 1.0 / rate;
  while (equi_entropy_at(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6 / rate) return std::nullopt;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (equi_entropy_at(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> critical_time(const BellDiagonalParams& t, double rate) {
  if (!(rate > 0.0)) throw ParameterError("critical time needs a positive damping rate");
  validate(t);
  const double planar = std::max(std::abs(t.t1), std::abs(t.t2));
  const double vertical = std::abs(t.t3);
  if (vertical <= 0.0 || planar <= vertical) return std::nullopt;
  return std::log(planar / vertical) / (2.0 * rate);
}

}  // namespace discordlab
