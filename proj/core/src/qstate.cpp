#include "discordlab/qstate.hpp"

#include "discordlab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace discordlab {
namespace {

constexpr double kParamTolerance = 1e-12;

// Entries of a 4x4 matrix that vanish for X states.
constexpr std::array<std::array<int, 2>, 8> kNonXEntries{{
    {0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& lhs, const Eigen::Matrix2cd& rhs) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = lhs(i, j) * rhs;
  return out;
}

}  // namespace

const Eigen::Matrix2cd& pauli(int k) {
  static const std::array<Eigen::Matrix2cd, 4> matrices = [] {
    const Complex i{0.0, 1.0};
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -i, i, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return matrices.at(static_cast<std::size_t>(k));
}

TwoQubitState TwoQubitState::from_matrix(const Eigen::Matrix4cd& matrix) {
  for (int r = 0; r < 4; ++r) {
    for (int c = r; c < 4; ++c) {
      if (std::abs(matrix(r, c) - std::conj(matrix(c, r))) > kValidityTolerance) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian at entries (" << r << "," << c << ") and (" << c
            << "," << r << ")";
        throw ValidationError(msg.str());
      }
    }
  }
  const Complex trace = matrix.trace();
  if (std::abs(trace - Complex{1.0, 0.0}) > kValidityTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << trace.real() << ", expected 1";
    throw ValidationError(msg.str());
  }
  const Eigen::Matrix4cd hermitian = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitian, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -kValidityTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (eigenvalue " << smallest << ")";
    throw ValidationError(msg.str());
  }
  return TwoQubitState(hermitian);
}

void validate(const XStateParams& p) {
  const std::array<double, 4> diag{p.a, p.b, p.c, p.d};
  for (double x : diag) {
    if (!(x >= -kParamTolerance)) throw ValidationError("X-state diagonal entries must be >= 0");
  }
  if (std::abs(p.a + p.b + p.c + p.d - 1.0) > kParamTolerance)
    throw ValidationError("X-state diagonal entries must sum to 1");
  if (!(p.u >= 0.0) || !(p.v >= 0.0))
    throw ValidationError("X-state coherence magnitudes u, v must be >= 0");
  if (p.u * p.u > p.a * p.d + kParamTolerance)
    throw ValidationError("X-state positivity violation: u^2 > a d");
  if (p.v * p.v > p.b * p.c + kParamTolerance)
    throw ValidationError("X-state positivity violation: v^2 > b c");
}

void validate(const BellDiagonalParams& t) {
  if (1.0 + t.t3 < std::abs(t.t1 - t.t2) - kParamTolerance ||
      1.0 - t.t3 < std::abs(t.t1 + t.t2) - kParamTolerance) {
    throw ValidationError("Bell-diagonal positivity violation: need 1 +- t3 >= |t1 -+ t2|");
  }
}

TwoQubitState make_x_state(const XStateParams& p) {
  validate(p);
  const Complex i{0.0, 1.0};
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = p.a;
  m(1, 1) = p.b;
  m(2, 2) = p.c;
  m(3, 3) = p.d;
  m(0, 3) = p.u * std::exp(i * p.mu);
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = p.v * std::exp(i * p.nu);
  m(2, 1) = std::conj(m(1, 2));
  return TwoQubitState::from_matrix(m);
}

TwoQubitState make_bell_diagonal_state(const BellDiagonalParams& t) {
  validate(t);
  Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
  R(0, 0) = 1.0;
  R(1, 1) = t.t1;
  R(2, 2) = t.t2;
  R(3, 3) = t.t3;
  return state_from_correlation_matrix(CorrelationMatrix(R));
}

XStateParams bell_diagonal_to_x(const BellDiagonalParams& t) {
  validate(t);
  XStateParams p;
  p.a = p.d = (1.0 + t.t3) / 4.0;
  p.b = p.c = (1.0 - t.t3) / 4.0;
  const double u = (t.t1 - t.t2) / 4.0;
  const double v = (t.t1 + t.t2) / 4.0;
  p.u = std::abs(u);
  p.v = std::abs(v);
  p.mu = u < 0.0 ? std::numbers::pi : 0.0;
  p.nu = v < 0.0 ? std::numbers::pi : 0.0;
  return p;
}

CorrelationMatrix pauli_expansion(const TwoQubitState& rho) {
  Eigen::Matrix4d R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      R(a, b) = (rho.matrix() * kron(pauli(a), pauli(b))).trace().real();
  R(0, 0) = 1.0;
  return CorrelationMatrix(R);
}

Eigen::Matrix4cd reconstruct(const CorrelationMatrix& R) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (R(a, b) != 0.0) m += R(a, b) * kron(pauli(a), pauli(b));
  return 0.25 * m;
}

TwoQubitState state_from_correlation_matrix(const CorrelationMatrix& R) {
  return TwoQubitState::from_matrix(reconstruct(R));
}

Eigen::Matrix2cd partial_trace(const TwoQubitState& rho, Party keep) {
  const auto& m = rho.matrix();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        out(i, k) += keep == Party::A ? m(2 * i + j, 2 * k + j) : m(2 * j + i, 2 * j + k);
      }
    }
  }
  return out;
}

BlochVector bloch_vector(const Eigen::Matrix2cd& qubit) {
  return {(qubit * pauli(1)).trace().real(), (qubit * pauli(2)).trace().real(),
          (qubit * pauli(3)).trace().real()};
}

double binary_entropy(double bloch_norm) {
  const double x = std::clamp(bloch_norm, 0.0, 1.0);
  const double p = 0.5 * (1.0 + x);
  const double q = 0.5 * (1.0 - x);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (q > 0.0) s -= q * std::log2(q);
  return s;
}

double von_neumann_entropy(const Eigen::MatrixXcd& state) {
  const Eigen::MatrixXcd hermitian = 0.5 * (state + state.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -kValidityTolerance) {
      std::ostringstream msg;
      msg << "negative eigenvalue " << lambda << " in entropy evaluation";
      throw ValidationError(msg.str());
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double mutual_information(const TwoQubitState& rho) {
  return von_neumann_entropy(partial_trace(rho, Party::A)) +
         von_neumann_entropy(partial_trace(rho, Party::B)) - von_neumann_entropy(rho.matrix());
}

TwoQubitState swap_parties(const TwoQubitState& rho) {
  // |ij> -> |ji> permutes basis indices 1 and 2.
  constexpr std::array<int, 4> perm{0, 2, 1, 3};
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rho.matrix()(perm[r], perm[c]);
  return TwoQubitState::from_matrix(m);
}

TwoQubitState apply_local_unitaries(const TwoQubitState& rho, const Eigen::Matrix2cd& U,
                                    const Eigen::Matrix2cd& V) {
  const Eigen::Matrix4cd W = kron(U, V);
  return TwoQubitState::from_matrix(W * rho.matrix() * W.adjoint());
}

std::optional<XStateParams> as_x_state(const TwoQubitState& rho, double tolerance) {
  const auto& m = rho.matrix();
  for (const auto& [r, c] : kNonXEntries) {
    if (std::abs(m(r, c)) > tolerance) return std::nullopt;
  }
  XStateParams p;
  p.a = m(0, 0).real();
  p.b = m(1, 1).real();
  p.c = m(2, 2).real();
  p.d = m(3, 3).real();
  p.u = std::abs(m(0, 3));
  p.v = std::abs(m(1, 2));
  p.mu = p.u > 0.0 ? std::arg(m(0, 3)) : 0.0;
  p.nu = p.v > 0.0 ? std::arg(m(1, 2)) : 0.0;
  return p;
}

std::optional<BellDiagonalParams> as_bell_diagonal(const TwoQubitState& rho, double tolerance) {
  if (!as_x_state(rho, tolerance)) return std::nullopt;
  const Eigen::Matrix4d R = pauli_expansion(rho).entries();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b && std::abs(R(a, b)) > tolerance) return std::nullopt;
  return BellDiagonalParams{R(1, 1), R(2, 2), R(3, 3)};
}

}  // namespace discordlab
