#pragma once

// Two-qubit states: density matrices, Pauli (Hilbert-Schmidt) expansion,
// partial traces, entropies and Bloch vectors.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit A as the left tensor
// factor. All logarithms are base 2.

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace discordlab {

using Complex = std::complex<double>;
using BlochVector = Eigen::Vector3d;

/// Tolerance for hermiticity, trace and positivity checks.
inline constexpr double kValidityTolerance = 1e-10;

enum class Party { A, B };

/// A validated 4x4 two-qubit density matrix.
class TwoQubitState {
 public:
  /// Validates hermiticity, unit trace and positive semidefiniteness.
  /// Throws ValidationError naming the offending entry or eigenvalue.
  static TwoQubitState from_matrix(const Eigen::Matrix4cd& matrix);

  const Eigen::Matrix4cd& matrix() const noexcept { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

 private:
  explicit TwoQubitState(const Eigen::Matrix4cd& matrix) : matrix_(matrix) {}
  Eigen::Matrix4cd matrix_;
};

/// Parameters of a general X state: diagonal a, b, c, d and coherences
/// rho_03 = u e^{i mu}, rho_12 = v e^{i nu}.
struct XStateParams {
  double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
  double u = 0.0, v = 0.0;
  double mu = 0.0, nu = 0.0;
};

/// Bell-diagonal state (1/4) sum_k t_k sigma_k (x) sigma_k with t_0 = 1.
struct BellDiagonalParams {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
};

/// R_{ab} = Tr[rho (sigma_a (x) sigma_b)]. Row 0 holds the Bloch vector of
/// B, column 0 the Bloch vector of A, the lower-right 3x3 block the
/// correlation tensor.
class CorrelationMatrix {
 public:
  CorrelationMatrix() : entries_(Eigen::Matrix4d::Identity()) {}
  explicit CorrelationMatrix(const Eigen::Matrix4d& entries) : entries_(entries) {}

  const Eigen::Matrix4d& entries() const noexcept { return entries_; }
  double operator()(int row, int col) const { return entries_(row, col); }

  BlochVector bloch_a() const { return entries_.block<3, 1>(1, 0); }
  BlochVector bloch_b() const { return entries_.block<1, 3>(0, 1).transpose(); }
  Eigen::Matrix3d correlations() const { return entries_.block<3, 3>(1, 1); }

  /// Exchanges the roles of A and B.
  CorrelationMatrix transposed() const { return CorrelationMatrix(entries_.transpose()); }
  double determinant() const { return entries_.determinant(); }

 private:
  Eigen::Matrix4d entries_;
};

/// Pauli matrix sigma_k, k = 0..3 (sigma_0 = identity).
const Eigen::Matrix2cd& pauli(int k);

void validate(const XStateParams& params);
void validate(const BellDiagonalParams& params);

TwoQubitState make_x_state(const XStateParams& params);
TwoQubitState make_bell_diagonal_state(const BellDiagonalParams& params);

/// Equivalent X-state parameters; negative coherences are folded into the
/// phases so that u, v >= 0.
XStateParams bell_diagonal_to_x(const BellDiagonalParams& params);

CorrelationMatrix pauli_expansion(const TwoQubitState& rho);

/// rho = (1/4) sum R_{ab} sigma_a (x) sigma_b, without validation.
Eigen::Matrix4cd reconstruct(const CorrelationMatrix& R);

/// Reconstructs and validates.
TwoQubitState state_from_correlation_matrix(const CorrelationMatrix& R);

Eigen::Matrix2cd partial_trace(const TwoQubitState& rho, Party keep);

BlochVector bloch_vector(const Eigen::Matrix2cd& qubit);

/// Binary entropy of the eigenvalues (1 +- x)/2 of a qubit with Bloch norm x.
/// Arguments are clamped to [0, 1].
double binary_entropy(double bloch_norm);

/// Von Neumann entropy in bits of a Hermitian PSD matrix of any size.
/// Throws ValidationError if an eigenvalue is below -1e-10.
double von_neumann_entropy(const Eigen::MatrixXcd& state);

double mutual_information(const TwoQubitState& rho);

/// The same state with qubits A and B exchanged.
TwoQubitState swap_parties(const TwoQubitState& rho);

/// (U (x) V) rho (U (x) V)^dagger.
TwoQubitState apply_local_unitaries(const TwoQubitState& rho, const Eigen::Matrix2cd& U,
                                    const Eigen::Matrix2cd& V);

/// Recovers X-state parameters when all eight non-X entries are below
/// `tolerance` in magnitude.
std::optional<XStateParams> as_x_state(const TwoQubitState& rho, double tolerance = 1e-12);

/// Recovers Bell-diagonal coefficients when the state is an X state with
/// maximally mixed marginals and real coherences.
std::optional<BellDiagonalParams> as_bell_diagonal(const TwoQubitState& rho,
                                                   double tolerance = 1e-12);

}  // namespace discordlab
