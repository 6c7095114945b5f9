// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace clusterfusion {

// Centralized tolerances. Structural checks (hermiticity, norms, traces) use
// kStructuralTol, spectral checks kSpectralTol, and comparisons between
// simulated values and analytic expressions kFormulaTol.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;
inline constexpr double kFormulaTol = 1e-9;

// Hard cap on register size. Everything here is dense; 1024x1024 is the
// largest matrix this library will ever allocate.
inline constexpr int kMaxQubits = 10;

using Complex = std::complex<double>;

// Qubit ordering convention, binding for the whole library: qubit 1 is the
// leftmost tensor factor and the most significant bit of a basis index.
// Positions are 1-based, so position k of a q-qubit register is bit (q - k).

/// Normalized state vector over q qubits (dimension 2^q).
class PureState {
 public:
  /// Takes ownership of the amplitudes. Throws std::invalid_argument if the
  /// dimension is not a power of two at most 2^kMaxQubits or the squared
  /// norm deviates from 1 by more than kStructuralTol.
  explicit PureState(Eigen::VectorXcd amplitudes);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  Eigen::VectorXcd amplitudes_;
  int qubits_ = 0;
};

/// Hermitian matrix over q qubits. Values are immutable after construction;
/// all operations below allocate fresh outputs, so sharing across threads is
/// safe. Positive semidefiniteness and unit trace are invariants of the
/// trace-preserving operations, not of the type itself (partial transposes
/// are carried by the same type and may have negative eigenvalues).
class DensityMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is square with
  /// power-of-two dimension <= 2^kMaxQubits and Hermitian within
  /// kSpectralTol. Asymmetry below the tolerance is treated as numerical
  /// noise and removed by storing (M + M^dagger) / 2.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  /// Projector |psi><psi|.
  static DensityMatrix from_pure(const PureState& psi);

  /// Maximally mixed state I / 2^q.
  static DensityMatrix maximally_mixed(int qubits);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  double trace_real() const { return entries_.trace().real(); }

 private:
  DensityMatrix() = default;
  Eigen::MatrixXcd entries_;
  int qubits_ = 0;

  friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&);
};

/// Kronecker product; `a` supplies the high-order qubits.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out the listed qubit positions. Discarding every qubit leaves the
/// 1x1 matrix [trace]. Throws on positions outside 1..q.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& discard);

/// Transposes the indices of the listed qubits only. Involution; preserves
/// trace and hermiticity. Throws on positions outside 1..q.
DensityMatrix partial_transpose(const DensityMatrix& rho, const std::set<int>& subset);

/// Ascending real eigenvalues of a Hermitian matrix. The solver runs on the
/// symmetrized matrix (M + M^dagger) / 2; asymmetry beyond kSpectralTol is an
/// error, below it is noise.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// Smallest eigenvalue of the partial transpose with respect to `subset`.
/// Negative values witness entanglement across that bipartition.
double min_pt_eigenvalue(const DensityMatrix& rho, const std::set<int>& subset);

/// <psi| rho |psi>. Throws on dimension mismatch.
double fidelity_pure(const DensityMatrix& rho, const PureState& target);

/// Tr rho^2, in [1/dim, 1] for valid states.
double purity(const DensityMatrix& rho);

/// Applies rho -> sum_i K_i rho K_i^dagger with full-dimension operators.
/// When `declared_trace_preserving`, completeness sum K^dagger K = I is
/// checked within kSpectralTol and a violation throws.
DensityMatrix apply_kraus(const DensityMatrix& rho,
                          const std::vector<Eigen::MatrixXcd>& ops,
                          bool declared_trace_preserving = true);

/// Applies a single-qubit Kraus set to one qubit position without
/// materializing 2^q-dimensional operators.
DensityMatrix apply_single_qubit_kraus(const DensityMatrix& rho, int position,
                                       const std::vector<Eigen::Matrix2cd>& ops);

/// Reorders qubits: output position k holds input position new_order[k-1].
/// `new_order` must be a permutation of 1..q.
DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<int>& new_order);

}  // namespace clusterfusion
