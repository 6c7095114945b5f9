// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterfusion {

namespace {

int qubits_for_dim(Eigen::Index dim, const char* what) {
  if (dim < 1) throw std::invalid_argument(std::string(what) + ": empty");
  int q = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw std::invalid_argument(std::string(what) + ": dimension is not a power of two");
    d /= 2;
    ++q;
  }
  if (q > kMaxQubits)
    throw std::invalid_argument(std::string(what) + ": more than " + std::to_string(kMaxQubits) + " qubits");
  return q;
}

void check_position(int q, int position) {
  if (position < 1 || position > q)
    throw std::invalid_argument("qubit position " + std::to_string(position) + " outside 1.." + std::to_string(q));
}

// Bit index of 1-based position k in a q-qubit register (qubit 1 = MSB).
inline int bit_of(int q, int position) { return q - position; }

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  qubits_ = qubits_for_dim(amplitudes_.size(), "PureState");
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > kStructuralTol)
    throw std::invalid_argument("PureState: squared norm " + std::to_string(n2) + " is not 1");
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols())
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  qubits_ = qubits_for_dim(entries.rows(), "DensityMatrix");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kSpectralTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian, max asymmetry " + std::to_string(asym));
  entries_ = 0.5 * (entries + entries.adjoint());
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  DensityMatrix out;
  out.entries_ = psi.amplitudes() * psi.amplitudes().adjoint();
  out.qubits_ = psi.qubits();
  return out;
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  if (qubits < 0 || qubits > kMaxQubits) throw std::invalid_argument("maximally_mixed: bad qubit count");
  DensityMatrix out;
  const Eigen::Index d = Eigen::Index(1) << qubits;
  out.entries_ = Eigen::MatrixXcd::Identity(d, d) / double(d);
  out.qubits_ = qubits;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.qubits() + b.qubits() > kMaxQubits)
    throw std::invalid_argument("tensor: combined register exceeds " + std::to_string(kMaxQubits) + " qubits");
  const Eigen::Index da = a.dim(), db = b.dim();
  DensityMatrix out;
  out.entries_.resize(da * db, da * db);
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ja = 0; ja < da; ++ja)
      out.entries_.block(ia * db, ja * db, db, db) = a.matrix()(ia, ja) * b.matrix();
  out.qubits_ = a.qubits() + b.qubits();
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& discard) {
  const int q = rho.qubits();
  for (int k : discard) check_position(q, k);

  std::vector<int> kept;
  for (int k = 1; k <= q; ++k)
    if (!discard.count(k)) kept.push_back(k);

  const int qk = int(kept.size());
  const int qd = q - qk;
  const Eigen::Index dk = Eigen::Index(1) << qk;
  const Eigen::Index dd = Eigen::Index(1) << qd;

  std::vector<int> kept_shift(qk), disc_shift(qd);
  for (int i = 0; i < qk; ++i) kept_shift[i] = bit_of(q, kept[i]);
  {
    int i = 0;
    for (int k : discard) disc_shift[i++] = bit_of(q, k);
  }

  auto scatter = [](Eigen::Index bits, const std::vector<int>& shifts) {
    Eigen::Index out = 0;
    const int n = int(shifts.size());
    for (int i = 0; i < n; ++i)
      if ((bits >> (n - 1 - i)) & 1) out |= Eigen::Index(1) << shifts[i];
    return out;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    const Eigen::Index bi = scatter(i, kept_shift);
    for (Eigen::Index j = 0; j < dk; ++j) {
      const Eigen::Index bj = scatter(j, kept_shift);
      Complex sum = 0;
      for (Eigen::Index e = 0; e < dd; ++e) {
        const Eigen::Index be = scatter(e, disc_shift);
        sum += rho.matrix()(bi | be, bj | be);
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_transpose(const DensityMatrix& rho, const std::set<int>& subset) {
  const int q = rho.qubits();
  Eigen::Index mask = 0;
  for (int k : subset) {
    check_position(q, k);
    mask |= Eigen::Index(1) << bit_of(q, k);
  }
  const Eigen::Index d = rho.dim();
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::Index ii = (i & ~mask) | (j & mask);
      const Eigen::Index jj = (j & ~mask) | (i & mask);
      out(ii, jj) = rho.matrix()(i, j);
    }
  return DensityMatrix(std::move(out));
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kSpectralTol)
    throw std::invalid_argument("hermitian_eigenvalues: not Hermitian, max asymmetry " + std::to_string(asym));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (m + m.adjoint()),
                                                         Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_pt_eigenvalue(const DensityMatrix& rho, const std::set<int>& subset) {
  return hermitian_eigenvalues(partial_transpose(rho, subset).matrix()).front();
}

double fidelity_pure(const DensityMatrix& rho, const PureState& target) {
  if (rho.dim() != target.dim())
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const Complex v = target.amplitudes().adjoint() * rho.matrix() * target.amplitudes();
  return v.real();
}

double purity(const DensityMatrix& rho) {
  return rho.matrix().cwiseAbs2().sum();
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Eigen::MatrixXcd>& ops,
                          bool declared_trace_preserving) {
  if (ops.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
  const Eigen::Index d = rho.dim();
  for (const auto& k : ops)
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("apply_kraus: operator dimension mismatch");
  if (declared_trace_preserving) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : ops) sum += k.adjoint() * k;
    const double dev = (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kSpectralTol)
      throw std::invalid_argument("apply_kraus: completeness violated by " + std::to_string(dev));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& k : ops) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(std::move(out));
}

DensityMatrix apply_single_qubit_kraus(const DensityMatrix& rho, int position,
                                       const std::vector<Eigen::Matrix2cd>& ops) {
  const int q = rho.qubits();
  check_position(q, position);
  const Eigen::Index d = rho.dim();
  const Eigen::Index m = Eigen::Index(1) << bit_of(q, position);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd tmp(d, d);
  for (const auto& k : ops) {
    // rows: tmp = (K on `position`) rho
    for (Eigen::Index i = 0; i < d; ++i) {
      const int bi = (i & m) ? 1 : 0;
      const Eigen::Index i0 = i & ~m, i1 = i | m;
      for (Eigen::Index j = 0; j < d; ++j)
        tmp(i, j) = k(bi, 0) * rho.matrix()(i0, j) + k(bi, 1) * rho.matrix()(i1, j);
    }
    // columns: out += tmp K^dagger
    for (Eigen::Index j = 0; j < d; ++j) {
      const int bj = (j & m) ? 1 : 0;
      const Eigen::Index j0 = j & ~m, j1 = j | m;
      for (Eigen::Index i = 0; i < d; ++i)
        out(i, j) += tmp(i, j0) * std::conj(k(bj, 0)) + tmp(i, j1) * std::conj(k(bj, 1));
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<int>& new_order) {
  const int q = rho.qubits();
  if (int(new_order.size()) != q)
    throw std::invalid_argument("permute_qubits: permutation size mismatch");
  std::vector<bool> seen(q + 1, false);
  for (int k : new_order) {
    check_position(q, k);
    if (seen[k]) throw std::invalid_argument("permute_qubits: duplicate position");
    seen[k] = true;
  }
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> map(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index src = 0;
    for (int k = 1; k <= q; ++k)
      if ((i >> bit_of(q, k)) & 1) src |= Eigen::Index(1) << bit_of(q, new_order[k - 1]);
    map[i] = src;
  }
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = rho.matrix()(map[i], map[j]);
  return DensityMatrix(std::move(out));
}

}  // namespace clusterfusion
