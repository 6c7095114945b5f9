// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clusterfusion {

namespace {

constexpr double kZeroProb = 1e-15;

// Removes qubit `position` by projecting it onto |bit>. Returns the
// unnormalized (q-1)-qubit matrix and the branch probability.
std::pair<Eigen::MatrixXcd, double> project_qubit(const DensityMatrix& rho, int position, int bit) {
  const int q = rho.qubits();
  const int low = q - position;  // input bits below the projected one
  const Eigen::Index dout = Eigen::Index(1) << (q - 1);
  const Eigen::Index lowmask = (Eigen::Index(1) << low) - 1;
  auto expand = [&](Eigen::Index i) {
    return ((i >> low) << (low + 1)) | (Eigen::Index(bit) << low) | (i & lowmask);
  };
  Eigen::MatrixXcd out(dout, dout);
  for (Eigen::Index i = 0; i < dout; ++i) {
    const Eigen::Index ei = expand(i);
    for (Eigen::Index j = 0; j < dout; ++j) out(i, j) = rho.matrix()(ei, expand(j));
  }
  const double prob = out.trace().real();
  return {std::move(out), prob};
}

void apply_z_inplace(Eigen::MatrixXcd& m, int qubits, int position) {
  const Eigen::Index mask = Eigen::Index(1) << (qubits - position);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (((i ^ j) & mask) != 0) m(i, j) = -m(i, j);
}

DensityMatrix normalized(Eigen::MatrixXcd m, double prob, int qubits) {
  if (prob > kZeroProb) return DensityMatrix(m / prob);
  // Degenerate branch with no weight; any valid state will do.
  return DensityMatrix::maximally_mixed(qubits);
}

struct Remnant {
  Eigen::MatrixXcd raw;
  double probability;
};

// Corrected remnant after measuring away the chain's first or last qubit.
// `front` selects which end was measured; a Z lands on the new end qubit
// when the outcome bit is 1.
Remnant measure_end(const ClusterChain& chain, bool front, int bit) {
  const int q = chain.length();
  auto [raw, prob] = project_qubit(chain.state, front ? 1 : q, bit);
  if (bit == 1 && q >= 2) apply_z_inplace(raw, q - 1, front ? 1 : q - 1);
  return {std::move(raw), prob};
}

}  // namespace

std::vector<FusionOutcome> fuse(const ClusterChain& a, const ClusterChain& b,
                                int edge_a, int edge_b, LabelAllocator& alloc) {
  validate_chain(a);
  validate_chain(b);
  if (a.labels.empty() || b.labels.empty())
    throw std::invalid_argument("fuse: empty chain");
  for (int la : a.labels)
    if (std::find(b.labels.begin(), b.labels.end(), la) != b.labels.end())
      throw std::invalid_argument("fuse: chains share label " + std::to_string(la));
  if (edge_a != a.labels.front() && edge_a != a.labels.back())
    throw std::invalid_argument("fuse: edge_a is not an endpoint");
  if (edge_b != b.labels.front() && edge_b != b.labels.back())
    throw std::invalid_argument("fuse: edge_b is not an endpoint");

  // Orientation: a's fused end last, b's fused end first.
  const ClusterChain ca = (edge_a == a.labels.back()) ? a : reversed(a);
  const ClusterChain cb = (edge_b == b.labels.front()) ? b : reversed(b);
  const int m = ca.length();
  const int n = cb.length();

  std::vector<FusionOutcome> outcomes;
  outcomes.reserve(3);

  // Success branch: K_s = |0><00| + |1><11| on the adjacent measured pair of
  // the joint register (positions m, m+1).
  {
    const DensityMatrix joint = tensor(ca.state, cb.state);
    const int qout = m + n - 1;
    const Eigen::Index dout = Eigen::Index(1) << qout;
    const Eigen::Index bmask = (Eigen::Index(1) << (n - 1)) - 1;
    auto expand = [&](Eigen::Index i) {
      const Eigen::Index abits = i >> (n - 1);       // a interior + fused bit
      const Eigen::Index u = abits & 1;
      const Eigen::Index bbits = (u << (n - 1)) | (i & bmask);
      return (abits << n) | bbits;
    };
    Eigen::MatrixXcd out(dout, dout);
    for (Eigen::Index i = 0; i < dout; ++i) {
      const Eigen::Index ei = expand(i);
      for (Eigen::Index j = 0; j < dout; ++j) out(i, j) = joint.matrix()(ei, expand(j));
    }
    const double prob = out.trace().real();

    const int fused = alloc.allocate();
    std::vector<int> labels(ca.labels.begin(), ca.labels.end() - 1);
    labels.push_back(fused);
    labels.insert(labels.end(), cb.labels.begin() + 1, cb.labels.end());

    FusionOutcome success;
    success.kind = FusionOutcome::Kind::Success;
    success.probability = prob;
    success.chains.push_back(ClusterChain{std::move(labels), normalized(std::move(out), prob, qout)});
    success.provenance = FusedProvenance{fused, edge_a, edge_b};
    outcomes.push_back(std::move(success));
  }

  // Failure branches <01| and <10|. The joint state is a product, so each
  // branch factorizes into independent per-chain measurements.
  const Remnant a0 = measure_end(ca, false, 0), a1 = measure_end(ca, false, 1);
  const Remnant b0 = measure_end(cb, true, 0), b1 = measure_end(cb, true, 1);
  const std::vector<int> rest_a(ca.labels.begin(), ca.labels.end() - 1);
  const std::vector<int> rest_b(cb.labels.begin() + 1, cb.labels.end());

  auto failure = [&](const Remnant& ra, const Remnant& rb) {
    FusionOutcome f;
    f.kind = FusionOutcome::Kind::Failure;
    f.probability = ra.probability * rb.probability;
    f.chains.push_back(ClusterChain{rest_a, normalized(ra.raw, ra.probability, m - 1)});
    f.chains.push_back(ClusterChain{rest_b, normalized(rb.raw, rb.probability, n - 1)});
    return f;
  };
  outcomes.push_back(failure(a0, b1));
  outcomes.push_back(failure(a1, b0));
  return outcomes;
}

AggregatedFailure aggregate_failure(const std::vector<FusionOutcome>& outcomes) {
  std::vector<const FusionOutcome*> fails;
  for (const auto& o : outcomes)
    if (o.kind == FusionOutcome::Kind::Failure) fails.push_back(&o);
  if (fails.size() != 2)
    throw std::invalid_argument("aggregate_failure: expected exactly two failure branches");
  const FusionOutcome& f1 = *fails[0];
  const FusionOutcome& f2 = *fails[1];
  if (f1.chains.size() != 2 || f2.chains.size() != 2 ||
      f1.chains[0].labels != f2.chains[0].labels || f1.chains[1].labels != f2.chains[1].labels)
    throw std::invalid_argument("aggregate_failure: branches are not from the same fuse call");

  const double total = f1.probability + f2.probability;
  auto mix = [&](int idx) {
    if (total <= kZeroProb) return f1.chains[idx];
    Eigen::MatrixXcd m = (f1.probability * f1.chains[idx].state.matrix() +
                          f2.probability * f2.chains[idx].state.matrix()) /
                         total;
    return ClusterChain{f1.chains[idx].labels, DensityMatrix(std::move(m))};
  };
  return AggregatedFailure{mix(0), mix(1), total};
}

}  // namespace clusterfusion
