// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "clusterfusion/density_matrix.hpp"

namespace clusterfusion {

/// Monotonically increasing label source. One allocator per simulation run
/// keeps labels unique across all chains of that run.
class LabelAllocator {
 public:
  int allocate() { return next_++; }

 private:
  int next_ = 1;
};

/// A linear cluster chain: qubit labels in chain order plus the state over
/// those qubits. labels[k] lives at tensor position k+1, so the state is
/// always stored in chain order.
struct ClusterChain {
  std::vector<int> labels;
  DensityMatrix state;

  int length() const { return int(labels.size()); }
};

/// Throws std::invalid_argument unless the label list is duplicate-free and
/// its length matches the state's qubit count.
void validate_chain(const ClusterChain& chain);

/// Same chain read in the opposite direction: labels reversed and the state
/// permuted to match. The underlying graph is unchanged.
ClusterChain reversed(const ClusterChain& chain);

/// Canonical linear cluster: the CZ-neighbor chain on |+>^n,
/// amplitudes 2^{-n/2} (-1)^{sum_k b_k b_{k+1}}. n in 1..kMaxQubits.
PureState linear_cluster(int n);

/// Length-2 chain in the pure two-qubit cluster state
/// (|00> + |01> + |10> - |11>) / 2, with fresh labels.
ClusterChain fresh_primitive(LabelAllocator& alloc);

}  // namespace clusterfusion
