// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "clusterfusion/cluster.hpp"

namespace clusterfusion {

/// Identity of a fused qubit and the two edge qubits it replaced.
struct FusedProvenance {
  int fused = 0;
  int parent_a = 0;
  int parent_b = 0;
};

/// One measurement branch of a fusion attempt. A success carries the merged
/// chain of length m+n-1; a failure carries both shortened chains (length
/// m-1 and n-1; a shortened length-0 chain is an empty ClusterChain whose
/// state is the 1x1 matrix [1]).
struct FusionOutcome {
  enum class Kind { Success, Failure };
  Kind kind = Kind::Success;
  double probability = 0.0;
  std::vector<ClusterChain> chains;              // 1 chain (success) or 2 (failure)
  std::optional<FusedProvenance> provenance;     // success branches only
};

/// Type I fusion on the edge qubits `edge_a` of `a` and `edge_b` of `b`,
/// coarse-grained to three branches:
///   success   K_s = |0><00| + |1><11|  (two measured qubits become one),
///   failure   <01| and <10|            (both measured qubits removed),
/// each failure followed by a Z on the chain neighbor of a measured qubit
/// whose outcome bit is 1. Branch probabilities are Born probabilities and
/// sum to 1; states are renormalized per branch.
///
/// Chains are oriented so the fused ends meet: the merged chain runs from
/// a's far end through the fused qubit (fresh label) to b's far end, which
/// keeps canonical cluster inputs canonical on every branch.
///
/// Returns {success, failure(0,1), failure(1,0)}. Throws if the edges are
/// not endpoints or the label sets overlap.
std::vector<FusionOutcome> fuse(const ClusterChain& a, const ClusterChain& b,
                                int edge_a, int edge_b, LabelAllocator& alloc);

/// Both failure branches of one fuse() call folded into a single event:
/// per remnant chain, the probability-weighted mixture of the two corrected
/// branch states. `probability` is the total failure probability.
struct AggregatedFailure {
  ClusterChain remnant_a;
  ClusterChain remnant_b;
  double probability = 0.0;
};

/// Accepts the full outcome list of one fuse() call (or just its two failure
/// entries). Throws if the failure branches do not belong together.
AggregatedFailure aggregate_failure(const std::vector<FusionOutcome>& outcomes);

}  // namespace clusterfusion
