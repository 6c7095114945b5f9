// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clusterfusion {

void validate_chain(const ClusterChain& chain) {
  if (int(chain.labels.size()) != chain.state.qubits())
    throw std::invalid_argument("ClusterChain: label count does not match qubit count");
  std::vector<int> sorted = chain.labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("ClusterChain: duplicate labels");
}

ClusterChain reversed(const ClusterChain& chain) {
  const int q = chain.length();
  if (q <= 1) return chain;
  std::vector<int> labels(chain.labels.rbegin(), chain.labels.rend());
  std::vector<int> order(q);
  for (int k = 0; k < q; ++k) order[k] = q - k;
  return ClusterChain{std::move(labels), permute_qubits(chain.state, order)};
}

PureState linear_cluster(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("linear_cluster: length outside 1.." + std::to_string(kMaxQubits));
  const Eigen::Index d = Eigen::Index(1) << n;
  Eigen::VectorXcd amps(d);
  const double norm = std::pow(2.0, -0.5 * n);
  for (Eigen::Index i = 0; i < d; ++i) {
    int sign = 0;
    for (int k = 0; k < n - 1; ++k) {
      const int bk = (i >> (n - 1 - k)) & 1;
      const int bk1 = (i >> (n - 2 - k)) & 1;
      sign += bk * bk1;
    }
    amps(i) = (sign % 2 == 0 ? norm : -norm);
  }
  return PureState(std::move(amps));
}

ClusterChain fresh_primitive(LabelAllocator& alloc) {
  const int a = alloc.allocate();
  const int b = alloc.allocate();
  return ClusterChain{{a, b}, DensityMatrix::from_pure(linear_cluster(2))};
}

}  // namespace clusterfusion
