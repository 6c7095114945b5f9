// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterfusion {

DephasingStrength::DephasingStrength(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("DephasingStrength: " + std::to_string(p) + " outside [0, 1]");
}

std::array<Eigen::Matrix2cd, 2> dephasing_kraus(DephasingStrength p) {
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd k2 = Eigen::Matrix2cd::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p.value());
  k2(1, 1) = std::sqrt(p.value());
  return {k1, k2};
}

DensityMatrix dephase_all(const DensityMatrix& rho, DephasingStrength p) {
  if (p.value() == 0.0) return rho;
  const auto ks = dephasing_kraus(p);
  const std::vector<Eigen::Matrix2cd> ops{ks[0], ks[1]};
  DensityMatrix out = rho;
  for (int k = 1; k <= rho.qubits(); ++k) out = apply_single_qubit_kraus(out, k, ops);
  return out;
}

ClusterChain dephase_all(const ClusterChain& chain, DephasingStrength p) {
  return ClusterChain{chain.labels, dephase_all(chain.state, p)};
}

DephasingStrength time_to_strength(double kappa, double tau) {
  if (kappa < 0.0 || tau < 0.0)
    throw std::invalid_argument("time_to_strength: negative rate or time");
  return DephasingStrength(-std::expm1(-kappa * tau));
}

DephasingStrength compose(DephasingStrength p, DephasingStrength q) {
  return DephasingStrength(1.0 - (1.0 - p.value()) * (1.0 - q.value()));
}

}  // namespace clusterfusion
