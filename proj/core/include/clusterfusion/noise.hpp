// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "clusterfusion/cluster.hpp"
#include "clusterfusion/density_matrix.hpp"

namespace clusterfusion {

/// Dephasing strength, a probability-like parameter in [0, 1].
class DephasingStrength {
 public:
  DephasingStrength() = default;
  explicit DephasingStrength(double p);  // throws outside [0, 1]
  double value() const { return p_; }

 private:
  double p_ = 0.0;
};

/// The two computational-basis dephasing operators
///   K1 = diag(1, sqrt(1-p)),  K2 = diag(0, sqrt(p)).
std::array<Eigen::Matrix2cd, 2> dephasing_kraus(DephasingStrength p);

/// Dephases every qubit independently. Equivalent to the full 2^q product
/// Kraus set, applied as 2q single-qubit Kraus applications. Diagonal entries
/// are invariant; entry (i, j) is damped by sqrt(1-p)^popcount(i xor j).
DensityMatrix dephase_all(const DensityMatrix& rho, DephasingStrength p);

/// Same channel on a chain; labels are unchanged.
ClusterChain dephase_all(const ClusterChain& chain, DephasingStrength p);

/// Exponential-decay map p = 1 - exp(-kappa tau). Throws on negative inputs.
DephasingStrength time_to_strength(double kappa, double tau);

/// Serial composition: dephasing by p then p' equals one pass at
/// 1 - (1-p)(1-p').
DephasingStrength compose(DephasingStrength p, DephasingStrength q);

}  // namespace clusterfusion
