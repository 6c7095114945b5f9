// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/noise.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "clusterfusion/closed_forms.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace clusterfusion;
using clusterfusion::testing::max_entry_diff;
using clusterfusion::testing::random_state;

TEST_CASE("dephasing_kraus endpoints and completeness") {
  {
    const auto ks = dephasing_kraus(DephasingStrength(0.0));
    CHECK(max_entry_diff(ks[0], Eigen::Matrix2cd::Identity()) < kStructuralTol);
    CHECK(ks[1].cwiseAbs().maxCoeff() < kStructuralTol);
  }
  {
    const auto ks = dephasing_kraus(DephasingStrength(1.0));
    Eigen::Matrix2cd d10 = Eigen::Matrix2cd::Zero(), d01 = Eigen::Matrix2cd::Zero();
    d10(0, 0) = 1.0;
    d01(1, 1) = 1.0;
    CHECK(max_entry_diff(ks[0], d10) < kStructuralTol);
    CHECK(max_entry_diff(ks[1], d01) < kStructuralTol);
  }
  {
    const auto ks = dephasing_kraus(DephasingStrength(0.37));
    const Eigen::Matrix2cd sum = ks[0].adjoint() * ks[0] + ks[1].adjoint() * ks[1];
    CHECK(max_entry_diff(sum, Eigen::Matrix2cd::Identity()) < kStructuralTol);
  }
  CHECK_THROWS_AS(DephasingStrength(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(DephasingStrength(1.1), std::invalid_argument);
}

TEST_CASE("dephase_all leaves diagonals and damps off-diagonals by hamming weight") {
  std::mt19937_64 rng(31);
  const double p = 0.42;
  const double s = std::sqrt(1.0 - p);
  for (int q = 1; q <= 3; ++q) {
    const DensityMatrix rho = random_state(q, rng);
    const DensityMatrix out = dephase_all(rho, DephasingStrength(p));
    CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index i = 0; i < rho.dim(); ++i)
      for (Eigen::Index j = 0; j < rho.dim(); ++j) {
        const int h = std::popcount(static_cast<unsigned>(i ^ j));
        CHECK(std::abs(out.matrix()(i, j) - rho.matrix()(i, j) * std::pow(s, h)) <
              kStructuralTol);
      }
  }
}

TEST_CASE("dephase_all with p = 0 is the identity channel") {
  std::mt19937_64 rng(37);
  const DensityMatrix rho = random_state(2, rng);
  CHECK(max_entry_diff(dephase_all(rho, DephasingStrength(0.0)).matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("dephased primitive reproduces the analytic fidelity and purity curves") {
  LabelAllocator alloc;
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const ClusterChain c = dephase_all(fresh_primitive(alloc), DephasingStrength(p));
    const PrimitiveMetrics m = primitive_metrics(p);
    CHECK(std::abs(fidelity_pure(c.state, linear_cluster(2)) - m.fidelity) < kStructuralTol);
    CHECK(std::abs(purity(c.state) - m.purity) < kStructuralTol);
  }
}

TEST_CASE("serial dephasings compose as p'' = 1 - (1-p)(1-p')") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const DensityMatrix rho = random_state(3, rng);
    const DephasingStrength a(0.3), b(0.45);
    const DensityMatrix twice = dephase_all(dephase_all(rho, a), b);
    const DensityMatrix once = dephase_all(rho, compose(a, b));
    CHECK(max_entry_diff(twice.matrix(), once.matrix()) < kStructuralTol);
  }
}

TEST_CASE("dephasing different qubits commutes") {
  std::mt19937_64 rng(43);
  const DensityMatrix rho = random_state(3, rng);
  const auto ks = dephasing_kraus(DephasingStrength(0.6));
  const std::vector<Eigen::Matrix2cd> ops{ks[0], ks[1]};
  const DensityMatrix ab = apply_single_qubit_kraus(apply_single_qubit_kraus(rho, 1, ops), 3, ops);
  const DensityMatrix ba = apply_single_qubit_kraus(apply_single_qubit_kraus(rho, 3, ops), 1, ops);
  CHECK(max_entry_diff(ab.matrix(), ba.matrix()) < kStructuralTol);
}

TEST_CASE("negativity of the dephased primitive follows the closed form") {
  LabelAllocator alloc;
  for (double p = 0.0; p <= 0.8001; p += 0.1) {
    const ClusterChain c = dephase_all(fresh_primitive(alloc), DephasingStrength(p));
    CHECK(min_pt_eigenvalue(c.state, {2}) ==
          doctest::Approx(primitive_metrics(p).negativity).epsilon(1e-10));
  }
}

TEST_CASE("time_to_strength") {
  CHECK(time_to_strength(1.0, 0.0).value() == 0.0);
  CHECK(time_to_strength(0.0, 5.0).value() == 0.0);
  CHECK(time_to_strength(1.0, std::log(2.0)).value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(time_to_strength(2.0, 400.0).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(time_to_strength(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(time_to_strength(1.0, -1.0), std::invalid_argument);
}
