// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/fusion.hpp"

#include <random>

#include "clusterfusion/closed_forms.hpp"
#include "clusterfusion/noise.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace clusterfusion;
using clusterfusion::testing::max_entry_diff;

namespace {

ClusterChain canonical_chain(int n, LabelAllocator& alloc) {
  std::vector<int> labels(n);
  for (int& l : labels) l = alloc.allocate();
  return ClusterChain{std::move(labels), DensityMatrix::from_pure(linear_cluster(n))};
}

ClusterChain dephased_primitive(double p, LabelAllocator& alloc) {
  return dephase_all(fresh_primitive(alloc), DephasingStrength(p));
}

}  // namespace

TEST_CASE("measurement branch operators are complete on the measured pair") {
  Eigen::MatrixXcd ks = Eigen::MatrixXcd::Zero(2, 4);
  ks(0, 0) = 1.0;  // |0><00|
  ks(1, 3) = 1.0;  // |1><11|
  Eigen::MatrixXcd f01 = Eigen::MatrixXcd::Zero(1, 4);
  f01(0, 1) = 1.0;
  Eigen::MatrixXcd f10 = Eigen::MatrixXcd::Zero(1, 4);
  f10(0, 2) = 1.0;
  const Eigen::MatrixXcd sum =
      ks.adjoint() * ks + f01.adjoint() * f01 + f10.adjoint() * f10;
  CHECK(max_entry_diff(sum, Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
}

TEST_CASE("fusing two fresh primitives") {
  LabelAllocator alloc;
  const ClusterChain a = fresh_primitive(alloc);  // labels 1,2
  const ClusterChain b = fresh_primitive(alloc);  // labels 3,4
  const auto outcomes = fuse(a, b, 2, 3, alloc);

  REQUIRE(outcomes.size() == 3);
  const FusionOutcome& s = outcomes[0];
  CHECK(s.kind == FusionOutcome::Kind::Success);
  CHECK(s.probability == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(s.chains.size() == 1);
  CHECK(s.chains[0].labels == std::vector<int>{1, 5, 4});
  CHECK(fidelity_pure(s.chains[0].state, linear_cluster(3)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(s.provenance.has_value());
  CHECK(s.provenance->fused == 5);
  CHECK(s.provenance->parent_a == 2);
  CHECK(s.provenance->parent_b == 3);

  for (int k : {1, 2}) {
    const FusionOutcome& f = outcomes[k];
    CHECK(f.kind == FusionOutcome::Kind::Failure);
    CHECK(f.probability == doctest::Approx(0.25).epsilon(1e-12));
    REQUIRE(f.chains.size() == 2);
    CHECK(f.chains[0].labels == std::vector<int>{1});
    CHECK(f.chains[1].labels == std::vector<int>{4});
    for (const ClusterChain& c : f.chains)
      CHECK(fidelity_pure(c.state, linear_cluster(1)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("branch probabilities always sum to one") {
  LabelAllocator alloc;
  for (double p : {0.0, 0.35, 0.9}) {
    const ClusterChain a = dephased_primitive(p, alloc);
    const ClusterChain b = dephased_primitive(p, alloc);
    const auto outcomes = fuse(a, b, a.labels.back(), b.labels.front(), alloc);
    double total = 0;
    for (const auto& o : outcomes) total += o.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("canonical chains fuse canonically for all lengths up to four") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      LabelAllocator alloc;
      const ClusterChain a = canonical_chain(m, alloc);
      const ClusterChain b = canonical_chain(n, alloc);
      const auto outcomes = fuse(a, b, a.labels.back(), b.labels.front(), alloc);

      CHECK(outcomes[0].probability == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(outcomes[0].chains[0].length() == m + n - 1);
      CHECK(fidelity_pure(outcomes[0].chains[0].state, linear_cluster(m + n - 1)) ==
            doctest::Approx(1.0).epsilon(1e-10));

      for (int k : {1, 2}) {
        const auto& f = outcomes[k];
        CHECK(f.chains[0].length() == m - 1);
        CHECK(f.chains[1].length() == n - 1);
        if (m >= 2)
          CHECK(fidelity_pure(f.chains[0].state, linear_cluster(m - 1)) ==
                doctest::Approx(1.0).epsilon(1e-10));
        if (n >= 2)
          CHECK(fidelity_pure(f.chains[1].state, linear_cluster(n - 1)) ==
                doctest::Approx(1.0).epsilon(1e-10));
      }
    }
}

TEST_CASE("success fidelity of dephased primitives matches the chain formula") {
  LabelAllocator alloc;
  for (double p : {0.0, 0.2, 0.5, 0.8}) {
    const ClusterChain a = dephased_primitive(p, alloc);
    const ClusterChain b = dephased_primitive(p, alloc);
    const auto outcomes = fuse(a, b, a.labels.back(), b.labels.front(), alloc);
    CHECK(fidelity_pure(outcomes[0].chains[0].state, linear_cluster(3)) ==
          doctest::Approx(chain_fidelity(3, p)).epsilon(1e-12));
  }
}

TEST_CASE("fusion works on either endpoint, reorienting internally") {
  LabelAllocator alloc;
  const ClusterChain a = canonical_chain(3, alloc);  // 1,2,3
  const ClusterChain b = canonical_chain(2, alloc);  // 4,5
  // Fuse a's front qubit with b's back qubit.
  const auto outcomes = fuse(a, b, 1, 5, alloc);
  const ClusterChain& merged = outcomes[0].chains[0];
  CHECK(merged.labels == std::vector<int>{3, 2, 6, 4});
  CHECK(fidelity_pure(merged.state, linear_cluster(4)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("argument order only flips the chain direction") {
  LabelAllocator alloc;
  const double p = 0.3;
  ClusterChain a1 = dephased_primitive(p, alloc);
  ClusterChain b1 = canonical_chain(3, alloc);
  b1 = dephase_all(b1, DephasingStrength(0.15));

  ClusterChain a2{a1.labels, a1.state};
  ClusterChain b2{b1.labels, b1.state};

  const auto ab = fuse(a1, b1, a1.labels.back(), b1.labels.front(), alloc);
  const auto ba = fuse(b2, a2, b2.labels.front(), a2.labels.back(), alloc);

  const ClusterChain lhs = ab[0].chains[0];
  const ClusterChain rhs = reversed(ba[0].chains[0]);
  CHECK(ab[0].probability == doctest::Approx(ba[0].probability).epsilon(1e-12));
  // Same chain up to the fused label's identity and direction.
  CHECK(max_entry_diff(lhs.state.matrix(), rhs.state.matrix()) < kStructuralTol);
}

TEST_CASE("length-1 chains may fuse; their failure destroys them") {
  LabelAllocator alloc;
  const ClusterChain single = canonical_chain(1, alloc);
  const ClusterChain pair = canonical_chain(2, alloc);
  const auto outcomes = fuse(pair, single, pair.labels.back(), single.labels.front(), alloc);
  CHECK(outcomes[0].chains[0].length() == 2);
  CHECK(fidelity_pure(outcomes[0].chains[0].state, linear_cluster(2)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(outcomes[1].chains[1].length() == 0);
  CHECK(outcomes[1].chains[1].state.qubits() == 0);
}

TEST_CASE("fuse input validation") {
  LabelAllocator alloc;
  const ClusterChain a = canonical_chain(3, alloc);
  const ClusterChain b = canonical_chain(2, alloc);
  CHECK_THROWS_AS(fuse(a, b, 2, b.labels.front(), alloc), std::invalid_argument);
  ClusterChain clash = b;
  clash.labels[0] = a.labels[0];
  CHECK_THROWS_AS(fuse(a, clash, a.labels.back(), clash.labels.front(), alloc),
                  std::invalid_argument);
}

TEST_CASE("aggregate_failure") {
  LabelAllocator alloc;
  SUBCASE("pure primitives collapse to |+> remnants with probability 1/2") {
    const ClusterChain a = fresh_primitive(alloc);
    const ClusterChain b = fresh_primitive(alloc);
    const auto agg = aggregate_failure(fuse(a, b, a.labels.back(), b.labels.front(), alloc));
    CHECK(agg.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity_pure(agg.remnant_a.state, linear_cluster(1)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity_pure(agg.remnant_b.state, linear_cluster(1)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("dephased inputs give valid mixed remnants") {
    const ClusterChain a = dephase_all(canonical_chain(3, alloc), DephasingStrength(0.4));
    const ClusterChain b = dephase_all(canonical_chain(3, alloc), DephasingStrength(0.4));
    const auto agg = aggregate_failure(fuse(a, b, a.labels.back(), b.labels.front(), alloc));
    for (const ClusterChain* c : {&agg.remnant_a, &agg.remnant_b}) {
      CHECK(c->state.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(hermitian_eigenvalues(c->state.matrix()).front() >= -kSpectralTol);
    }
  }
  SUBCASE("branches from different fuse calls are rejected") {
    const ClusterChain a = fresh_primitive(alloc);
    const ClusterChain b = fresh_primitive(alloc);
    const ClusterChain c = fresh_primitive(alloc);
    const ClusterChain d = fresh_primitive(alloc);
    auto o1 = fuse(a, b, a.labels.back(), b.labels.front(), alloc);
    const auto o2 = fuse(c, d, c.labels.back(), d.labels.front(), alloc);
    o1[2] = o2[2];
    CHECK_THROWS_AS(aggregate_failure(o1), std::invalid_argument);
    CHECK_THROWS_AS(aggregate_failure({o1[0]}), std::invalid_argument);
  }
}
