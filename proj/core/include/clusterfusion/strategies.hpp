// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clusterfusion/cluster.hpp"
#include "clusterfusion/fusion.hpp"
#include "clusterfusion/noise.hpp"

namespace clusterfusion {

/// Per-interval storage strengths for the named scenarios. Intervals a
/// scenario does not use are ignored.
struct Strengths {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
  double p5 = 0.0;
  double p_wait = 0.0;
};

/// Deterministic construction storylines for a five-qubit chain. Every
/// cluster is dephased with the interval strength before each fusion it takes
/// part in; failed fusions follow the aggregated failure branch and the
/// remnants are recycled. The event sequences are binding:
///
///  Method1AllSuccess  four primitives (p1) -> two 3-chains, both p2, fused.
///  Method1Wait        as above, one 3-chain additionally waits p_wait
///                     before the common p2.
///  Method1FailFresh   the 3-3 fusion fails; remnant 2-chains take p3 and
///                     are fused into a recycled 3-chain; a fresh 3-chain
///                     waits p_wait; both take p4 and are fused.
///  Method1FailFail    both partners of the final fusion are recycled
///                     3-chains; the second one waits p_wait before the
///                     common p4.
///  Method2AllSuccess  3-chain (p1 primitives) takes p2, fused with a p1
///                     primitive; the 4-chain takes p3, fused with another.
///  Method2Fail3       the second of five fusion attempts fails (3-chain +
///                     primitive); the remnant 2-chain is grown back up with
///                     primitives, the main chain taking p1..p5 before the
///                     successive attempts.
///  Method2Fail4       the third attempt fails (4-chain + primitive); the
///                     failed attempt consumes the oldest end of the chain,
///                     growth continues at the newest end.
enum class ScenarioName {
  Method1AllSuccess,
  Method2AllSuccess,
  Method1Wait,
  Method1FailFresh,
  Method1FailFail,
  Method2Fail3,
  Method2Fail4,
};

std::string to_string(ScenarioName name);
ScenarioName scenario_from_string(const std::string& name);  // kebab-case, e.g. "method1-wait"

struct Scenario {
  ScenarioName name = ScenarioName::Method1AllSuccess;
  Strengths strengths;
};

struct ScenarioResult {
  DensityMatrix state;        // the final five-qubit state
  double fidelity = 0.0;      // against the canonical five-qubit cluster
  double branch_probability;  // product of the followed branch probabilities
};

ScenarioResult run_scenario(const Scenario& scenario);

/// Monte Carlo policy. Before every fusion attempt each chain in the pool
/// (including primitives drawn for that attempt) is dephased once with
/// `storage`. With recycle off, the first failed fusion ends the sample;
/// with recycle on, remnants of length >= 2 return to the pool and singles
/// are discarded. Fresh primitives are unlimited.
struct McPolicy {
  int method = 1;  // 1: fuse equal-length chains, 2: grow one chain by primitives
  bool recycle = true;
  int max_attempts = 64;  // attempts beyond this count the sample as failed
  DephasingStrength storage;
};

inline constexpr int kFidelityBins = 20;  // uniform bins on [0, 1]

struct McReport {
  std::int64_t samples = 0;
  double success_rate = 0.0;
  double mean_fidelity = 0.0;  // over successful samples
  std::array<std::int64_t, kFidelityBins> fidelity_histogram{};
  std::map<int, std::int64_t> primitives_consumed;  // primitives -> sample count
  std::uint64_t seed = 0;
  std::int64_t fusion_attempts = 0;
  std::int64_t fusion_successes = 0;
};

/// Replays the policy `samples` times with fusion outcomes drawn as fair
/// coins. Sample i uses its own engine, mt19937_64 seeded with
/// splitmix64(seed + (i+1) * 0x9E3779B97F4A7C15); samples may therefore be
/// evaluated on any number of threads and the report is identical for a
/// fixed (seed, samples) pair.
McReport monte_carlo(const McPolicy& policy, std::int64_t samples, std::uint64_t seed);

enum class StrengthBinding {
  Equal,            // p1 = p2 = p3 = p
  FreshPrimitives,  // p1 = 0, p2 = p3 = p
};

struct CompareRow {
  double p;
  double m33_simulated;
  double m24_simulated;
  double m33_formula;
  double m24_formula;
  double difference;  // simulated m33 - m24
};

/// All-success fidelities of the two construction methods over a strength
/// grid. The difference column is reported, not asserted small.
std::vector<CompareRow> compare_methods(const std::vector<double>& p_grid,
                                        StrengthBinding binding);

}  // namespace clusterfusion
