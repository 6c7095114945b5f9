// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/strategies.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

#include "clusterfusion/closed_forms.hpp"

namespace clusterfusion {

namespace {

// One deterministic construction run: owns the label counter and accumulates
// the probability of the branches actually followed.
struct Runner {
  LabelAllocator alloc;
  double probability = 1.0;

  ClusterChain primitive(DephasingStrength p1) {
    ClusterChain c = fresh_primitive(alloc);
    return p1.value() > 0.0 ? dephase_all(c, p1) : c;
  }

  ClusterChain succeed(const ClusterChain& a, const ClusterChain& b, int edge_a, int edge_b) {
    auto outcomes = fuse(a, b, edge_a, edge_b, alloc);
    probability *= outcomes[0].probability;
    return std::move(outcomes[0].chains[0]);
  }

  ClusterChain succeed(const ClusterChain& a, const ClusterChain& b) {
    return succeed(a, b, a.labels.back(), b.labels.front());
  }

  AggregatedFailure fail(const ClusterChain& a, const ClusterChain& b, int edge_a, int edge_b) {
    auto agg = aggregate_failure(fuse(a, b, edge_a, edge_b, alloc));
    probability *= agg.probability;
    return agg;
  }

  ClusterChain three_chain(DephasingStrength p1) {
    const ClusterChain a = primitive(p1);
    const ClusterChain b = primitive(p1);
    return succeed(a, b);
  }

  // Recycled 3-chain: a failed 3-3 fusion whose 2-chain remnants take p3 and
  // are fused back together.
  ClusterChain recycled_three_chain(DephasingStrength p1, DephasingStrength p2,
                                    DephasingStrength p3) {
    ClusterChain a = dephase_all(three_chain(p1), p2);
    ClusterChain b = dephase_all(three_chain(p1), p2);
    AggregatedFailure agg = fail(a, b, a.labels.back(), b.labels.front());
    const ClusterChain ra = dephase_all(agg.remnant_a, p3);
    const ClusterChain rb = dephase_all(agg.remnant_b, p3);
    return succeed(ra, rb);
  }
};

ScenarioResult finish(Runner& run, ClusterChain five) {
  if (five.length() != 5)
    throw std::logic_error("run_scenario: final chain has length " + std::to_string(five.length()));
  const double f = fidelity_pure(five.state, linear_cluster(5));
  return ScenarioResult{std::move(five.state), f, run.probability};
}

ScenarioResult method1_all_success(const Strengths& s, double extra_wait) {
  Runner run;
  const DephasingStrength p1(s.p1), p2(s.p2);
  ClusterChain a = run.three_chain(p1);
  const ClusterChain b = run.three_chain(p1);
  if (extra_wait > 0.0) a = dephase_all(a, DephasingStrength(extra_wait));
  return finish(run, run.succeed(dephase_all(a, p2), dephase_all(b, p2)));
}

ScenarioResult method1_fail_fresh(const Strengths& s) {
  Runner run;
  const DephasingStrength p1(s.p1), p4(s.p4), pw(s.p_wait);
  ClusterChain rec = run.recycled_three_chain(p1, DephasingStrength(s.p2), DephasingStrength(s.p3));
  ClusterChain fresh = dephase_all(run.three_chain(p1), pw);
  return finish(run, run.succeed(dephase_all(rec, p4), dephase_all(fresh, p4)));
}

ScenarioResult method1_fail_fail(const Strengths& s) {
  Runner run;
  const DephasingStrength p1(s.p1), p2(s.p2), p3(s.p3), p4(s.p4), pw(s.p_wait);
  ClusterChain first = run.recycled_three_chain(p1, p2, p3);
  ClusterChain second = dephase_all(run.recycled_three_chain(p1, p2, p3), pw);
  return finish(run, run.succeed(dephase_all(first, p4), dephase_all(second, p4)));
}

ScenarioResult method2_all_success(const Strengths& s) {
  Runner run;
  const DephasingStrength p1(s.p1), p2(s.p2), p3(s.p3);
  ClusterChain main = run.three_chain(p1);
  main = run.succeed(dephase_all(main, p2), run.primitive(p1));
  main = run.succeed(dephase_all(main, p3), run.primitive(p1));
  return finish(run, std::move(main));
}

// Method 2 failure storylines: five attempts total, the main chain taking
// p2..p5 before attempts 2..5; a failed attempt's primitive leftover is a
// single photon and is discarded.
ScenarioResult method2_fail3(const Strengths& s) {
  Runner run;
  const DephasingStrength p1(s.p1), p2(s.p2), p3(s.p3), p4(s.p4), p5(s.p5);
  ClusterChain main = run.three_chain(p1);                       // attempt 1
  main = dephase_all(main, p2);
  {
    const ClusterChain prim = run.primitive(p1);                 // attempt 2 fails
    main = run.fail(main, prim, main.labels.back(), prim.labels.front()).remnant_a;
  }
  main = run.succeed(dephase_all(main, p3), run.primitive(p1));  // attempt 3
  main = run.succeed(dephase_all(main, p4), run.primitive(p1));  // attempt 4
  main = run.succeed(dephase_all(main, p5), run.primitive(p1));  // attempt 5
  return finish(run, std::move(main));
}

ScenarioResult method2_fail4(const Strengths& s) {
  Runner run;
  const DephasingStrength p1(s.p1), p2(s.p2), p3(s.p3), p4(s.p4), p5(s.p5);
  ClusterChain main = run.three_chain(p1);                       // attempt 1
  main = run.succeed(dephase_all(main, p2), run.primitive(p1));  // attempt 2
  main = dephase_all(main, p3);
  {
    // Attempt 3 fails at the oldest end of the chain; growth continues at
    // the newest end.
    const ClusterChain prim = run.primitive(p1);
    main = run.fail(main, prim, main.labels.front(), prim.labels.front()).remnant_a;
  }
  main = run.succeed(dephase_all(main, p4), run.primitive(p1));  // attempt 4
  main = run.succeed(dephase_all(main, p5), run.primitive(p1));  // attempt 5
  return finish(run, std::move(main));
}

}  // namespace

std::string to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::Method1AllSuccess: return "method1-all-success";
    case ScenarioName::Method2AllSuccess: return "method2-all-success";
    case ScenarioName::Method1Wait: return "method1-wait";
    case ScenarioName::Method1FailFresh: return "method1-fail-fresh";
    case ScenarioName::Method1FailFail: return "method1-fail-fail";
    case ScenarioName::Method2Fail3: return "method2-fail3";
    case ScenarioName::Method2Fail4: return "method2-fail4";
  }
  throw std::invalid_argument("to_string: bad scenario");
}

ScenarioName scenario_from_string(const std::string& name) {
  for (ScenarioName s : {ScenarioName::Method1AllSuccess, ScenarioName::Method2AllSuccess,
                         ScenarioName::Method1Wait, ScenarioName::Method1FailFresh,
                         ScenarioName::Method1FailFail, ScenarioName::Method2Fail3,
                         ScenarioName::Method2Fail4})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scenario name: " + name);
}

ScenarioResult run_scenario(const Scenario& scenario) {
  switch (scenario.name) {
    case ScenarioName::Method1AllSuccess: return method1_all_success(scenario.strengths, 0.0);
    case ScenarioName::Method1Wait:
      return method1_all_success(scenario.strengths, scenario.strengths.p_wait);
    case ScenarioName::Method1FailFresh: return method1_fail_fresh(scenario.strengths);
    case ScenarioName::Method1FailFail: return method1_fail_fail(scenario.strengths);
    case ScenarioName::Method2AllSuccess: return method2_all_success(scenario.strengths);
    case ScenarioName::Method2Fail3: return method2_fail3(scenario.strengths);
    case ScenarioName::Method2Fail4: return method2_fail4(scenario.strengths);
  }
  throw std::invalid_argument("run_scenario: bad scenario");
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct CoinStream {
  std::mt19937_64 eng;
  explicit CoinStream(std::uint64_t s) : eng(s) {}
  bool flip() { return (eng() >> 63) == 0; }  // fair coin from the top bit
};

struct SampleStats {
  bool success = false;
  double fidelity = 0.0;
  int primitives = 0;
  int attempts = 0;
  int fusion_successes = 0;
};

constexpr int kTargetLength = 5;

SampleStats run_sample_method1(const McPolicy& policy, CoinStream& coins) {
  SampleStats st;
  Runner run;
  std::vector<ClusterChain> pool;

  while (true) {
    for (const ClusterChain& c : pool)
      if (c.length() == kTargetLength) {
        st.success = true;
        st.fidelity = fidelity_pure(c.state, linear_cluster(kTargetLength));
        return st;
      }
    if (st.attempts >= policy.max_attempts) return st;

    // Pick the pair to fuse: two 3-chains if available, otherwise two
    // 2-chains, topping the pool up with fresh primitives.
    auto count_len = [&](int len) {
      return int(std::count_if(pool.begin(), pool.end(),
                               [len](const ClusterChain& c) { return c.length() == len; }));
    };
    int pair_len = 3;
    if (count_len(3) < 2) {
      pair_len = 2;
      while (count_len(2) < 2) {
        pool.push_back(fresh_primitive(run.alloc));
        ++st.primitives;
      }
    }

    // Storage interval before the attempt hits everything in the pool.
    for (ClusterChain& c : pool) c = dephase_all(c, policy.storage);

    int ia = -1, ib = -1;
    for (int i = 0; i < int(pool.size()); ++i)
      if (pool[i].length() == pair_len) {
        if (ia < 0) ia = i;
        else if (ib < 0) { ib = i; break; }
      }

    ++st.attempts;
    auto outcomes = fuse(pool[ia], pool[ib], pool[ia].labels.back(), pool[ib].labels.front(),
                         run.alloc);
    std::vector<ClusterChain> next;
    for (int i = 0; i < int(pool.size()); ++i)
      if (i != ia && i != ib) next.push_back(std::move(pool[i]));
    if (coins.flip()) {
      ++st.fusion_successes;
      next.push_back(std::move(outcomes[0].chains[0]));
    } else {
      if (!policy.recycle) return st;
      AggregatedFailure agg = aggregate_failure(outcomes);
      if (agg.remnant_a.length() >= 2) next.push_back(std::move(agg.remnant_a));
      if (agg.remnant_b.length() >= 2) next.push_back(std::move(agg.remnant_b));
    }
    pool = std::move(next);
  }
}

SampleStats run_sample_method2(const McPolicy& policy, CoinStream& coins) {
  SampleStats st;
  Runner run;
  std::vector<ClusterChain> pool;  // the main chain plus primitives for the attempt

  while (true) {
    if (!pool.empty() && pool.front().length() == kTargetLength) {
      st.success = true;
      st.fidelity = fidelity_pure(pool.front().state, linear_cluster(kTargetLength));
      return st;
    }
    if (st.attempts >= policy.max_attempts) return st;

    const bool bootstrap = pool.empty();
    pool.push_back(fresh_primitive(run.alloc));
    ++st.primitives;
    if (bootstrap) {
      pool.push_back(fresh_primitive(run.alloc));
      ++st.primitives;
    }
    for (ClusterChain& c : pool) c = dephase_all(c, policy.storage);

    ++st.attempts;
    auto outcomes =
        fuse(pool[0], pool[1], pool[0].labels.back(), pool[1].labels.front(), run.alloc);
    if (coins.flip()) {
      ++st.fusion_successes;
      pool = {std::move(outcomes[0].chains[0])};
    } else {
      if (!policy.recycle) return st;
      AggregatedFailure agg = aggregate_failure(outcomes);
      pool.clear();
      if (agg.remnant_a.length() >= 2) pool.push_back(std::move(agg.remnant_a));
      // remnant_b is the primitive's leftover photon; always discarded
    }
  }
}

SampleStats run_sample(const McPolicy& policy, std::uint64_t seed, std::int64_t index) {
  CoinStream coins(splitmix64(seed + std::uint64_t(index + 1) * 0x9E3779B97F4A7C15ULL));
  return policy.method == 1 ? run_sample_method1(policy, coins)
                            : run_sample_method2(policy, coins);
}

}  // namespace

McReport monte_carlo(const McPolicy& policy, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("monte_carlo: samples must be >= 1");
  if (policy.method != 1 && policy.method != 2)
    throw std::invalid_argument("monte_carlo: method must be 1 or 2");
  if (policy.max_attempts < 1) throw std::invalid_argument("monte_carlo: max_attempts must be >= 1");

  std::vector<SampleStats> stats(static_cast<std::size_t>(samples));
  unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, 16);
  if (samples < 512) nthreads = 1;

  if (nthreads == 1) {
    for (std::int64_t i = 0; i < samples; ++i) stats[std::size_t(i)] = run_sample(policy, seed, i);
  } else {
    std::vector<std::thread> workers;
    const std::int64_t chunk = (samples + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const std::int64_t lo = std::int64_t(t) * chunk;
      const std::int64_t hi = std::min<std::int64_t>(samples, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] {
        for (std::int64_t i = lo; i < hi; ++i) stats[std::size_t(i)] = run_sample(policy, seed, i);
      });
    }
    for (auto& w : workers) w.join();
  }

  // Deterministic reduction in sample order.
  McReport report;
  report.samples = samples;
  report.seed = seed;
  std::int64_t successes = 0;
  double fid_sum = 0.0;
  for (const SampleStats& s : stats) {
    report.fusion_attempts += s.attempts;
    report.fusion_successes += s.fusion_successes;
    ++report.primitives_consumed[s.primitives];
    if (s.success) {
      ++successes;
      fid_sum += s.fidelity;
      const int bin = std::min(kFidelityBins - 1, int(s.fidelity * kFidelityBins));
      ++report.fidelity_histogram[std::max(0, bin)];
    }
  }
  report.success_rate = double(successes) / double(samples);
  report.mean_fidelity = successes > 0 ? fid_sum / double(successes) : 0.0;
  return report;
}

std::vector<CompareRow> compare_methods(const std::vector<double>& p_grid,
                                        StrengthBinding binding) {
  std::vector<CompareRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    const double p1 = binding == StrengthBinding::Equal ? p : 0.0;
    Strengths s1{p1, p, 0, 0, 0, 0};
    Strengths s2{p1, p, p, 0, 0, 0};
    CompareRow row;
    row.p = p;
    row.m33_simulated = run_scenario({ScenarioName::Method1AllSuccess, s1}).fidelity;
    row.m24_simulated = run_scenario({ScenarioName::Method2AllSuccess, s2}).fidelity;
    row.m33_formula = fidelity_m33(p1, p);
    row.m24_formula = fidelity_m24(p1, p, p);
    row.difference = row.m33_simulated - row.m24_simulated;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace clusterfusion
