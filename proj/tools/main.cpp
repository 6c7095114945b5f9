// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: figure data reproduction, single scenario runs,
// analytic sweeps, Monte Carlo, and method comparison, emitted as CSV or
// JSON. Identical invocations produce byte-identical files; every numeric
// field is serialized with 12 significant digits.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clusterfusion/closed_forms.hpp"
#include "clusterfusion/fusion.hpp"
#include "clusterfusion/noise.hpp"
#include "clusterfusion/strategies.hpp"
#include "clusterfusion/version.hpp"
#include "json.hpp"

using namespace clusterfusion;
using json = nlohmann::ordered_json;

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Round-trips a value through its 12-digit form so JSON output carries the
// same precision as CSV.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

// One cell: a real number, an integer count, a string, or empty.
struct Cell {
  enum class Kind { Number, Integer, Text, Empty } kind = Kind::Empty;
  double number = 0.0;
  std::int64_t integer = 0;
  std::string text;
  Cell() = default;
  Cell(double v) : kind(Kind::Number), number(v) {}
  Cell(std::int64_t v) : kind(Kind::Integer), integer(v) {}
  Cell(int v) : kind(Kind::Integer), integer(v) {}
  Cell(std::string s) : kind(Kind::Text), text(std::move(s)) {}
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

void write_output(const Table& table, const json& metadata, const std::string& out,
                  const std::string& format) {
  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ",";
        switch (row[c].kind) {
          case Cell::Kind::Number: os << fmt12(row[c].number); break;
          case Cell::Kind::Integer: os << row[c].integer; break;
          case Cell::Kind::Text: os << row[c].text; break;
          case Cell::Kind::Empty: break;
        }
      }
      os << "\n";
    }
    text = os.str();
  } else {
    json doc;
    doc["metadata"] = metadata;
    json rows = json::array();
    for (const auto& row : table.rows) {
      json obj;
      for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
        switch (row[c].kind) {
          case Cell::Kind::Number: obj[table.columns[c]] = round12(row[c].number); break;
          case Cell::Kind::Integer: obj[table.columns[c]] = row[c].integer; break;
          case Cell::Kind::Text: obj[table.columns[c]] = row[c].text; break;
          case Cell::Kind::Empty: obj[table.columns[c]] = nullptr; break;
        }
      }
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    text = doc.dump(2);
    text += "\n";
  }

  if (out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + out);
}

json base_metadata(const std::string& command) {
  json m;
  m["tool"] = "clusterfusion";
  m["version"] = kVersion;
  m["command"] = command;
  return m;
}

std::vector<double> grid(double lo, double hi, int steps) {
  std::vector<double> g;
  g.reserve(std::size_t(steps));
  if (steps == 1) {
    g.push_back(lo);
    return g;
  }
  for (int i = 0; i < steps; ++i) g.push_back(lo + (hi - lo) * double(i) / double(steps - 1));
  return g;
}

ClusterChain dephased_primitive(double p, LabelAllocator& alloc) {
  return dephase_all(fresh_primitive(alloc), DephasingStrength(p));
}

ClusterChain build_chain(int q, double p, LabelAllocator& alloc) {
  ClusterChain chain = dephased_primitive(p, alloc);
  for (int len = 2; len < q; ++len) {
    const ClusterChain prim = dephased_primitive(p, alloc);
    chain = std::move(
        fuse(chain, prim, chain.labels.back(), prim.labels.front(), alloc)[0].chains[0]);
  }
  return chain;
}

Strengths uniform_strengths(ScenarioName name, double p) {
  Strengths s;
  s.p2 = p;
  switch (name) {
    case ScenarioName::Method1AllSuccess: break;
    case ScenarioName::Method1Wait: s.p_wait = p; break;
    case ScenarioName::Method1FailFresh:
    case ScenarioName::Method1FailFail:
      s.p3 = s.p4 = s.p_wait = p;
      break;
    case ScenarioName::Method2AllSuccess: s.p3 = p; break;
    case ScenarioName::Method2Fail3:
    case ScenarioName::Method2Fail4:
      s.p3 = s.p4 = s.p5 = p;
      break;
  }
  return s;
}

std::optional<double> scenario_formula(ScenarioName name, const Strengths& s) {
  switch (name) {
    case ScenarioName::Method1AllSuccess: return fidelity_m33(s.p1, s.p2);
    case ScenarioName::Method2AllSuccess: return fidelity_m24(s.p1, s.p2, s.p3);
    default: break;
  }
  if (s.p1 != 0.0) return std::nullopt;  // failure expressions assume fresh primitives
  switch (name) {
    case ScenarioName::Method1Wait: return fidelity_wait33(s.p2, s.p_wait);
    case ScenarioName::Method1FailFresh: return fidelity_fail_fresh(s.p2, s.p3, s.p4, s.p_wait);
    case ScenarioName::Method1FailFail: return fidelity_fail_fail(s.p2, s.p3, s.p4, s.p_wait);
    case ScenarioName::Method2Fail3: return fidelity_fail3(s.p2, s.p3, s.p4, s.p5);
    case ScenarioName::Method2Fail4: return fidelity_fail4(s.p2, s.p3, s.p4, s.p5);
    default: return std::nullopt;
  }
}

// ---- figure ----------------------------------------------------------------

Table figure_table(const std::string& id, int steps) {
  Table t;
  const std::vector<double> ps = grid(0.0, 1.0, steps);

  if (id == "fig1") {
    t.columns = {"p"};
    for (int q = 2; q <= 7; ++q) {
      t.columns.push_back("f_q" + std::to_string(q));
      t.columns.push_back("f_q" + std::to_string(q) + "_sim");
    }
    for (double p : ps) {
      std::vector<Cell> row{p};
      LabelAllocator alloc;
      ClusterChain chain = dephased_primitive(p, alloc);
      for (int q = 2; q <= 7; ++q) {
        if (q > 2) {
          const ClusterChain prim = dephased_primitive(p, alloc);
          chain = std::move(
              fuse(chain, prim, chain.labels.back(), prim.labels.front(), alloc)[0].chains[0]);
        }
        row.emplace_back(chain_fidelity(q, p));
        row.emplace_back(fidelity_pure(chain.state, linear_cluster(q)));
      }
      t.add_row(std::move(row));
    }
    return t;
  }

  if (id == "fig2") {
    t.columns = {"p",        "neg2",    "neg2_formula", "neg3_edge", "neg3_edge_formula",
                 "neg3_mid", "neg3_mid_formula", "neg4_q1", "neg4_q2", "neg4_q12", "neg5_q1"};
    for (double p : ps) {
      LabelAllocator alloc;
      ClusterChain chain = dephased_primitive(p, alloc);
      const double neg2 = min_pt_eigenvalue(chain.state, {1});
      auto grow = [&] {
        const ClusterChain prim = dephased_primitive(p, alloc);
        chain = std::move(
            fuse(chain, prim, chain.labels.back(), prim.labels.front(), alloc)[0].chains[0]);
      };
      grow();
      const double neg3_edge = min_pt_eigenvalue(chain.state, {1});
      const double neg3_mid = min_pt_eigenvalue(chain.state, {2});
      grow();
      const double neg4_q1 = min_pt_eigenvalue(chain.state, {1});
      const double neg4_q2 = min_pt_eigenvalue(chain.state, {2});
      const double neg4_q12 = min_pt_eigenvalue(chain.state, {1, 2});
      grow();
      const double neg5_q1 = min_pt_eigenvalue(chain.state, {1});
      const ThreeChainMetrics m3 = three_chain_metrics(p);
      t.add_row({p, neg2, primitive_metrics(p).negativity, neg3_edge, m3.negativity_edge,
                 neg3_mid, m3.negativity_middle, neg4_q1, neg4_q2, neg4_q12, neg5_q1});
    }
    return t;
  }

  if (id == "fig3-left" || id == "fig3-right") {
    const StrengthBinding binding =
        id == "fig3-left" ? StrengthBinding::Equal : StrengthBinding::FreshPrimitives;
    t.columns = {"p", "m33_sim", "m33_formula", "m24_sim", "m24_formula", "difference"};
    for (const CompareRow& row : compare_methods(ps, binding))
      t.add_row({row.p, row.m33_simulated, row.m33_formula, row.m24_simulated, row.m24_formula,
                 row.difference});
    return t;
  }

  if (id == "fig4-left") {
    t.columns = {"p",          "all_success", "all_success_formula", "wait33", "wait33_formula",
                 "fail_fresh", "fail_fresh_formula", "fail_fail", "fail_fail_formula"};
    for (double p : ps) {
      std::vector<Cell> row{p};
      for (ScenarioName name : {ScenarioName::Method1AllSuccess, ScenarioName::Method1Wait,
                                ScenarioName::Method1FailFresh, ScenarioName::Method1FailFail}) {
        const Strengths s = uniform_strengths(name, p);
        row.emplace_back(run_scenario({name, s}).fidelity);
        row.emplace_back(*scenario_formula(name, s));
      }
      t.add_row(std::move(row));
    }
    return t;
  }

  if (id == "fig4-right") {
    t.columns = {"p",     "all_success",   "all_success_formula", "fail3",
                 "fail3_formula", "fail4", "fail4_formula"};
    for (double p : ps) {
      std::vector<Cell> row{p};
      for (ScenarioName name : {ScenarioName::Method2AllSuccess, ScenarioName::Method2Fail3,
                                ScenarioName::Method2Fail4}) {
        const Strengths s = uniform_strengths(name, p);
        row.emplace_back(run_scenario({name, s}).fidelity);
        row.emplace_back(*scenario_formula(name, s));
      }
      t.add_row(std::move(row));
    }
    return t;
  }

  throw std::runtime_error("unknown figure id: " + id);
}

// ---- sweep -----------------------------------------------------------------

double sweep_quantity(const std::string& name, double p) {
  if (name.rfind("eq2:q=", 0) == 0) {
    const int q = std::stoi(name.substr(6));
    return chain_fidelity(q, p);
  }
  if (name == "rho2:fidelity") return primitive_metrics(p).fidelity;
  if (name == "rho2:purity") return primitive_metrics(p).purity;
  if (name == "rho2:negativity") return primitive_metrics(p).negativity;
  if (name == "rho3:fidelity") return three_chain_metrics(p).fidelity;
  if (name == "rho3:neg-edge") return three_chain_metrics(p).negativity_edge;
  if (name == "rho3:neg-mid") return three_chain_metrics(p).negativity_middle;
  if (name == "m33") return fidelity_m33(p, p);
  if (name == "m24") return fidelity_m24(p, p, p);
  if (name == "m33-fresh") return fidelity_m33(0.0, p);
  if (name == "m24-fresh") return fidelity_m24(0.0, p, p);
  if (name == "wait33") return fidelity_wait33(p, p);
  if (name == "fail-fresh") return fidelity_fail_fresh(p, p, p, p);
  if (name == "fail-fail") return fidelity_fail_fail(p, p, p, p);
  if (name == "fail3") return fidelity_fail3(p, p, p, p);
  if (name == "fail4") return fidelity_fail4(p, p, p, p);
  throw std::runtime_error("unknown sweep quantity: " + name);
}

// ---- mc --------------------------------------------------------------------

Table mc_table(const McPolicy& policy, const McReport& report) {
  Table t;
  t.columns = {"samples",      "seed",          "method",           "recycle",
               "max_attempts", "storage",       "success_rate",     "mean_fidelity",
               "fusion_attempts", "fusion_successes"};
  std::vector<Cell> row{report.samples,
                        std::int64_t(report.seed),
                        policy.method,
                        policy.recycle ? 1 : 0,
                        policy.max_attempts,
                        policy.storage.value(),
                        report.success_rate,
                        report.mean_fidelity,
                        report.fusion_attempts,
                        report.fusion_successes};
  for (int b = 0; b < kFidelityBins; ++b) {
    char name[32];
    std::snprintf(name, sizeof name, "hist_%02d", b);
    t.columns.push_back(name);
    row.emplace_back(report.fidelity_histogram[std::size_t(b)]);
  }
  std::ostringstream prims;
  bool first = true;
  for (const auto& [count, samples] : report.primitives_consumed) {
    prims << (first ? "" : "|") << count << ":" << samples;
    first = false;
  }
  t.columns.push_back("primitives_consumed");
  row.emplace_back(prims.str());
  t.add_row(std::move(row));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear cluster-state construction from dephased two-qubit "
               "primitives: simulation, analytic curves, and Monte Carlo"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // --out/--format may follow the subcommand

  std::string out = "-";
  std::string format = "csv";
  app.add_option("--out", out, "Output path, or - for stdout")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // figure
  auto* fig = app.add_subcommand("figure", "Reproduce a reference figure's data");
  std::string fig_id;
  int fig_steps = 101;
  fig->add_option("--id", fig_id, "Figure id")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3-left", "fig3-right", "fig4-left",
                             "fig4-right"}));
  fig->add_option("--steps", fig_steps, "Grid points on [0, 1]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // scenario
  auto* sc = app.add_subcommand("scenario", "Run one named construction scenario");
  std::string sc_name;
  Strengths sc_strengths;
  sc->add_option("--name", sc_name, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"method1-all-success", "method2-all-success", "method1-wait",
                             "method1-fail-fresh", "method1-fail-fail", "method2-fail3",
                             "method2-fail4"}));
  sc->add_option("--p1", sc_strengths.p1, "Dephasing strength p1");
  sc->add_option("--p2", sc_strengths.p2, "Dephasing strength p2");
  sc->add_option("--p3", sc_strengths.p3, "Dephasing strength p3");
  sc->add_option("--p4", sc_strengths.p4, "Dephasing strength p4");
  sc->add_option("--p5", sc_strengths.p5, "Dephasing strength p5");
  sc->add_option("--p-wait", sc_strengths.p_wait, "Waiting-interval strength");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Evaluate analytic quantities over a strength grid");
  double sw_min = 0.0, sw_max = 1.0;
  int sw_steps = 11;
  std::vector<std::string> sw_quantities;
  sw->add_option("--p-min", sw_min, "Grid start")->capture_default_str();
  sw->add_option("--p-max", sw_max, "Grid end")->capture_default_str();
  sw->add_option("--steps", sw_steps, "Grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sw->add_option("--quantities", sw_quantities,
                 "Comma-separated quantities, e.g. eq2:q=5, rho2:fidelity, rho3:neg-mid, "
                 "m33, wait33, fail3")
      ->required()
      ->delimiter(',');

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo over fusion outcomes");
  McPolicy mc_policy;
  std::int64_t mc_samples = 10000;
  std::uint64_t mc_seed = 1;
  double mc_storage = 0.0;
  mc->add_option("--method", mc_policy.method, "Construction method")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  mc->add_flag("--recycle,!--no-recycle", mc_policy.recycle,
               "Recycle failed-fusion remnants")
      ->capture_default_str();
  mc->add_option("--samples", mc_samples, "Sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--seed", mc_seed, "RNG seed")->capture_default_str();
  mc->add_option("--storage", mc_storage, "Per-interval storage dephasing strength")
      ->capture_default_str();
  mc->add_option("--max-attempts", mc_policy.max_attempts, "Fusion attempt budget per sample")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // compare-methods
  auto* cm = app.add_subcommand("compare-methods",
                                "All-success fidelity of both methods over a grid");
  double cm_min = 0.0, cm_max = 1.0;
  int cm_steps = 11;
  std::string cm_binding = "fresh";
  cm->add_option("--p-min", cm_min, "Grid start")->capture_default_str();
  cm->add_option("--p-max", cm_max, "Grid end")->capture_default_str();
  cm->add_option("--steps", cm_steps, "Grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cm->add_option("--binding", cm_binding, "Strength binding: equal (p1=p) or fresh (p1=0)")
      ->check(CLI::IsMember({"equal", "fresh"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fig) {
      Table t = figure_table(fig_id, fig_steps);
      json meta = base_metadata("figure");
      meta["figure"] = fig_id;
      meta["steps"] = fig_steps;
      write_output(t, meta, out, format);
    } else if (*sc) {
      const ScenarioName name = scenario_from_string(sc_name);
      const ScenarioResult result = run_scenario({name, sc_strengths});
      const std::optional<double> formula = scenario_formula(name, sc_strengths);
      Table t;
      t.columns = {"scenario", "p1", "p2", "p3", "p4", "p5", "p_wait",
                   "fidelity_sim", "fidelity_formula", "branch_probability"};
      std::vector<Cell> row{sc_name,          sc_strengths.p1, sc_strengths.p2,
                            sc_strengths.p3,  sc_strengths.p4, sc_strengths.p5,
                            sc_strengths.p_wait, result.fidelity};
      row.emplace_back(formula ? Cell(*formula) : Cell());
      row.emplace_back(result.branch_probability);
      t.add_row(std::move(row));
      json meta = base_metadata("scenario");
      meta["scenario"] = sc_name;
      write_output(t, meta, out, format);
    } else if (*sw) {
      Table t;
      t.columns = {"p"};
      for (const std::string& q : sw_quantities) t.columns.push_back(q);
      for (double p : grid(sw_min, sw_max, sw_steps)) {
        std::vector<Cell> row{p};
        for (const std::string& q : sw_quantities) row.emplace_back(sweep_quantity(q, p));
        t.add_row(std::move(row));
      }
      json meta = base_metadata("sweep");
      meta["steps"] = sw_steps;
      write_output(t, meta, out, format);
    } else if (*mc) {
      mc_policy.storage = DephasingStrength(mc_storage);
      const McReport report = monte_carlo(mc_policy, mc_samples, mc_seed);
      json meta = base_metadata("mc");
      meta["seed"] = mc_seed;
      write_output(mc_table(mc_policy, report), meta, out, format);
    } else if (*cm) {
      const StrengthBinding binding =
          cm_binding == "equal" ? StrengthBinding::Equal : StrengthBinding::FreshPrimitives;
      Table t;
      t.columns = {"p", "m33_sim", "m24_sim", "m33_formula", "m24_formula", "difference"};
      for (const CompareRow& row : compare_methods(grid(cm_min, cm_max, cm_steps), binding))
        t.add_row({row.p, row.m33_simulated, row.m24_simulated, row.m33_formula,
                   row.m24_formula, row.difference});
      json meta = base_metadata("compare-methods");
      meta["binding"] = cm_binding;
      write_output(t, meta, out, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
