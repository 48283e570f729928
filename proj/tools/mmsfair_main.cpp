//
// Copyright 2026 The mmsfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// mmsfair: command-line front end for the mmsfair library.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmsfair/adversary.hpp"
#include "mmsfair/instance.hpp"
#include "mmsfair/mechanisms.hpp"
#include "mmsfair/mms.hpp"
#include "mmsfair/seqbuild.hpp"
#include "mmsfair/strategy.hpp"

namespace {

using namespace mmsfair;

constexpr int kExitOk = 0;
constexpr int kExitFound = 1;
constexpr int kExitUsage = 2;

/// Collects output either as key=value records or as human-readable text.
class Out {
 public:
  explicit Out(bool machine) : machine_(machine) {}

  void kv(const std::string& key, const std::string& value) {
    if (machine_) std::cout << key << "=" << value << "\n";
  }
  void kv(const std::string& key, const Rational& value) { kv(key, value.str()); }
  void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
  void text(const std::string& line) {
    if (!machine_) std::cout << line << "\n";
  }
  bool machine() const { return machine_; }

 private:
  bool machine_;
};

std::string fixed(double x, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  try {
    return parse_instance(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty grid entry in '" + text + "'");
    grid.push_back(Rational::parse(tok));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

MechanismId mechanism_from(const std::string& name, const std::string& epsilon) {
  MechanismId id;
  id.kind = parse_mechanism(name);
  if (!epsilon.empty()) id.epsilon = Rational::parse(epsilon);
  return id;
}

std::string ratio_text(const ApproxRatio& r) { return r.str(); }

// ---------------------------------------------------------------------------

struct MmsArgs {
  std::string instance;
  int parts = 0;
};

int cmd_mms(const MmsArgs& a, Out& out) {
  Instance inst = load_instance(a.instance);
  const int parts = a.parts > 0 ? a.parts : inst.n();
  out.text("maximin shares with " + std::to_string(parts) + " parts:");
  for (int i = 0; i < inst.n(); ++i) {
    MmsQuery q = full_query(inst, i);
    q.parts = parts;
    Rational mu = maximin_share(inst, q);
    out.kv("mu_" + std::to_string(i + 1), mu);
    out.text("  mu_" + std::to_string(i + 1) + " = " + mu.str());
  }
  return kExitOk;
}

struct RunArgs {
  std::string instance;
  std::string mech;
  std::string model;
  std::string epsilon;
  std::uint64_t seed = 0;
  std::string report;
};

int cmd_run(const RunArgs& a, Out& out) {
  Instance inst = load_instance(a.instance);
  MechanismId id = mechanism_from(a.mech, a.epsilon);
  ModelKind model = parse_model(a.model);
  Allocation alloc = run_mechanism(id, model, inst, a.seed);
  auto shares = maximin_shares(inst);
  ApproxRatio overall = approximation_ratio(inst, alloc, shares);

  std::vector<std::pair<std::string, std::string>> rec;
  rec.emplace_back("mechanism", std::string(mechanism_name(id.kind)));
  rec.emplace_back("model", std::string(model_name(model)));
  rec.emplace_back("allocation", format_allocation(alloc));
  for (int i = 0; i < inst.n(); ++i) {
    std::string k = std::to_string(i + 1);
    Rational v = bundle_value(inst, i, alloc.bundles[i]);
    ApproxRatio r = shares[i].is_zero() ? ApproxRatio::unbounded() : ApproxRatio::of(v / shares[i]);
    rec.emplace_back("bundle_" + k, format_items(alloc.bundles[i]));
    rec.emplace_back("value_" + k, v.str());
    rec.emplace_back("mu_" + k, shares[i].str());
    rec.emplace_back("ratio_" + k, ratio_text(r));
  }
  rec.emplace_back("overall_ratio", ratio_text(overall));
  std::string bound = "none";
  try {
    bound = theoretical_ratio(id, inst.n(), inst.m()).str();
  } catch (const MechanismError&) {
  }
  rec.emplace_back("theoretical_bound", bound);

  for (const auto& [k, v] : rec) out.kv(k, v);
  out.text(std::string(mechanism_name(id.kind)) + " in the " + std::string(model_name(model)) + " model");
  out.text("allocation: " + format_allocation(alloc));
  for (int i = 0; i < inst.n(); ++i) {
    std::string k = std::to_string(i + 1);
    Rational v = bundle_value(inst, i, alloc.bundles[i]);
    std::string r = shares[i].is_zero() ? "unbounded" : (v / shares[i]).str();
    out.text("  player " + k + ": bundle " + format_items(alloc.bundles[i]) + ", value " + v.str() + ", mu " +
             shares[i].str() + ", ratio " + r);
  }
  out.text("overall ratio: " + ratio_text(overall) + " (guaranteed: " + bound + ")");

  if (!a.report.empty()) {
    std::ofstream f(a.report);
    if (!f) throw std::runtime_error("cannot write report file '" + a.report + "'");
    for (const auto& [k, v] : rec) f << k << "=" << v << "\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string mech;
  std::string model;
  std::string epsilon;
  int n = 2;
  int m = 4;
  std::string grid;
  std::int64_t budget = kDefaultGridBudget;
};

int cmd_verify(const VerifyArgs& a, Out& out) {
  MechanismId id = mechanism_from(a.mech, a.epsilon);
  ModelKind model = parse_model(a.model);
  auto grid = parse_grid(a.grid);
  GridSummary s = verify_truthful_on_grid(id, model, a.n, a.m, grid, a.budget);
  out.kv("mechanism", std::string(mechanism_name(id.kind)));
  out.kv("model", std::string(model_name(model)));
  out.kv("instances", s.instances);
  out.kv("searches", s.searches);
  out.kv("violations", s.violations);
  out.kv("search_complete", s.all_complete ? "true" : "false");
  out.kv("oblivious_certificate", s.oblivious_certificate ? "true" : "false");
  if (s.oblivious_certificate) {
    out.text(std::string(mechanism_name(id.kind)) + " ignores its input; truthful by certificate, nothing enumerated");
  } else {
    out.text("checked " + std::to_string(s.instances) + " instances, " + std::to_string(s.searches) +
             " deviation searches (" + (s.all_complete ? "exhaustive" : "not exhaustive for every instance") + ")");
    out.text("violations: " + std::to_string(s.violations));
  }
  if (s.witness) {
    const auto& w = *s.witness;
    const Instance& inst = *s.witness_instance;
    std::string rows;
    for (int i = 0; i < inst.n(); ++i) rows += (i ? " / " : "") + format_row(inst.row(i));
    out.kv("witness_instance", rows);
    out.kv("witness_player", static_cast<long long>(w.player + 1));
    out.kv("witness_report", format_misreport(*w.witness));
    out.kv("witness_truthful_value", w.truthful_value);
    out.kv("witness_deviation_value", w.best_deviation_value);
    out.text("first witness: instance " + rows + ", player " + std::to_string(w.player + 1) + " reports " +
             format_misreport(*w.witness) + " and gets " + w.best_deviation_value.str() + " instead of " +
             w.truthful_value.str());
  }
  return s.violations > 0 ? kExitFound : kExitOk;
}

struct ChainArgs {
  std::string fixture;
  std::string fixture_file;
  std::string mech;
  std::string model;
  std::string epsilon;
};

int cmd_chain(const ChainArgs& a, Out& out) {
  ChainFixture fix;
  if (!a.fixture_file.empty()) {
    std::ifstream in(a.fixture_file);
    if (!in) throw std::runtime_error("cannot open fixture file '" + a.fixture_file + "'");
    try {
      fix = parse_fixture(in);
    } catch (const ParseError& e) {
      throw std::runtime_error(a.fixture_file + ": " + e.what());
    }
  } else {
    fix = builtin_fixture(a.fixture, a.epsilon.empty() ? Rational(1, 10) : Rational::parse(a.epsilon));
  }
  MechanismId id;
  id.kind = parse_mechanism(a.mech);
  ModelKind model = parse_model(a.model);
  ChainReport r = run_chain(fix, id, model);

  out.kv("fixture", r.fixture);
  out.kv("mechanism", std::string(mechanism_name(id.kind)));
  out.kv("model", std::string(model_name(model)));
  out.kv("threshold", r.threshold);
  out.kv("premise_met", r.premise_met ? "true" : "false");
  out.kv("mirrored", r.mirrored ? "true" : "false");
  out.text("fixture " + r.fixture + ", threshold " + r.threshold.str() + ", " +
           (r.premise_met ? std::string("premise met") : std::string("premise NOT met")) +
           (r.mirrored ? " (players swapped)" : ""));
  for (std::size_t k = 0; k < r.profiles.size(); ++k) {
    const auto& p = r.profiles[k];
    std::string key = "profile_" + std::to_string(k + 1);
    out.kv(key + "_allocation", format_allocation(p.allocation));
    std::string line = "  profile " + std::to_string(k + 1) + ": " + format_allocation(p.allocation) + " ratios";
    for (std::size_t i = 0; i < p.ratios.size(); ++i) {
      out.kv(key + "_ratio_" + std::to_string(i + 1), p.ratios[i].str());
      line += " " + p.ratios[i].str();
    }
    out.text(line);
  }
  for (std::size_t k = 0; k < r.edges.size(); ++k) {
    const auto& e = r.edges[k];
    std::string tag = std::to_string(e.edge.from + 1) + "->" + std::to_string(e.edge.to + 1) + " p" +
                      std::to_string(e.edge.player + 1);
    out.kv("edge_" + std::to_string(k + 1), tag + " gain " + e.gain.str());
    out.text("  edge " + tag + ": gain " + e.gain.str());
  }
  out.kv("verdict", std::string(verdict_name(r.verdict)));
  std::string detail;
  if (r.verdict == Verdict::ApproxFailure) {
    out.kv("failing_profile", static_cast<long long>(r.failing_profile + 1));
    out.kv("failing_player", static_cast<long long>(r.failing_player + 1));
    out.kv("failing_ratio", r.failing_ratio->str());
    detail = " at profile " + std::to_string(r.failing_profile + 1) + ", player " +
             std::to_string(r.failing_player + 1) + ", ratio " + r.failing_ratio->str();
  } else if (r.verdict == Verdict::Manipulable) {
    const auto& e = r.edges[r.manipulable_edge];
    out.kv("manipulable_edge", static_cast<long long>(r.manipulable_edge + 1));
    out.kv("gain", e.gain);
    detail = " via edge " + std::to_string(e.edge.from + 1) + "->" + std::to_string(e.edge.to + 1) + " (p" +
             std::to_string(e.edge.player + 1) + " gains " + e.gain.str() + ")";
  }
  out.text("verdict: " + std::string(verdict_name(r.verdict)) + detail);
  return r.verdict == Verdict::Consistent ? kExitFound : kExitOk;
}

struct AdversaryArgs {
  int n = 3;
  int m = 6;
  std::string alpha;
  bool exhaustive = false;
};

int cmd_adversary(const AdversaryArgs& a, Out& out) {
  Rational alpha = a.alpha.empty() ? Rational{1} / harmonic_number(a.n) + Rational(1, 100) : Rational::parse(a.alpha);
  OrdinalBoundCheck c = ordinal_lower_bound_check(a.n, a.m, alpha);
  std::string terms;
  for (std::size_t k = 0; k < c.terms.size(); ++k) terms += (k ? "+" : "") + std::to_string(c.terms[k]);
  out.kv("alpha", alpha);
  out.kv("terms", terms);
  out.kv("sum", static_cast<long long>(c.sum));
  out.kv("m", static_cast<long long>(c.m));
  out.kv("verdict", std::string(bound_verdict_name(c.verdict)));
  out.text("alpha = " + alpha.str() + ": " + terms + " = " + std::to_string(c.sum) +
           (c.sum > c.m ? " > " : " <= ") + std::to_string(c.m) + " -> " + std::string(bound_verdict_name(c.verdict)));
  for (int i = 1; i <= a.n; ++i) {
    ValueRow row = ordinal_adversary_valuation(i, a.n, a.m);
    out.text("  adversary row " + std::to_string(i) + ": " + format_row(row) + ", mu = " +
             maximin_share(row, a.n).str());
  }
  if (a.exhaustive) {
    ExhaustiveBound b = ordinal_exhaustive_bound(a.n, a.m);
    out.kv("allocations", b.allocations);
    out.kv("best_worst_ratio", b.best_worst_ratio);
    out.kv("best_allocation", format_allocation(b.best_allocation));
    out.text("exhaustive: " + std::to_string(b.allocations) + " allocations, best worst-case ratio " +
             b.best_worst_ratio.str() + " at " + format_allocation(b.best_allocation));
  }
  return kExitOk;
}

struct McArgs {
  int n = 3;
  int m = 100;
  std::string dist = "uniform";
  std::string rho = "4/5";
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
};

int cmd_mc(const McArgs& a, Out& out) {
  MCConfig cfg;
  cfg.n = a.n;
  cfg.m = a.m;
  cfg.distributions = {Distribution::parse(a.dist)};
  cfg.rho = Rational::parse(a.rho);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  MCResult r = montecarlo_randomized(cfg);
  out.kv("trials", r.trials);
  out.kv("success_rate", fixed(r.success_rate));
  out.text(std::to_string(r.trials) + " trials, " + cfg.distributions[0].str() + ", rho = " + cfg.rho.str());
  out.text("success rate: " + fixed(r.success_rate));
  for (int i = 0; i < a.n; ++i) {
    std::string k = std::to_string(i + 1);
    out.kv("mean_" + k, fixed(r.means[i]));
    out.kv("mean_se_" + k, fixed(r.mean_errors[i]));
    out.kv("variance_" + k, fixed(r.variances[i]));
    out.kv("variance_se_" + k, fixed(r.variance_errors[i]));
    out.kv("threshold_" + k, fixed(r.thresholds[i]));
    out.text("  player " + k + ": mean Y " + fixed(r.means[i]) + " (se " + fixed(r.mean_errors[i]) + "), var " +
             fixed(r.variances[i]) + " (se " + fixed(r.variance_errors[i]) + "), a_i " + fixed(r.thresholds[i]));
  }
  return kExitOk;
}

struct SeqArgs {
  int n = 17;
  int m = 0;
  std::string epsilon = "1/4";
};

int cmd_seq(const SeqArgs& a, Out& out) {
  Rational eps = Rational::parse(a.epsilon);
  int m = a.m;
  if (m <= 0) {
    auto smallest = smallest_feasible_m(a.n, eps);
    if (!smallest) throw std::invalid_argument("no m satisfies the length bound: alpha * H_n >= 1");
    m = *smallest;
  }
  SqrtSeqParams p = make_sqrt_params(a.n, m, eps);
  PickingSequence seq = build_sqrt_sequence(p);
  auto violations = verify_pick_positions(seq, p.n, p.alpha);
  auto counting = check_counting_inequality(p);
  long long counting_failures = 0;
  for (const auto& c : counting) counting_failures += c.holds() ? 0 : 1;
  LengthBound lb = length_bound(p);

  out.kv("n", static_cast<long long>(p.n));
  out.kv("m", static_cast<long long>(p.m));
  out.kv("epsilon", p.epsilon);
  out.kv("alpha", p.alpha);
  out.kv("length_bound", std::to_string(lb.lhs) + "<=" + std::to_string(lb.rhs));
  std::string picks;
  for (std::size_t k = 0; k < seq.picks.size(); ++k) picks += (k ? "," : "") + std::to_string(seq.picks[k] + 1);
  out.kv("sequence", picks);
  out.kv("position_violations", static_cast<long long>(violations.size()));
  out.kv("counting_failures", counting_failures);
  out.text("n = " + std::to_string(p.n) + ", m = " + std::to_string(p.m) + ", epsilon = " + p.epsilon.str() +
           ", alpha = " + p.alpha.str() + " (~" + fixed(p.alpha.to_double()) + ")");
  out.text("length bound: " + std::to_string(lb.lhs) + " <= " + std::to_string(lb.rhs));
  std::string spaced;
  for (std::size_t k = 0; k < seq.picks.size(); ++k) spaced += (k ? " " : "") + std::to_string(seq.picks[k] + 1);
  out.text("sequence: " + spaced);
  out.text("position violations: " + std::to_string(violations.size()));
  for (const auto& v : violations) {
    out.text("  player " + std::to_string(v.player + 1) + " pick " + std::to_string(v.occurrence) + " at " +
             std::to_string(v.actual) + " > " + std::to_string(v.bound));
  }
  out.text("counting inequality failures: " + std::to_string(counting_failures) + " of " +
           std::to_string(counting.size()));
  return violations.empty() ? kExitOk : kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximin-share fair division: mechanisms, truthfulness checks, impossibility chains"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "Print key=value records");

  MmsArgs mms;
  auto* c_mms = app.add_subcommand("mms", "Maximin share of every player");
  c_mms->add_option("--instance", mms.instance, "Instance file")->required();
  c_mms->add_option("--parts", mms.parts, "Number of bundles (default: n)");

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Run a mechanism and report approximation ratios");
  c_run->add_option("--instance", run.instance, "Instance file")->required();
  c_run->add_option("--mech", run.mech, "Mechanism")->required();
  c_run->add_option("--model", run.model, "cardinal|ordinal|public-rankings")->required();
  c_run->add_option("--epsilon", run.epsilon, "Exponent offset for sqrt-seq (P/Q)");
  c_run->add_option("--seed", run.seed, "Seed for random-uniform");
  c_run->add_option("--report", run.report, "Also write the key=value report to FILE");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Exhaustive truthfulness check on a value grid");
  c_verify->add_option("--mech", verify.mech, "Mechanism")->required();
  c_verify->add_option("--model", verify.model, "cardinal|ordinal|public-rankings")->required();
  c_verify->add_option("--n", verify.n, "Players")->required();
  c_verify->add_option("--m", verify.m, "Items")->required();
  c_verify->add_option("--grid", verify.grid, "Comma-separated values")->required();
  c_verify->add_option("--epsilon", verify.epsilon, "Exponent offset for sqrt-seq (P/Q)");
  c_verify->add_option("--budget", verify.budget, "Maximum number of grid instances");

  ChainArgs chain;
  auto* c_chain = app.add_subcommand("chain", "Run a mechanism through an impossibility chain");
  auto* fixture_opt = c_chain->add_option("--fixture", chain.fixture, "Built-in fixture name");
  auto* file_opt = c_chain->add_option("--fixture-file", chain.fixture_file, "Fixture text file");
  fixture_opt->excludes(file_opt);
  c_chain->add_option("--mech", chain.mech, "Mechanism")->required();
  c_chain->add_option("--model", chain.model, "cardinal|ordinal|public-rankings")->required();
  c_chain->add_option("--epsilon", chain.epsilon, "Fixture epsilon (P/Q, default 1/10)");

  AdversaryArgs adv;
  auto* c_adv = app.add_subcommand("adversary", "Common-ranking counting bound for the ordinal model");
  c_adv->add_option("--n", adv.n, "Players")->required();
  c_adv->add_option("--m", adv.m, "Items")->required();
  c_adv->add_option("--alpha", adv.alpha, "Target ratio (P/Q, default 1/H_n + 1/100)");
  c_adv->add_flag("--exhaustive", adv.exhaustive, "Also enumerate all n^m allocations");

  McArgs mc;
  auto* c_mc = app.add_subcommand("mc", "Monte-Carlo run of the uniformly random allocation");
  c_mc->add_option("--n", mc.n, "Players")->required();
  c_mc->add_option("--m", mc.m, "Items")->required();
  c_mc->add_option("--dist", mc.dist, "uniform | discrete:K | bernoulli:P");
  c_mc->add_option("--rho", mc.rho, "Target fraction (P/Q)");
  c_mc->add_option("--trials", mc.trials, "Number of trials");
  c_mc->add_option("--seed", mc.seed, "Seed");

  SeqArgs seq;
  auto* c_seq = app.add_subcommand("seq", "Build and check the sqrt(n) picking sequence");
  c_seq->add_option("--n", seq.n, "Players")->required();
  c_seq->add_option("--m", seq.m, "Items (default: smallest feasible)");
  c_seq->add_option("--epsilon", seq.epsilon, "Exponent offset (P/Q)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*c_chain && chain.fixture.empty() && chain.fixture_file.empty()) {
    std::cerr << "error: chain needs --fixture or --fixture-file\n";
    return kExitUsage;
  }

  Out out(machine);
  try {
    if (*c_mms) return cmd_mms(mms, out);
    if (*c_run) return cmd_run(run, out);
    if (*c_verify) return cmd_verify(verify, out);
    if (*c_chain) return cmd_chain(chain, out);
    if (*c_adv) return cmd_adversary(adv, out);
    if (*c_mc) return cmd_mc(mc, out);
    if (*c_seq) return cmd_seq(seq, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
