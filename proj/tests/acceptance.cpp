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


// Acceptance checks. Prints one PASS/FAIL line per criterion (criterion 4
// prints one line per grid) and exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "mmsfair/adversary.hpp"
#include "mmsfair/instance.hpp"
#include "mmsfair/mechanisms.hpp"
#include "mmsfair/mms.hpp"
#include "mmsfair/seqbuild.hpp"
#include "mmsfair/strategy.hpp"

namespace mmsfair {
namespace {

using Clock = std::chrono::steady_clock;

int g_failed = 0;

void report(bool ok, const std::string& label, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << label << ": " << detail << std::endl;
  if (!ok) ++g_failed;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Calls fn on every n x m matrix with entries from grid.
void for_each_grid_instance(int n, int m, const std::vector<Rational>& grid, const std::function<void(const Instance&)>& fn) {
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  std::vector<std::size_t> digits(cells, 0);
  while (true) {
    std::vector<ValueRow> rows(static_cast<std::size_t>(n), ValueRow(static_cast<std::size_t>(m)));
    for (std::size_t c = 0; c < cells; ++c) rows[c / m][c % m] = grid[digits[c]];
    fn(Instance(std::move(rows)));
    std::size_t k = cells;
    while (k > 0 && digits[k - 1] + 1 == grid.size()) digits[--k] = 0;
    if (k == 0) return;
    ++digits[k - 1];
  }
}

Instance random_instance(std::mt19937_64& rng, int n, int m, int max_value) {
  std::uniform_int_distribution<int> v(0, max_value);
  std::vector<ValueRow> rows(static_cast<std::size_t>(n), ValueRow(static_cast<std::size_t>(m)));
  for (auto& row : rows) {
    for (auto& x : row) x = Rational(v(rng));
  }
  return Instance(std::move(rows));
}

void criterion1() {
  auto start = Clock::now();
  Instance inst = parse_instance_string(
      "3 5\n"
      "1/2 1/2 1/3 1/3 1/3\n"
      "1/2 1/4 1/4 1/4 0\n"
      "1/2 1/2 1 1/2 1/2\n");
  auto mu3 = maximin_shares(inst);
  MmsQuery q1 = full_query(inst, 0);
  q1.parts = 2;
  MmsQuery q3 = full_query(inst, 2);
  q3.parts = 2;
  Rational mu1_2 = maximin_share(inst, q1);
  Rational mu3_2 = maximin_share(inst, q3);
  double t = seconds_since(start);
  bool ok = mu3[0] == Rational(1, 2) && mu3[1] == Rational(1, 4) && mu3[2] == Rational(1) && mu1_2 == Rational(1) &&
            mu3_2 == Rational(3, 2) && t < 1.0;
  report(ok, "criterion 1 (maximin shares of the 3x5 example)",
         "mu_1(3)=" + mu3[0].str() + " mu_2(3)=" + mu3[1].str() + " mu_3(3)=" + mu3[2].str() + " mu_1(2)=" +
             mu1_2.str() + " mu_3(2)=" + mu3_2.str() + " in " + secs(t));
}

void criterion2() {
  auto start = Clock::now();
  const std::vector<Rational> grid{0, 1, 2, 3};
  std::int64_t count = 0;
  std::int64_t violations = 0;
  std::string first;
  for_each_grid_instance(2, 4, grid, [&](const Instance& inst) {
    ++count;
    Allocation a = run_mechanism(MechanismId{MechanismKind::PRExact24}, ModelKind::PublicRankings, inst);
    ApproxRatio r = approximation_ratio(inst, a);
    if (!r.at_least(Rational(1))) {
      if (violations++ == 0) first = format_row(inst.row(0)) + " / " + format_row(inst.row(1));
    }
  });
  report(count == 65536 && violations == 0, "criterion 2 (pr-exact-2-4 exact on 4^8 instances)",
         std::to_string(count) + " instances, " + std::to_string(violations) + " below ratio 1" +
             (first.empty() ? "" : ", first " + first) + " in " + secs(seconds_since(start)));
}

void criterion3() {
  auto start = Clock::now();
  const MechanismId best{MechanismKind::BestItem};
  std::int64_t count = 0;
  bool all_half = true;
  std::optional<Rational> min_ratio;
  auto sweep = [&](int m, const std::vector<Rational>& grid) {
    for_each_grid_instance(2, m, grid, [&](const Instance& inst) {
      ++count;
      ApproxRatio r = approximation_ratio(inst, run_mechanism(best, ModelKind::Ordinal, inst));
      if (r.is_unbounded()) return;
      if (r.value() < Rational(1, 2)) all_half = false;
      if (!min_ratio || r.value() < *min_ratio) min_ratio = r.value();
    });
  };
  sweep(4, {0, 1, 2, 3});
  sweep(5, {0, 1, 2});
  Instance ones4(std::vector<ValueRow>(2, ValueRow(4, Rational(1))));
  ApproxRatio at_ones = approximation_ratio(ones4, run_mechanism(best, ModelKind::Ordinal, ones4));
  Instance ones6(std::vector<ValueRow>(2, ValueRow(6, Rational(1))));
  ApproxRatio pick6 = approximation_ratio(ones6, run_mechanism(MechanismId{MechanismKind::PickSeq}, ModelKind::Ordinal, ones6));
  const Rational tight(1, (6 - 2 + 2) / 2);
  bool ok = count == 65536 + 59049 && all_half && min_ratio == Rational(1, 2) && at_ones == ApproxRatio::of(Rational(1, 2)) &&
            pick6 == ApproxRatio::of(tight);
  report(ok, "criterion 3 (best-item 1/2 bound and tightness)",
         std::to_string(count) + " instances, min ratio " + (min_ratio ? min_ratio->str() : "none") +
             ", all-ones m=4 ratio " + at_ones.str() + ", pick-seq all-ones m=6 ratio " + pick6.str() + " in " +
             secs(seconds_since(start)));
}

void criterion4_case(const char* label, MechanismKind kind, ModelKind model, const std::vector<Rational>& grid,
                     bool expect_violation) {
  auto start = Clock::now();
  GridSummary s = verify_truthful_on_grid(MechanismId{kind}, model, 2, 4, grid);
  std::string detail = std::string(mechanism_name(kind)) + "/" + std::string(model_name(model)) + ": " +
                       std::to_string(s.instances) + " instances, " + std::to_string(s.violations) + " violations";
  if (s.witness) {
    detail += ", witness " + format_row(s.witness_instance->row(0)) + " / " + format_row(s.witness_instance->row(1)) +
              " player " + std::to_string(s.witness->player + 1) + " reports " + format_misreport(*s.witness->witness) +
              " and gets " + s.witness->best_deviation_value.str() + " instead of " + s.witness->truthful_value.str();
  }
  detail += " in " + secs(seconds_since(start));
  bool ok = expect_violation ? (s.violations >= 1 && s.witness.has_value()) : s.violations == 0;
  report(ok, std::string("criterion 4 ") + label, detail);
}

void criterion4() {
  criterion4_case("(pick-seq ordinal grid {0,1,2})", MechanismKind::PickSeq, ModelKind::Ordinal, {0, 1, 2}, false);
  criterion4_case("(pr ordinal grid {0,1,2})", MechanismKind::PR, ModelKind::Ordinal, {0, 1, 2}, false);
  criterion4_case("(pr-exact-2-4 public-rankings grid {0,1,2,3})", MechanismKind::PRExact24, ModelKind::PublicRankings,
                  {0, 1, 2, 3}, false);
  criterion4_case("(cut-and-choose cardinal grid {1,3})", MechanismKind::CutAndChoose, ModelKind::Cardinal, {1, 3}, true);
}

void criterion5() {
  auto start = Clock::now();
  std::mt19937_64 rng(5005);
  std::uniform_int_distribution<int> pick_n(2, 4);
  std::uniform_int_distribution<int> pick_m(1, 8);
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = pick_n(rng);
    const int m = pick_m(rng);
    Instance inst = random_instance(rng, n, m, 9);
    for (int k = 0; k < n; ++k) {
      Rational mu = maximin_share(inst.row(k), n);
      for (int j = 0; j < m; ++j) {
        MmsQuery q{k, n - 1, {}};
        for (int l = 0; l < m; ++l) {
          if (l != j) q.items.push_back(l);
        }
        ++checks;
        if (maximin_share(inst, q) < mu) ++violations;
      }
    }
  }
  report(violations == 0, "criterion 5 (monotonicity under removing one item and one player)",
         "1000 instances, " + std::to_string(checks) + " (k, j) checks, " + std::to_string(violations) +
             " violations in " + secs(seconds_since(start)));
}

void criterion6() {
  auto start = Clock::now();
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> pick_n(2, 4);
  std::uniform_int_distribution<int> pick_m(1, 10);
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = pick_n(rng);
    const int m = pick_m(rng);
    Instance inst = random_instance(rng, n, m, 9);
    Allocation a = run_mechanism(MechanismId{MechanismKind::PR}, ModelKind::Ordinal, inst);
    auto shares = maximin_shares(inst);
    for (int i = 0; i < n; ++i) {
      ++checks;
      if (bundle_value(inst, i, a.bundles[i]) < Rational(2, n + 1) * shares[i]) ++violations;
    }
  }
  report(violations == 0, "criterion 6 (pr gives every player 2/(n+1) of her share)",
         "1000 instances, " + std::to_string(checks) + " players, " + std::to_string(violations) + " violations in " +
             secs(seconds_since(start)));
}

void criterion7() {
  auto start = Clock::now();
  OrdinalBoundCheck c = ordinal_lower_bound_check(3, 6, Rational(1, 2) + Rational(1, 100));
  ExhaustiveBound b = ordinal_exhaustive_bound(3, 6);
  std::string terms;
  for (std::size_t k = 0; k < c.terms.size(); ++k) terms += (k ? "+" : "") + std::to_string(c.terms[k]);
  bool ok = c.terms == std::vector<std::int64_t>{2, 2, 3} && c.sum == 7 && c.verdict == BoundVerdict::Infeasible &&
            b.allocations == 729 && b.best_worst_ratio <= Rational(1, 2);
  report(ok, "criterion 7 (ordinal counting bound n=3 m=6)",
         terms + " = " + std::to_string(c.sum) + " > 6 -> " + std::string(bound_verdict_name(c.verdict)) + "; " +
             std::to_string(b.allocations) + " allocations, best worst-case ratio " + b.best_worst_ratio.str() +
             " in " + secs(seconds_since(start)));
}

void criterion8() {
  auto start = Clock::now();
  const int n = 17;
  const Rational eps(1, 4);
  auto m0 = smallest_feasible_m(n, eps);
  if (!m0) {
    report(false, "criterion 8 (sqrt-seq construction n=17)", "no feasible m");
    return;
  }
  SqrtSeqParams p = make_sqrt_params(n, *m0, eps);
  PickingSequence seq = build_sqrt_sequence(p);
  auto violations = verify_pick_positions(seq, n, p.alpha);
  std::mt19937_64 rng(8008);
  std::int64_t shortfalls = 0;
  for (int t = 0; t < 200; ++t) {
    Instance inst = random_instance(rng, n, p.m, 100);
    Allocation a = run_mechanism(MechanismId{MechanismKind::SqrtSeq, eps}, ModelKind::Ordinal, inst);
    auto shares = maximin_shares(inst);
    for (int i = 0; i < n; ++i) {
      if (bundle_value(inst, i, a.bundles[i]) < p.alpha * shares[i]) ++shortfalls;
    }
  }
  bool ok = static_cast<int>(seq.picks.size()) == p.m && violations.empty() && shortfalls == 0;
  report(ok, "criterion 8 (sqrt-seq construction n=17, eps=1/4)",
         "m=" + std::to_string(p.m) + " alpha=" + p.alpha.str() + " length " + std::to_string(seq.picks.size()) + ", " +
             std::to_string(violations.size()) + " position violations, " + std::to_string(shortfalls) +
             " players below alpha*mu over 200 instances in " + secs(seconds_since(start)));
}

void criterion9() {
  auto start = Clock::now();
  const std::vector<MechanismKind> truthful{MechanismKind::BestItem, MechanismKind::PickSeq, MechanismKind::PR,
                                            MechanismKind::SqrtSeq, MechanismKind::PRExact24};
  int counted = 0;
  int consistent = 0;
  std::string bad;
  for (auto kind : truthful) {
    for (auto model : {ModelKind::Cardinal, ModelKind::Ordinal, ModelKind::PublicRankings}) {
      if (!supports_model(kind, model)) continue;
      for (const auto& name : builtin_fixture_names()) {
        ChainFixture f = builtin_fixture(name);
        if (!fixture_applies(f, model)) continue;
        ChainReport r;
        try {
          r = run_chain(f, MechanismId{kind}, model);
        } catch (const std::invalid_argument&) {
          continue;  // mechanism cannot run on this fixture's shape
        }
        if (!r.premise_met) continue;
        ++counted;
        if (r.verdict == Verdict::Consistent) {
          ++consistent;
          bad += " " + std::string(mechanism_name(kind)) + "/" + std::string(model_name(model)) + "/" + name;
        }
      }
    }
  }
  ChainReport lemma = run_chain(builtin_fixture("lemma-1+3"), MechanismId{MechanismKind::BestItem}, ModelKind::Cardinal);
  const int last = static_cast<int>(builtin_fixture("lemma-1+3").profiles.size()) - 1;
  bool lemma_ok = lemma.verdict == Verdict::ApproxFailure && lemma.failing_profile == last && lemma.failing_player == 0 &&
                  lemma.failing_ratio && *lemma.failing_ratio == ApproxRatio::of(Rational(1, 2));
  report(counted > 0 && consistent == 0 && lemma_ok, "criterion 9 (impossibility chains)",
         std::to_string(counted) + " applicable runs, " + std::to_string(consistent) + " CONSISTENT" +
             (bad.empty() ? "" : " [" + bad + " ]") + "; lemma-1+3/best-item " +
             std::string(verdict_name(lemma.verdict)) + " at profile " + std::to_string(lemma.failing_profile + 1) +
             " player " + std::to_string(lemma.failing_player + 1) + " ratio " +
             (lemma.failing_ratio ? lemma.failing_ratio->str() : "-") + " in " + secs(seconds_since(start)));
}

void criterion10() {
  auto start = Clock::now();
  MCConfig cfg;
  cfg.n = 3;
  cfg.m = 300;
  cfg.rho = Rational(4, 5);
  cfg.trials = 10000;
  cfg.seed = 2026;
  MCResult r = montecarlo_randomized(cfg);
  bool means_ok = true;
  bool vars_ok = true;
  std::string detail;
  const double expect_mean = cfg.m / 6.0;
  for (int i = 0; i < cfg.n; ++i) {
    if (std::abs(r.means[i] - expect_mean) > 3 * r.mean_errors[i]) means_ok = false;
    if (r.variances[i] > cfg.m / 3.0 + 3 * r.variance_errors[i]) vars_ok = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, " p%d mean %.3f (target %.1f, se %.3f) var %.3f (cap %.1f, se %.3f);", i + 1,
                  r.means[i], expect_mean, r.mean_errors[i], r.variances[i], cfg.m / 3.0, r.variance_errors[i]);
    detail += buf;
  }
  MCConfig small = cfg;
  small.m = 100;
  MCConfig large = cfg;
  large.m = 1000;
  double fail_small = 1.0 - montecarlo_randomized(small).success_rate;
  double fail_large = 1.0 - montecarlo_randomized(large).success_rate;
  double t = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, " failure rate m=100 %.4f, m=1000 %.4f in %s", fail_small, fail_large, secs(t).c_str());
  detail += buf;
  report(means_ok && vars_ok && fail_large < fail_small && t < 60.0, "criterion 10 (random allocation Monte Carlo)",
         detail.substr(1));
}

}  // namespace
}  // namespace mmsfair

int main() {
  using namespace mmsfair;
  const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                         criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(false, "criterion " + std::to_string(k + 1), std::string("exception: ") + e.what());
    }
  }
  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " line(s) failed") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
