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

#include <algorithm>

#include "mmsfair/adversary.hpp"

namespace mmsfair {
namespace {

// Entries of the rows used to probe ordinal guarantees.
constexpr int kOrdinalProbeMax = 3;

void probe_rows(const Ranking& ranking, std::size_t pos, int max_level, ValueRow& row, std::vector<ValueRow>& out) {
  if (pos == ranking.order.size()) {
    out.push_back(row);
    return;
  }
  for (int level = max_level; level >= 0; --level) {
    row[ranking.order[pos]] = Rational(level);
    probe_rows(ranking, pos + 1, level, row, out);
  }
}

// Worst ratio over every probe row consistent with the ranking.
ApproxRatio ordinal_ratio(const Ranking& ranking, std::span<const int> bundle) {
  std::vector<ValueRow> rows;
  ValueRow row(ranking.order.size());
  probe_rows(ranking, 0, kOrdinalProbeMax, row, rows);
  ApproxRatio worst = ApproxRatio::unbounded();
  for (const auto& r : rows) {
    Rational mu = maximin_share(r, 2);
    if (mu.is_zero()) continue;
    Rational got{0};
    for (int j : bundle) got += r[j];
    Rational ratio = got / mu;
    if (worst.is_unbounded() || ratio < worst.value()) worst = ApproxRatio::of(ratio);
  }
  return worst;
}

// max_k |to ∩ top_k| - |from ∩ top_k|.
Rational dominance_gain(const Ranking& ranking, const ItemSet& from, const ItemSet& to) {
  int best = 0;
  int diff = 0;
  for (int item : ranking.order) {
    if (std::find(to.begin(), to.end(), item) != to.end()) ++diff;
    if (std::find(from.begin(), from.end(), item) != from.end()) --diff;
    best = std::max(best, diff);
  }
  return Rational(best);
}

std::vector<ProfileOutcome> run_profiles(const ChainFixture& f, const MechanismId& id, ModelKind model,
                                         std::uint64_t seed) {
  std::vector<ProfileOutcome> out;
  for (const auto& prof : f.profiles) {
    ProfileOutcome o;
    o.allocation = run_mechanism(id, model, prof, seed);
    for (int i = 0; i < prof.n(); ++i) {
      o.shares.push_back(maximin_share(prof.row(i), prof.n()));
      if (f.model == ModelKind::Ordinal) {
        o.ratios.push_back(ordinal_ratio(derive_ranking(prof, i), o.allocation.bundles[i]));
      } else if (o.shares.back().is_zero()) {
        o.ratios.push_back(ApproxRatio::unbounded());
      } else {
        o.ratios.push_back(ApproxRatio::of(bundle_value(prof, i, o.allocation.bundles[i]) / o.shares.back()));
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ApproxFailure:
      return "APPROX-FAILURE";
    case Verdict::Manipulable:
      return "MANIPULABLE";
    case Verdict::Consistent:
      return "CONSISTENT";
  }
  return "UNKNOWN";
}

bool premises_hold(const ChainFixture& f, const std::vector<ProfileOutcome>& outcomes) {
  for (const auto& p : f.premises) {
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      if (p.profile >= 0 && static_cast<int>(k) != p.profile) continue;
      const ItemSet& bundle = outcomes[k].allocation.bundles[p.player];
      bool ok = p.kind == ChainPremise::Kind::Receives
                    ? std::find(bundle.begin(), bundle.end(), p.value) != bundle.end()
                    : static_cast<int>(bundle.size()) == p.value;
      if (!ok) return false;
    }
  }
  return true;
}

ChainReport run_chain(const ChainFixture& fixture, const MechanismId& id, ModelKind model, std::uint64_t seed) {
  if (!fixture_applies(fixture, model)) {
    throw MechanismError("fixture " + fixture.name + " is written for the " + std::string(model_name(fixture.model)) +
                         " model and does not cover " + std::string(model_name(model)));
  }
  if (!supports_model(id.kind, model)) {
    throw MechanismError(std::string(mechanism_name(id.kind)) + " is not defined in the " +
                         std::string(model_name(model)) + " model");
  }
  auto problems = validate_fixture(fixture);
  if (!problems.empty()) throw std::invalid_argument("malformed fixture: " + problems.front());

  ChainFixture used = fixture;
  ChainReport report;
  report.profiles = run_profiles(used, id, model, seed);
  report.premise_met = premises_hold(used, report.profiles);
  if (!report.premise_met) {
    ChainFixture flipped = mirrored(fixture);
    auto outcomes = run_profiles(flipped, id, model, seed);
    if (premises_hold(flipped, outcomes)) {
      used = std::move(flipped);
      report.profiles = std::move(outcomes);
      report.premise_met = true;
      report.mirrored = true;
    }
  }
  report.fixture = fixture.name;
  report.mechanism = id;
  report.model = model;
  report.threshold = fixture.threshold;

  for (const auto& e : used.edges) {
    const Instance& src = used.profiles[e.from];
    const ItemSet& before = report.profiles[e.from].allocation.bundles[e.player];
    const ItemSet& after = report.profiles[e.to].allocation.bundles[e.player];
    Rational gain = used.model == ModelKind::Ordinal
                        ? dominance_gain(derive_ranking(src, e.player), before, after)
                        : bundle_value(src, e.player, after) - bundle_value(src, e.player, before);
    report.edges.push_back(EdgeOutcome{e, gain});
  }

  for (std::size_t k = 0; k < report.profiles.size() && report.failing_profile < 0; ++k) {
    const auto& ratios = report.profiles[k].ratios;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (!ratios[i].at_least(fixture.threshold)) {
        report.verdict = Verdict::ApproxFailure;
        report.failing_profile = static_cast<int>(k);
        report.failing_player = static_cast<int>(i);
        report.failing_ratio = ratios[i];
        break;
      }
    }
  }
  if (report.verdict != Verdict::ApproxFailure) {
    for (std::size_t k = 0; k < report.edges.size(); ++k) {
      if (report.edges[k].gain > Rational{0}) {
        report.verdict = Verdict::Manipulable;
        report.manipulable_edge = static_cast<int>(k);
        break;
      }
    }
  }
  return report;
}

}  // namespace mmsfair
