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

#include "mmsfair/mechanisms.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <utility>

#include "mmsfair/mms.hpp"
#include "mmsfair/seqbuild.hpp"

namespace mmsfair {
namespace {

constexpr std::array<std::pair<MechanismKind, std::string_view>, 7> kMechanismNames{{
    {MechanismKind::BestItem, "best-item"},
    {MechanismKind::PickSeq, "pick-seq"},
    {MechanismKind::PR, "pr"},
    {MechanismKind::PRExact24, "pr-exact-2-4"},
    {MechanismKind::SqrtSeq, "sqrt-seq"},
    {MechanismKind::CutAndChoose, "cut-and-choose"},
    {MechanismKind::RandomUniform, "random-uniform"},
}};

constexpr std::array<std::pair<ModelKind, std::string_view>, 3> kModelNames{{
    {ModelKind::Cardinal, "cardinal"},
    {ModelKind::Ordinal, "ordinal"},
    {ModelKind::PublicRankings, "public-rankings"},
}};

Allocation with_sorted_bundles(Allocation a) {
  for (auto& b : a.bundles) std::sort(b.begin(), b.end());
  return a;
}

PickingSequence sequence_for(const MechanismId& id, int n, int m) {
  switch (id.kind) {
    case MechanismKind::BestItem:
    case MechanismKind::PickSeq:
      return best_item_sequence(n, m);
    case MechanismKind::PR:
      return pr_sequence(n);
    case MechanismKind::SqrtSeq:
      return build_sqrt_sequence(make_sqrt_params(n, m, id.epsilon));
    default:
      throw MechanismError("not a picking-sequence mechanism");
  }
}

bool is_picking_sequence(MechanismKind kind) {
  return kind == MechanismKind::BestItem || kind == MechanismKind::PickSeq || kind == MechanismKind::PR ||
         kind == MechanismKind::SqrtSeq;
}

}  // namespace

std::string_view mechanism_name(MechanismKind kind) {
  for (const auto& [k, name] : kMechanismNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

MechanismKind parse_mechanism(std::string_view name) {
  for (const auto& [k, n] : kMechanismNames) {
    if (n == name) return k;
  }
  throw MechanismError("unknown mechanism '" + std::string(name) + "'");
}

std::string_view model_name(ModelKind model) {
  for (const auto& [k, name] : kModelNames) {
    if (k == model) return name;
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (const auto& [k, n] : kModelNames) {
    if (n == name) return k;
  }
  if (name == "public") return ModelKind::PublicRankings;
  throw MechanismError("unknown model '" + std::string(name) + "'");
}

bool supports_model(MechanismKind kind, ModelKind model) {
  switch (kind) {
    case MechanismKind::PRExact24:
      return model == ModelKind::PublicRankings;
    case MechanismKind::CutAndChoose:
      return model != ModelKind::Ordinal;
    default:
      return true;
  }
}

bool value_oblivious(MechanismKind kind) {
  return is_picking_sequence(kind) || kind == MechanismKind::RandomUniform;
}

Allocation mechanism_pr_exact_24(const Instance& values, std::span<const Ranking> rankings) {
  if (values.n() != 2 || values.m() != 4 || rankings.size() != 2) {
    throw MechanismError("pr-exact-2-4 needs exactly 2 players and 4 items");
  }
  const Ranking& r1 = rankings[0];
  const Ranking& r2 = rankings[1];
  if (r1.order.front() != r2.order.front()) {
    PickingSequence seq{{0, 1, 1, 0}, false};
    return run_picking_sequence(rankings, 4, seq);
  }
  const std::array<int, 1> top{1};
  const std::array<int, 2> next_two{2, 3};
  ItemSet b1 = positions_bundle(r1, top);
  ItemSet b23 = positions_bundle(r1, next_two);
  ItemSet mine = bundle_value(values, 0, b1) >= bundle_value(values, 0, b23) ? b1 : b23;
  Allocation alloc;
  alloc.bundles.resize(2);
  alloc.bundles[0] = mine;
  for (int j = 0; j < 4; ++j) {
    if (!std::binary_search(mine.begin(), mine.end(), j)) alloc.bundles[1].push_back(j);
  }
  return alloc;
}

Allocation mechanism_pr_exact_24(const Instance& inst) {
  auto rankings = derive_rankings(inst);
  return mechanism_pr_exact_24(inst, rankings);
}

Allocation cut_and_choose(const Instance& inst) {
  if (inst.n() != 2) throw MechanismError("cut-and-choose needs exactly 2 players");
  TwoPartition split = best_two_partition(inst.row(0));
  Rational first = bundle_value(inst, 1, split.with_first);
  Rational second = bundle_value(inst, 1, split.rest);
  Allocation alloc;
  alloc.bundles.resize(2);
  // Ties go to the side holding the lowest-index item, i.e. with_first.
  if (first >= second) {
    alloc.bundles[1] = split.with_first;
    alloc.bundles[0] = split.rest;
  } else {
    alloc.bundles[1] = split.rest;
    alloc.bundles[0] = split.with_first;
  }
  return alloc;
}

Allocation random_uniform_allocation(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  Allocation alloc;
  alloc.bundles.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < m; ++j) alloc.bundles[pick(rng)].push_back(j);
  return alloc;
}

Allocation run_mechanism(const MechanismId& id, ModelKind model, const Instance& truth, const Reports& reported,
                         std::uint64_t seed) {
  if (!supports_model(id.kind, model)) {
    throw MechanismError(std::string(mechanism_name(id.kind)) + " is not defined in the " +
                         std::string(model_name(model)) + " model");
  }
  const int n = truth.n();
  const int m = truth.m();

  if (id.kind == MechanismKind::RandomUniform) return random_uniform_allocation(n, m, seed);

  std::vector<Ranking> rankings;
  std::optional<Instance> values;
  if (model == ModelKind::Ordinal) {
    const auto* reported_rankings = std::get_if<std::vector<Ranking>>(&reported);
    if (!reported_rankings) throw MechanismError("the ordinal model takes rankings, not values");
    if (static_cast<int>(reported_rankings->size()) != n) throw MechanismError("need one ranking per player");
    for (const auto& r : *reported_rankings) {
      auto sorted = r.order;
      std::sort(sorted.begin(), sorted.end());
      for (int k = 0; k < static_cast<int>(sorted.size()); ++k) {
        if (sorted[k] != k || r.size() != m) throw MechanismError("reported ranking is not a permutation of the items");
      }
    }
    rankings = *reported_rankings;
  } else {
    const auto* reported_values = std::get_if<Instance>(&reported);
    if (!reported_values) throw MechanismError("the cardinal and public-rankings models take value rows");
    if (reported_values->n() != n || reported_values->m() != m) throw MechanismError("reported matrix has wrong shape");
    if (model == ModelKind::Cardinal) {
      values = *reported_values;
      rankings = derive_rankings(*values);
    } else {
      rankings = derive_rankings(truth);
      Instance effective = *reported_values;
      for (int i = 0; i < n; ++i) {
        if (!consistent_with(reported_values->row(i), rankings[i])) {
          auto row = truth.row(i);
          effective = effective.with_row(i, ValueRow(row.begin(), row.end()));
        }
      }
      values = std::move(effective);
    }
  }

  switch (id.kind) {
    case MechanismKind::BestItem:
    case MechanismKind::PickSeq:
    case MechanismKind::PR:
    case MechanismKind::SqrtSeq:
      return run_picking_sequence(rankings, m, sequence_for(id, n, m));
    case MechanismKind::PRExact24:
      return mechanism_pr_exact_24(*values, rankings);
    case MechanismKind::CutAndChoose:
      return with_sorted_bundles(cut_and_choose(*values));
    case MechanismKind::RandomUniform:
      break;
  }
  throw MechanismError("unhandled mechanism");
}

Allocation run_mechanism(const MechanismId& id, ModelKind model, const Instance& truth, std::uint64_t seed) {
  if (model == ModelKind::Ordinal) return run_mechanism(id, model, truth, Reports{derive_rankings(truth)}, seed);
  return run_mechanism(id, model, truth, Reports{truth}, seed);
}

}  // namespace mmsfair
