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

#ifndef MMSFAIR_MECHANISMS_HPP
#define MMSFAIR_MECHANISMS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mmsfair/instance.hpp"
#include "mmsfair/rational.hpp"

namespace mmsfair {

/// Ordered list of players. Each entry takes the picker's favourite
/// remaining item; a cyclic sequence repeats until the items run out.
struct PickingSequence {
  std::vector<int> picks;
  bool cyclic = false;

  friend bool operator==(const PickingSequence&, const PickingSequence&) = default;
};

enum class MechanismKind { BestItem, PickSeq, PR, PRExact24, SqrtSeq, CutAndChoose, RandomUniform };

struct MechanismId {
  MechanismKind kind = MechanismKind::BestItem;
  /// Exponent offset for SqrtSeq; ignored by the other mechanisms.
  Rational epsilon{1, 4};

  friend bool operator==(const MechanismId&, const MechanismId&) = default;
};

enum class ModelKind { Cardinal, Ordinal, PublicRankings };

/// Raised when a mechanism is asked to run in a model it does not support,
/// or on the wrong instance shape.
class MechanismError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stable CLI identifiers: best-item, pick-seq, pr, pr-exact-2-4, sqrt-seq,
// cut-and-choose, random-uniform; cardinal, ordinal, public-rankings.
std::string_view mechanism_name(MechanismKind kind);
MechanismKind parse_mechanism(std::string_view name);
std::string_view model_name(ModelKind model);
ModelKind parse_model(std::string_view name);

bool supports_model(MechanismKind kind, ModelKind model);
/// The allocation depends on the reports only through the induced rankings
/// (or not at all).
bool value_oblivious(MechanismKind kind);

Allocation run_picking_sequence(std::span<const Ranking> rankings, int m, const PickingSequence& seq);

/// p_1 .. p_{n-1} then p_n for the remaining m-n+1 picks.
PickingSequence best_item_sequence(int n, int m);
/// Cyclic p_1 .. p_{n-1} p_n p_n.
PickingSequence pr_sequence(int n);

/// B(k_1..k_l): items at the given 1-based positions of a ranking.
ItemSet positions_bundle(const Ranking& ranking, std::span<const int> positions);

/// Two players, four items, public rankings. `values` are the reported rows,
/// `rankings` the public ones.
Allocation mechanism_pr_exact_24(const Instance& values, std::span<const Ranking> rankings);
Allocation mechanism_pr_exact_24(const Instance& inst);

/// Player 1 proposes her best 2-partition, player 2 picks her favourite side.
Allocation cut_and_choose(const Instance& inst);

Allocation random_uniform_allocation(int n, int m, std::uint64_t seed);

/// What the players hand to the mechanism.
using Reports = std::variant<Instance, std::vector<Ranking>>;

/// Runs a mechanism under an information model.
///
/// `truth` supplies the public rankings (PublicRankings) and the instance
/// shape. In PublicRankings a reported row that is inconsistent with the
/// player's public ranking is replaced by the true row.
Allocation run_mechanism(const MechanismId& id, ModelKind model, const Instance& truth, const Reports& reported,
                         std::uint64_t seed = 0);
/// Truthful reports.
Allocation run_mechanism(const MechanismId& id, ModelKind model, const Instance& truth, std::uint64_t seed = 0);

}  // namespace mmsfair

#endif  // MMSFAIR_MECHANISMS_HPP
