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

#ifndef MMSFAIR_STRATEGY_HPP
#define MMSFAIR_STRATEGY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mmsfair/instance.hpp"
#include "mmsfair/mechanisms.hpp"
#include "mmsfair/rational.hpp"

namespace mmsfair {

/// Largest m for which the ordinal search enumerates all m! rankings.
inline constexpr int kMaxOrdinalItems = 8;
/// Default cap on |grid|^(n*m) for verify_truthful_on_grid.
inline constexpr std::int64_t kDefaultGridBudget = std::int64_t{1} << 20;

using Misreport = std::variant<Ranking, ValueRow>;

std::string format_misreport(const Misreport& report);

/// Outcome of a unilateral deviation search for one player, others truthful.
struct DeviationReport {
  int player = 0;
  ModelKind model = ModelKind::Cardinal;
  Rational truthful_value;
  Rational best_deviation_value;
  /// Present iff best_deviation_value > truthful_value.
  std::optional<Misreport> witness;
  bool search_complete = false;
  std::int64_t evaluated = 0;

  bool profitable() const { return best_deviation_value > truthful_value; }
};

/// Every ranking of the m items as player's report.
DeviationReport deviation_search_ordinal(const MechanismId& id, const Instance& inst, int player);

/// Supplied rows, every permutation of the true row, and the m! strict rows
/// (m, m-1, ..., 1) permuted.
DeviationReport deviation_search_cardinal(const MechanismId& id, const Instance& inst, int player,
                                          std::span<const ValueRow> misreports);

/// Supplied rows plus every row over `grid` that is consistent with the
/// player's ranking. Inconsistent rows fall back to the truthful row.
DeviationReport deviation_search_public(const MechanismId& id, const Instance& inst, int player,
                                        std::span<const ValueRow> misreports, std::span<const Rational> grid = {});

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& required, std::int64_t budget);
  const std::string& required() const { return required_; }

 private:
  std::string required_;
};

struct GridSummary {
  std::int64_t instances = 0;
  std::int64_t searches = 0;
  std::int64_t violations = 0;
  /// The mechanism ignores its input entirely, so nothing was enumerated.
  bool oblivious_certificate = false;
  /// Every search was exhaustive for its model.
  bool all_complete = true;
  std::optional<Instance> witness_instance;
  std::optional<DeviationReport> witness;
};

/// Runs the model's deviation search for every player of every instance with
/// entries from `grid`. The first witness in enumeration order is kept.
GridSummary verify_truthful_on_grid(const MechanismId& id, ModelKind model, int n, int m,
                                    std::span<const Rational> grid, std::int64_t budget = kDefaultGridBudget);

}  // namespace mmsfair

#endif  // MMSFAIR_STRATEGY_HPP
