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

#ifndef MMSFAIR_MMS_HPP
#define MMSFAIR_MMS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmsfair/instance.hpp"
#include "mmsfair/rational.hpp"

namespace mmsfair {

/// mu_player(parts, items): split `items` into `parts` bundles, keep the worst.
struct MmsQuery {
  int player = 0;
  int parts = 1;
  ItemSet items;
};

/// Query for the usual n-player share over every item.
MmsQuery full_query(const Instance& inst, int player);

/// Exact maximin share. Empty bundles are legal, so parts > |items| gives 0.
///
/// Values are scaled to a common integer denominator. Two parts use a
/// subset-sum sweep; more parts use a branch-and-bound bin-covering search
/// (largest item first, interchangeable bundles collapsed, waste-budget
/// pruning against sum/parts) driven by a binary search on the target.
Rational maximin_share(const Instance& inst, const MmsQuery& query);
Rational maximin_share(std::span<const Rational> values, int parts);

/// mu_i(n, M) for every player.
std::vector<Rational> maximin_shares(const Instance& inst);

/// Integer core of the oracle; exposed for tests and benchmarks.
std::int64_t max_min_partition(std::vector<std::int64_t> weights, int parts);

/// Sorted list of every subset sum of `weights`.
std::vector<std::int64_t> subset_sums(std::span<const std::int64_t> weights);

/// Row scaled by the lcm of its denominators.
struct ScaledRow {
  std::vector<std::int64_t> weights;
  std::int64_t scale = 1;
};
ScaledRow scale_to_integers(std::span<const Rational> values);

/// Approximation ratio of an allocation: min over players with mu_i > 0 of
/// v_i(T_i) / mu_i. Unbounded when every mu_i is zero.
class ApproxRatio {
 public:
  static ApproxRatio unbounded() { return ApproxRatio(); }
  static ApproxRatio of(Rational value) { return ApproxRatio(value); }

  bool is_unbounded() const { return !value_.has_value(); }
  /// Throws std::logic_error when unbounded.
  const Rational& value() const;
  std::string str() const;

  /// Unbounded compares above every finite ratio.
  bool at_least(const Rational& threshold) const { return is_unbounded() || *value_ >= threshold; }

  friend bool operator==(const ApproxRatio&, const ApproxRatio&) = default;

 private:
  ApproxRatio() = default;
  explicit ApproxRatio(Rational v) : value_(v) {}
  std::optional<Rational> value_;
};

/// Throws std::invalid_argument if the allocation is not a partition.
ApproxRatio approximation_ratio(const Instance& inst, const Allocation& alloc);
ApproxRatio approximation_ratio(const Instance& inst, const Allocation& alloc, std::span<const Rational> shares);

/// Player's exact best 2-partition of every item. Among optimal splits the
/// side containing item 0 is the lexicographically smallest sorted item list.
struct TwoPartition {
  ItemSet with_first;
  ItemSet rest;
  Rational min_value;
};
TwoPartition best_two_partition(std::span<const Rational> row);

}  // namespace mmsfair

#endif  // MMSFAIR_MMS_HPP
