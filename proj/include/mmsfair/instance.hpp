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

#ifndef MMSFAIR_INSTANCE_HPP
#define MMSFAIR_INSTANCE_HPP

#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmsfair/rational.hpp"

namespace mmsfair {

// Players and items are 0-based everywhere in the library. Human-facing
// output (CLI, error messages) is 1-based.

/// Sorted list of distinct item indices.
using ItemSet = std::vector<int>;

/// A value row for one player, one entry per item.
using ValueRow = std::vector<Rational>;

/// n x m matrix of nonnegative item values, one row per player.
class Instance {
 public:
  Instance() = default;
  /// Throws std::invalid_argument on ragged rows, n == 0 or negative values.
  explicit Instance(std::vector<ValueRow> rows);

  int n() const { return n_; }
  int m() const { return m_; }

  const Rational& value(int player, int item) const { return values_[index(player, item)]; }
  std::span<const Rational> row(int player) const;

  /// Copy with one player's row replaced.
  Instance with_row(int player, const ValueRow& row) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t index(int player, int item) const {
    return static_cast<std::size_t>(player) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(item);
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<Rational> values_;
};

/// Permutation of item indices, most preferred first.
struct Ranking {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking&, const Ranking&) = default;
};

/// One bundle per player. Bundles are kept sorted.
struct Allocation {
  std::vector<ItemSet> bundles;

  int players() const { return static_cast<int>(bundles.size()); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Error raised by the instance parser; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads the text instance format: '#' comment lines, a header "n m", then
/// n rows of m rationals ("p/q" or an integer).
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);

/// v_i(S). Throws std::out_of_range for items outside [0, m).
Rational bundle_value(const Instance& inst, int player, std::span<const int> items);
Rational row_total(std::span<const Rational> row);

/// Items by value descending; ties go to the lower item index.
Ranking derive_ranking(std::span<const Rational> row);
Ranking derive_ranking(const Instance& inst, int player);
std::vector<Ranking> derive_rankings(const Instance& inst);

/// True iff the row is non-increasing along the ranking.
bool consistent_with(std::span<const Rational> row, const Ranking& ranking);

/// Empty result means the allocation is a valid partition of the items.
std::vector<std::string> validate_allocation(const Instance& inst, const Allocation& alloc);
std::vector<std::string> validate_allocation(int n, int m, const Allocation& alloc);

/// "{1,3}" style rendering with 1-based item numbers.
std::string format_items(std::span<const int> items);
std::string format_allocation(const Allocation& alloc);
std::string format_row(std::span<const Rational> row);

}  // namespace mmsfair

#endif  // MMSFAIR_INSTANCE_HPP
