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

#ifndef MMSFAIR_SEQBUILD_HPP
#define MMSFAIR_SEQBUILD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmsfair/mechanisms.hpp"
#include "mmsfair/rational.hpp"

namespace mmsfair {

/// H_n = 1 + 1/2 + ... + 1/n, exact.
Rational harmonic_number(int n);

/// Denominator cap used when rounding n^-(1/2 + eps) down to a rational.
inline constexpr std::int64_t kAlphaMaxDenominator = 1'000'000;

/// Largest p/q <= n^-(1/2 + epsilon) with q <= kAlphaMaxDenominator.
/// Comparisons against the irrational power are done exactly with big
/// integers. n = 1 gives 1.
Rational sqrt_alpha(int n, const Rational& epsilon);

struct SqrtSeqParams {
  int n = 1;
  int m = 0;
  Rational epsilon{1, 4};
  Rational alpha{1};
};

/// Both sides of the length bound n + ceil(alpha * H_n * m) <= m.
struct LengthBound {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds() const { return lhs <= rhs; }
};

class InfeasibleParams : public std::invalid_argument {
 public:
  InfeasibleParams(const SqrtSeqParams& params, const LengthBound& bound);
  const LengthBound& bound() const { return bound_; }

 private:
  LengthBound bound_;
};

SqrtSeqParams make_sqrt_params(int n, int m, const Rational& epsilon);
LengthBound length_bound(const SqrtSeqParams& params);
/// Smallest m passing the length bound, or nullopt if alpha * H_n >= 1.
std::optional<int> smallest_feasible_m(int n, const Rational& epsilon);

/// (player, deadline): the player's j-th pick must land on or before
/// `deadline` (1-based overall position).
struct PickPair {
  int player = 0;
  std::int64_t deadline = 0;
  int occurrence = 0;
};

/// floor((n - i + 1) / alpha) for the 0-based player i.
std::int64_t pick_spacing(int n, int player, const Rational& alpha);

std::vector<PickPair> sqrt_pick_pairs(const SqrtSeqParams& params);

/// Pairs sorted by deadline (ties: lower player), first coordinates form the
/// prefix, the rest is padded round-robin (skipping a player whose next pick
/// would miss her position bound while another can take it). Length is
/// exactly m.
/// Throws InfeasibleParams when the length bound fails (n > 1).
PickingSequence build_sqrt_sequence(const SqrtSeqParams& params);

struct PositionViolation {
  int player = 0;
  int occurrence = 0;
  std::int64_t actual = 0;
  std::int64_t bound = 0;
};

/// Checks position(j-th pick of i) <= i + j * floor((n-i+1)/alpha) for every
/// occurrence of every player (1-based players and positions in the bound).
std::vector<PositionViolation> verify_pick_positions(const PickingSequence& seq, int n, const Rational& alpha);

/// One evaluation of the counting inequality behind the construction:
/// n + sum_l floor((i - l + j*s_i) / s_l) <= i + j*s_i.
struct CountingCheck {
  int player = 0;
  int occurrence = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds() const { return lhs <= rhs; }
};
std::vector<CountingCheck> check_counting_inequality(const SqrtSeqParams& params);

/// Guaranteed approximation ratio of a sequence mechanism.
/// Throws MechanismError for mechanisms without a closed-form bound.
Rational theoretical_ratio(const MechanismId& id, int n, int m);

}  // namespace mmsfair

#endif  // MMSFAIR_SEQBUILD_HPP
