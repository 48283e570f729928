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


#include "mmsfair/seqbuild.hpp"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "mmsfair/mms.hpp"
#include "oracle.hpp"

namespace mmsfair {
namespace {

using ::testing::ElementsAre;
using testing::random_instance;

TEST(HarmonicTest, Values) {
  EXPECT_EQ(harmonic_number(1), Rational(1));
  EXPECT_EQ(harmonic_number(3), Rational(11, 6));
  EXPECT_EQ(harmonic_number(5), Rational(137, 60));
  EXPECT_THROW(harmonic_number(-1), std::invalid_argument);
}

// Best rational lower approximation with bounded denominator, checked
// against a long double scan over every denominator.
TEST(SqrtAlphaTest, IsBestLowerApproximation) {
  for (auto [n, eps] : {std::pair{17, Rational(1, 4)}, std::pair{5, Rational(3, 20)}, std::pair{10, Rational(1, 10)}}) {
    Rational alpha = sqrt_alpha(n, eps);
    long double target = std::pow(static_cast<long double>(n), -(0.5L + static_cast<long double>(eps.to_double())));
    ASSERT_LE(alpha.den(), kAlphaMaxDenominator);
    EXPECT_LE(static_cast<long double>(alpha.num()) / alpha.den(), target);
    for (std::int64_t q = 1; q <= kAlphaMaxDenominator; ++q) {
      long double scaled = target * q;
      long double fl = std::floor(scaled);
      if (scaled - fl < 1e-9L) continue;
      ASSERT_LE(Rational(static_cast<std::int64_t>(fl), q), alpha) << "n=" << n << " q=" << q;
    }
  }
}

TEST(SqrtAlphaTest, FrozenValues) {
  EXPECT_EQ(sqrt_alpha(17, Rational(1, 4)), Rational(52434, 438985));
  EXPECT_EQ(sqrt_alpha(5, Rational(3, 20)), Rational(125615, 357579));
  EXPECT_EQ(sqrt_alpha(1, Rational(1, 4)), Rational(1));
}

std::optional<int> scan_smallest_m(int n, const Rational& eps) {
  Rational ah = sqrt_alpha(n, eps) * harmonic_number(n);
  if (ah >= Rational(1)) return std::nullopt;
  for (int m = n;; ++m) {
    if (n + (ah * Rational(m)).ceil() <= m) return m;
  }
}

TEST(LengthBoundTest, SmallestFeasibleM) {
  EXPECT_EQ(smallest_feasible_m(17, Rational(1, 4)), 29);
  EXPECT_EQ(smallest_feasible_m(5, Rational(3, 20)), 26);
  EXPECT_EQ(smallest_feasible_m(10, Rational(1, 10)), 38);
  for (int n = 2; n <= 30; ++n) {
    EXPECT_EQ(smallest_feasible_m(n, Rational(1, 4)), scan_smallest_m(n, Rational(1, 4))) << n;
  }
  EXPECT_FALSE(smallest_feasible_m(2, Rational(1, 100)).has_value());
}

TEST(LengthBoundTest, MakeParamsThrowsWhenInfeasible) {
  EXPECT_NO_THROW(make_sqrt_params(17, 29, Rational(1, 4)));
  try {
    make_sqrt_params(17, 28, Rational(1, 4));
    FAIL() << "expected InfeasibleParams";
  } catch (const InfeasibleParams& e) {
    EXPECT_FALSE(e.bound().holds());
    EXPECT_EQ(e.bound().rhs, 28);
  }
  LengthBound lb = length_bound(make_sqrt_params(17, 29, Rational(1, 4)));
  EXPECT_EQ(lb.lhs, 29);
  EXPECT_EQ(lb.rhs, 29);
}

TEST(BuildSequenceTest, SinglePlayer) {
  PickingSequence seq = build_sqrt_sequence(make_sqrt_params(1, 6, Rational(1, 4)));
  EXPECT_THAT(seq.picks, ElementsAre(0, 0, 0, 0, 0, 0));
  EXPECT_FALSE(seq.cyclic);
  EXPECT_TRUE(verify_pick_positions(seq, 1, Rational(1)).empty());
}

TEST(BuildSequenceTest, FeasibleParamsHaveNoViolations) {
  for (auto [n, eps] : {std::pair{17, Rational(1, 4)}, std::pair{5, Rational(3, 20)}, std::pair{10, Rational(1, 10)}}) {
    int m0 = *smallest_feasible_m(n, eps);
    for (int m = m0; m < m0 + 15; ++m) {
      SqrtSeqParams p = make_sqrt_params(n, m, eps);
      PickingSequence seq = build_sqrt_sequence(p);
      ASSERT_EQ(static_cast<int>(seq.picks.size()), m);
      EXPECT_TRUE(verify_pick_positions(seq, n, p.alpha).empty()) << "n=" << n << " m=" << m;
      for (const auto& c : check_counting_inequality(p)) EXPECT_TRUE(c.holds()) << "n=" << n << " m=" << m;
    }
  }
}

TEST(BuildSequenceTest, PairsSortedByDeadline) {
  SqrtSeqParams p = make_sqrt_params(17, 29, Rational(1, 4));
  auto pairs = sqrt_pick_pairs(p);
  ASSERT_FALSE(pairs.empty());
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    EXPECT_TRUE(pairs[k - 1].deadline < pairs[k].deadline ||
                (pairs[k - 1].deadline == pairs[k].deadline && pairs[k - 1].player < pairs[k].player));
  }
  EXPECT_LE(static_cast<int>(pairs.size()), 29);
  EXPECT_EQ(pick_spacing(17, 0, p.alpha), (Rational(17) / p.alpha).floor());
}

TEST(BuildSequenceTest, EveryPlayerGetsAlphaShare) {
  const int n = 5;
  const Rational eps(3, 20);
  const int m = *smallest_feasible_m(n, eps);
  SqrtSeqParams p = make_sqrt_params(n, m, eps);
  PickingSequence seq = build_sqrt_sequence(p);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = random_instance(rng, n, m, 20);
    Allocation a = run_picking_sequence(derive_rankings(inst), m, seq);
    auto shares = maximin_shares(inst);
    for (int i = 0; i < n; ++i) EXPECT_GE(bundle_value(inst, i, a.bundles[i]), p.alpha * shares[i]);
  }
}

TEST(VerifyPositionsTest, DeliberateCounterexample) {
  auto v = verify_pick_positions(PickingSequence{{1, 0}, false}, 2, Rational(1, 2));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].player, 0);
  EXPECT_EQ(v[0].occurrence, 0);
  EXPECT_EQ(v[0].actual, 2);
  EXPECT_EQ(v[0].bound, 1);
  EXPECT_THROW(verify_pick_positions(PickingSequence{{0, 1}, true}, 2, Rational(1, 2)), std::invalid_argument);
}

TEST(TheoreticalRatioTest, Values) {
  EXPECT_EQ(theoretical_ratio(MechanismId{MechanismKind::PickSeq}, 2, 6), Rational(1, 3));
  EXPECT_EQ(theoretical_ratio(MechanismId{MechanismKind::PR}, 2, 9), Rational(2, 3));
  EXPECT_EQ(theoretical_ratio(MechanismId{MechanismKind::PickSeq}, 3, 4), Rational(1));
  EXPECT_EQ(theoretical_ratio(MechanismId{MechanismKind::BestItem}, 2, 4), Rational(1, 2));
  EXPECT_EQ(theoretical_ratio(MechanismId{MechanismKind::SqrtSeq, Rational(1, 4)}, 17, 29), Rational(52434, 438985));
  EXPECT_THROW(theoretical_ratio(MechanismId{MechanismKind::CutAndChoose}, 2, 4), MechanismError);
}

}  // namespace
}  // namespace mmsfair
