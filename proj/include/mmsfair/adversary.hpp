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

#ifndef MMSFAIR_ADVERSARY_HPP
#define MMSFAIR_ADVERSARY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmsfair/instance.hpp"
#include "mmsfair/mechanisms.hpp"
#include "mmsfair/mms.hpp"
#include "mmsfair/rational.hpp"
#include "mmsfair/seqbuild.hpp"

namespace mmsfair {

// ---------------------------------------------------------------------------
// Deviation chains

/// Player `player` at profile `from` reports her row from profile `to`.
struct ChainEdge {
  int from = 0;
  int to = 0;
  int player = 0;

  friend bool operator==(const ChainEdge&, const ChainEdge&) = default;
};

/// Allocation pattern the chain argument starts from. `profile` < 0 means
/// every profile.
struct ChainPremise {
  enum class Kind { Receives, Count };
  Kind kind = Kind::Receives;
  int profile = 0;
  int player = 0;
  /// Item for Receives, bundle size for Count.
  int value = 0;

  friend bool operator==(const ChainPremise&, const ChainPremise&) = default;
};

struct ChainFixture {
  std::string name;
  Rational epsilon{1, 10};
  Rational threshold;
  /// Information model the profiles are written for. Ordinal fixtures hold one
  /// representative row per ranking and are judged by dominance.
  ModelKind model = ModelKind::Cardinal;
  std::vector<Instance> profiles;
  std::vector<ChainEdge> edges;
  std::vector<ChainPremise> premises;
};

std::vector<std::string> builtin_fixture_names();
/// lemma-2+2, lemma-1+3, pr-m6, pr-m5, ordinal-m4. Throws std::invalid_argument
/// for unknown names or an epsilon outside the fixture's range.
ChainFixture builtin_fixture(std::string_view name, const Rational& epsilon = Rational(1, 10));

/// Text format, one directive per line ('#' starts a comment):
///   name NAME | epsilon P/Q | threshold P/Q | model cardinal|ordinal|public-rankings
///   profile            followed by two value rows
///   edge FROM TO PLAYER                        (1-based)
///   premise receives PROFILE|* PLAYER ITEM     (1-based)
///   premise count PROFILE|* PLAYER K
ChainFixture parse_fixture(std::istream& in);
ChainFixture parse_fixture_string(const std::string& text);
std::string format_fixture(const ChainFixture& fixture);

/// Empty result means the fixture is well formed: equal shapes, two players,
/// edges in range and changing exactly the deviating player's row.
std::vector<std::string> validate_fixture(const ChainFixture& fixture);

/// Whether a mechanism running in `model` is covered by the fixture's argument.
bool fixture_applies(const ChainFixture& fixture, ModelKind model);
/// Players swapped in every profile, edge and premise.
ChainFixture mirrored(const ChainFixture& fixture);

enum class Verdict { ApproxFailure, Manipulable, Consistent };
std::string_view verdict_name(Verdict v);

struct ProfileOutcome {
  Allocation allocation;
  std::vector<Rational> shares;
  std::vector<ApproxRatio> ratios;
};

struct EdgeOutcome {
  ChainEdge edge;
  /// Positive iff the deviation strictly helps. For ordinal fixtures this is
  /// the largest top-k count gain, positive iff some valuation consistent
  /// with the ranking prefers the deviation.
  Rational gain;
};

struct ChainReport {
  std::string fixture;
  MechanismId mechanism;
  ModelKind model = ModelKind::Cardinal;
  Rational threshold;
  bool mirrored = false;
  bool premise_met = false;
  std::vector<ProfileOutcome> profiles;
  std::vector<EdgeOutcome> edges;
  Verdict verdict = Verdict::Consistent;
  /// APPROX-FAILURE location.
  int failing_profile = -1;
  int failing_player = -1;
  std::optional<ApproxRatio> failing_ratio;
  /// MANIPULABLE location (index into edges).
  int manipulable_edge = -1;
};

/// Throws MechanismError on a model mismatch and propagates errors from
/// mechanisms that cannot run on the fixture's shape.
ChainReport run_chain(const ChainFixture& fixture, const MechanismId& id, ModelKind model, std::uint64_t seed = 0);

/// Whether the allocations in a report satisfy the fixture's premises.
bool premises_hold(const ChainFixture& fixture, const std::vector<ProfileOutcome>& outcomes);

// ---------------------------------------------------------------------------
// Common-ranking adversary for the ordinal model

/// 1-based i: i-1 ones followed by m-i+1 copies of 1/(m-i+1).
ValueRow ordinal_adversary_valuation(int i, int n, int m);

enum class BoundVerdict { Infeasible, FeasibleUnknown };
std::string_view bound_verdict_name(BoundVerdict v);

struct OrdinalBoundCheck {
  /// ceil(alpha * floor((m-i+1)/(n-i+1))) for i = 1..n.
  std::vector<std::int64_t> terms;
  std::int64_t sum = 0;
  int m = 0;
  BoundVerdict verdict = BoundVerdict::FeasibleUnknown;
};
OrdinalBoundCheck ordinal_lower_bound_check(int n, int m, const Rational& alpha);

struct ExhaustiveBound {
  /// max over allocations of the min over row-to-player assignments of
  /// min_i v_i(A_i) / mu_i.
  Rational best_worst_ratio;
  Allocation best_allocation;
  std::int64_t allocations = 0;
};
/// Enumerates n^m allocations (n^m <= 10^6) against the adversarial rows.
ExhaustiveBound ordinal_exhaustive_bound(int n, int m);

// ---------------------------------------------------------------------------
// Randomized allocation experiment

struct Distribution {
  enum class Kind { ContinuousUniform01, DiscreteUniform, Bernoulli };
  Kind kind = Kind::ContinuousUniform01;
  /// DiscreteUniform: values j/(levels-1), j = 0..levels-1.
  int levels = 2;
  /// Bernoulli success probability.
  double p = 0.5;

  double mean() const;
  double variance() const;
  std::string str() const;
  /// "uniform", "discrete:K" or "bernoulli:P".
  static Distribution parse(std::string_view text);
};

struct MCConfig {
  int n = 2;
  int m = 10;
  /// One entry shared by all players, or one per player.
  std::vector<Distribution> distributions{Distribution{}};
  Rational rho{1, 2};
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
};

struct MCResult {
  double success_rate = 0;
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<double> mean_errors;
  std::vector<double> variance_errors;
  std::vector<double> thresholds;
  std::int64_t trials = 0;
};

/// Values drawn per player, every item handed to a uniformly random player.
/// Trial t draws from its own generator seeded by (seed, t).
MCResult montecarlo_randomized(const MCConfig& cfg);

}  // namespace mmsfair

#endif  // MMSFAIR_ADVERSARY_HPP
