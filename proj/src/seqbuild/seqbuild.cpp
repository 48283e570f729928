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

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mmsfair {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using i64 = std::int64_t;

cpp_rational to_big(const Rational& r) { return cpp_rational(cpp_int(r.num()), cpp_int(r.den())); }

cpp_rational big_harmonic(int n) {
  cpp_rational h = 0;
  for (int k = 1; k <= n; ++k) h += cpp_rational(1, k);
  return h;
}

cpp_int ceil_big(const cpp_rational& x) {
  cpp_int num = boost::multiprecision::numerator(x);
  cpp_int den = boost::multiprecision::denominator(x);
  cpp_int q = num / den;
  if (q * den != num && num > 0) q += 1;
  return q;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// p/q <= n^(-c/d)  <=>  p^d * n^c <= q^d.
class PowerBound {
 public:
  PowerBound(int n, i64 c, i64 d) : d_(static_cast<unsigned>(d)), nc_(boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(c))) {}

  bool at_most(i64 p, i64 q) const {
    if (p == 0) return true;
    return boost::multiprecision::pow(cpp_int(p), d_) * nc_ <= boost::multiprecision::pow(cpp_int(q), d_);
  }

 private:
  unsigned d_;
  cpp_int nc_;
};

// Largest k in [0, hi] with pred(k), assuming pred(0) and pred monotone.
template <typename Pred>
i64 last_true(i64 hi, Pred pred) {
  i64 lo = 0;
  while (lo < hi) {
    i64 mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::string describe(const SqrtSeqParams& p, const LengthBound& b) {
  return "infeasible parameters: n + ceil(alpha*H_n*m) = " + std::to_string(b.lhs) + " > m = " + std::to_string(b.rhs) +
         " (n=" + std::to_string(p.n) + ", epsilon=" + p.epsilon.str() + ", alpha=" + p.alpha.str() + ")";
}

}  // namespace

Rational harmonic_number(int n) {
  if (n < 0) throw std::invalid_argument("harmonic number of a negative integer");
  Rational h{0};
  for (int k = 1; k <= n; ++k) h = h + Rational(1, k);
  return h;
}

Rational sqrt_alpha(int n, const Rational& epsilon) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  if (epsilon <= Rational{0}) throw std::invalid_argument("epsilon must be positive");
  if (n == 1) return Rational{1};
  // Exponent 1/2 + a/b = (b + 2a) / (2b).
  i64 c = epsilon.den() + 2 * epsilon.num();
  i64 d = 2 * epsilon.den();
  i64 g = std::gcd(c, d);
  c /= g;
  d /= g;
  PowerBound below(n, c, d);

  const i64 cap = kAlphaMaxDenominator;
  i64 lp = 0, lq = 1, up = 1, uq = 1;
  while (true) {
    i64 right = last_true((cap - lq) / uq, [&](i64 k) { return below.at_most(lp + k * up, lq + k * uq); });
    if (right > 0) {
      lp += right * up;
      lq += right * uq;
    }
    i64 left = last_true((cap - uq) / lq, [&](i64 k) { return !below.at_most(k * lp + up, k * lq + uq); });
    if (left > 0) {
      up += left * lp;
      uq += left * lq;
    }
    if (right == 0 && left == 0) break;
  }
  return Rational(lp, lq);
}

InfeasibleParams::InfeasibleParams(const SqrtSeqParams& params, const LengthBound& bound)
    : std::invalid_argument(describe(params, bound)), bound_(bound) {}

LengthBound length_bound(const SqrtSeqParams& params) {
  cpp_rational term = to_big(params.alpha) * big_harmonic(params.n) * params.m;
  cpp_int lhs = params.n + ceil_big(term);
  LengthBound b;
  b.lhs = lhs > std::numeric_limits<i64>::max() ? std::numeric_limits<i64>::max() : static_cast<i64>(lhs);
  b.rhs = params.m;
  return b;
}

SqrtSeqParams make_sqrt_params(int n, int m, const Rational& epsilon) {
  if (m < 0) throw std::invalid_argument("item count must be non-negative");
  SqrtSeqParams p;
  p.n = n;
  p.m = m;
  p.epsilon = epsilon;
  p.alpha = sqrt_alpha(n, epsilon);
  if (n > 1) {
    LengthBound b = length_bound(p);
    if (!b.holds()) throw InfeasibleParams(p, b);
  }
  return p;
}

std::optional<int> smallest_feasible_m(int n, const Rational& epsilon) {
  Rational alpha = sqrt_alpha(n, epsilon);
  if (n == 1) return 0;
  cpp_rational c = to_big(alpha) * big_harmonic(n);
  if (c >= 1) return std::nullopt;
  // m = ceil((n + 1) / (1 - c)) always passes; m - ceil(c m) is non-decreasing.
  cpp_int hi_big = ceil_big(cpp_rational(n + 1) / (1 - c));
  if (hi_big > std::numeric_limits<int>::max()) return std::nullopt;
  int lo = n;
  int hi = static_cast<int>(hi_big);
  auto ok = [&](int m) { return n + ceil_big(c * m) <= m; };
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::int64_t pick_spacing(int n, int player, const Rational& alpha) {
  const i64 i = player + 1;
  return floor_div((n - i + 1) * alpha.den(), alpha.num());
}

std::vector<PickPair> sqrt_pick_pairs(const SqrtSeqParams& params) {
  const int n = params.n;
  const Rational& a = params.alpha;
  std::vector<PickPair> pairs;
  for (int player = 0; player < n; ++player) {
    const i64 i = player + 1;
    const i64 spacing = pick_spacing(n, player, a);
    const i64 last = floor_div(a.num() * (params.m - i), a.den() * (n - i + 1));
    for (i64 j = 0; j <= last; ++j) {
      pairs.push_back(PickPair{player, i + j * spacing, static_cast<int>(j)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const PickPair& x, const PickPair& y) {
    return x.deadline != y.deadline ? x.deadline < y.deadline : x.player < y.player;
  });
  return pairs;
}

PickingSequence build_sqrt_sequence(const SqrtSeqParams& params) {
  PickingSequence seq;
  if (params.n < 1) throw std::invalid_argument("need at least one player");
  if (params.n == 1) {
    seq.picks.assign(static_cast<std::size_t>(params.m), 0);
    return seq;
  }
  LengthBound b = length_bound(params);
  if (!b.holds()) throw InfeasibleParams(params, b);
  for (const auto& pair : sqrt_pick_pairs(params)) seq.picks.push_back(pair.player);
  if (static_cast<int>(seq.picks.size()) > params.m) throw InfeasibleParams(params, b);

  // Round-robin padding that skips players whose next pick would land past
  // their position bound, when some other player can still take the slot.
  const int n = params.n;
  std::vector<i64> count(static_cast<std::size_t>(n), 0);
  for (int p : seq.picks) ++count[p];
  int next = 0;
  while (static_cast<int>(seq.picks.size()) < params.m) {
    const i64 position = static_cast<i64>(seq.picks.size()) + 1;
    int chosen = next;
    for (int step = 0; step < n; ++step) {
      int p = (next + step) % n;
      if ((p + 1) + count[p] * pick_spacing(n, p, params.alpha) >= position) {
        chosen = p;
        break;
      }
    }
    seq.picks.push_back(chosen);
    ++count[chosen];
    next = (chosen + 1) % n;
  }
  return seq;
}

std::vector<PositionViolation> verify_pick_positions(const PickingSequence& seq, int n, const Rational& alpha) {
  if (seq.cyclic) throw std::invalid_argument("position check needs a non-cyclic sequence");
  if (alpha <= Rational{0}) throw std::invalid_argument("alpha must be positive");
  std::vector<PositionViolation> out;
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < seq.picks.size(); ++k) {
    int p = seq.picks[k];
    if (p < 0 || p >= n) throw std::invalid_argument("sequence names player " + std::to_string(p + 1));
    int j = seen[p]++;
    i64 bound = (p + 1) + j * pick_spacing(n, p, alpha);
    i64 actual = static_cast<i64>(k) + 1;
    if (actual > bound) out.push_back(PositionViolation{p, j, actual, bound});
  }
  return out;
}

std::vector<CountingCheck> check_counting_inequality(const SqrtSeqParams& params) {
  const int n = params.n;
  std::vector<i64> spacing(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) spacing[l] = pick_spacing(n, l, params.alpha);
  std::vector<CountingCheck> out;
  if (n == 1) return out;
  const Rational& a = params.alpha;
  for (int player = 0; player < n; ++player) {
    const i64 i = player + 1;
    const i64 last = floor_div(a.num() * (params.m - i), a.den() * (n - i + 1));
    for (i64 j = 0; j <= last; ++j) {
      const i64 target = i + j * spacing[player];
      i64 lhs = n;
      for (int l = 0; l < n; ++l) lhs += floor_div(i - (l + 1) + j * spacing[player], spacing[l]);
      out.push_back(CountingCheck{player, static_cast<int>(j), lhs, target});
    }
  }
  return out;
}

Rational theoretical_ratio(const MechanismId& id, int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("bad instance size");
  switch (id.kind) {
    case MechanismKind::BestItem:
    case MechanismKind::PickSeq: {
      if (m <= n + 1) return Rational{1};
      return Rational(1, std::max(2, m - n + 2) / 2);
    }
    case MechanismKind::PR:
      return Rational(2, n + 1);
    case MechanismKind::SqrtSeq:
      return sqrt_alpha(n, id.epsilon);
    default:
      throw MechanismError("no closed-form ratio for " + std::string(mechanism_name(id.kind)));
  }
}

}  // namespace mmsfair
