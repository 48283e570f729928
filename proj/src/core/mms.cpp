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

#include "mmsfair/mms.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_set>
#include <stdexcept>

namespace mmsfair {
namespace {

using i64 = std::int64_t;

i64 checked_add(i64 a, i64 b) {
  i64 out;
  if (__builtin_add_overflow(a, b, &out)) throw RationalOverflow("integer sum overflow in maximin share");
  return out;
}

i64 checked_mul(i64 a, i64 b) {
  i64 out;
  if (__builtin_mul_overflow(a, b, &out)) throw RationalOverflow("integer scale overflow in maximin share");
  return out;
}

// Decision procedure: can the weights be split into `parts` bundles that
// each reach `target`? Bundles that reach the target are closed; an item may
// also be discarded (it ends up in some closed bundle). Every unit above the
// target in a closed bundle and every discarded unit is waste, and total waste
// can never exceed sum - parts * target.
class CoverSearch {
 public:
  CoverSearch(std::span<const i64> weights_desc, int parts, i64 total)
      : w_(weights_desc), parts_(parts), total_(total), sums_(static_cast<std::size_t>(parts), 0),
        closed_(static_cast<std::size_t>(parts), false) {}

  /// Smallest closed-bundle sum of a witness partition, if one exists.
  std::optional<i64> feasible(i64 target) {
    target_ = target;
    budget_ = total_ - checked_mul(static_cast<i64>(parts_), target);
    if (budget_ < 0) return std::nullopt;
    std::fill(sums_.begin(), sums_.end(), 0);
    std::fill(closed_.begin(), closed_.end(), false);
    waste_ = 0;
    n_closed_ = 0;
    if (!dfs(0)) return std::nullopt;
    i64 best = std::numeric_limits<i64>::max();
    for (int t = 0; t < parts_; ++t) best = std::min(best, sums_[t]);
    return best;
  }

 private:
  bool dfs(std::size_t idx) {
    if (n_closed_ == parts_) return true;
    if (idx == w_.size()) return false;
    const i64 w = w_[idx];

    // Candidate open bundles, one per distinct sum: closing moves first
    // (least overflow first), then the fullest non-closing bundle.
    cand_.clear();
    for (int t = 0; t < parts_; ++t) {
      if (!closed_[t]) cand_.push_back(t);
    }
    std::vector<int> order = cand_;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      bool ca = sums_[a] + w >= target_;
      bool cb = sums_[b] + w >= target_;
      if (ca != cb) return ca;
      if (ca) return sums_[a] < sums_[b];
      return sums_[a] > sums_[b];
    });

    i64 last = -1;
    for (int t : order) {
      i64 s = sums_[t];
      if (s == last) continue;
      last = s;
      if (s + w >= target_) {
        i64 overflow = s + w - target_;
        if (waste_ + overflow > budget_) continue;
        waste_ += overflow;
        sums_[t] = s + w;
        closed_[t] = true;
        ++n_closed_;
        if (dfs(idx + 1)) return true;
        --n_closed_;
        closed_[t] = false;
        sums_[t] = s;
        waste_ -= overflow;
      } else {
        sums_[t] = s + w;
        if (dfs(idx + 1)) return true;
        sums_[t] = s;
      }
    }
    if (waste_ + w <= budget_) {
      waste_ += w;
      if (dfs(idx + 1)) return true;
      waste_ -= w;
    }
    return false;
  }

  std::span<const i64> w_;
  int parts_;
  i64 total_;
  i64 target_ = 0;
  i64 budget_ = 0;
  i64 waste_ = 0;
  int n_closed_ = 0;
  std::vector<i64> sums_;
  std::vector<bool> closed_;
  std::vector<int> cand_;
};

// Same decision problem, one bundle at a time: the largest unused item either
// opens the next bundle, completed by a minimal set of smaller items, or is
// discarded. Items that reach the target alone close a bundle each. Failed
// (unused set, bundles left) states are memoized. Needs m <= kMaxMaskItems.
class BundleSearch {
 public:
  static constexpr int kMaxMaskItems = 56;

  BundleSearch(std::span<const i64> weights_desc, int parts, i64 total)
      : w_(weights_desc), parts_(parts), total_(total) {}

  std::optional<i64> feasible(i64 target) {
    target_ = target;
    budget_ = total_ - checked_mul(static_cast<i64>(parts_), target);
    if (budget_ < 0) return std::nullopt;
    failed_.clear();
    closed_.clear();
    waste_ = 0;
    used_ = 0;
    int left = parts_;
    for (std::size_t i = 0; i < w_.size() && left > 0 && w_[i] >= target; ++i) {
      used_ |= bit(i);
      closed_.push_back(w_[i]);
      waste_ += w_[i] - target;
      --left;
    }
    if (!dfs(left)) return std::nullopt;
    return *std::min_element(closed_.begin(), closed_.end());
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  bool dfs(int left) {
    if (left == 0) return true;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (!(used_ & bit(i))) free.push_back(i);
    }
    // Every remaining item is below the target, so a bundle takes two.
    if (static_cast<int>(free.size()) < 2 * left) return false;
    const std::uint64_t key = used_ | (static_cast<std::uint64_t>(left) << kMaxMaskItems);
    if (failed_.count(key)) return false;

    const std::size_t first = free.front();
    const i64 x = w_[first];
    std::vector<std::pair<i64, std::uint64_t>> completions;
    std::vector<i64> suffix(free.size() + 1, 0);
    for (std::size_t k = free.size(); k-- > 1;) suffix[k] = suffix[k + 1] + w_[free[k]];
    collect(free, suffix, 1, x, bit(first), completions);
    std::sort(completions.begin(), completions.end());

    for (const auto& [overflow, mask] : completions) {
      if (waste_ + overflow > budget_) break;
      used_ |= mask;
      waste_ += overflow;
      closed_.push_back(target_ + overflow);
      if (dfs(left - 1)) return true;
      closed_.pop_back();
      waste_ -= overflow;
      used_ &= ~mask;
    }
    if (waste_ + x <= budget_) {
      used_ |= bit(first);
      waste_ += x;
      if (dfs(left)) return true;
      waste_ -= x;
      used_ &= ~bit(first);
    }
    failed_.insert(key);
    return false;
  }

  // Minimal completions: add items in descending order and stop as soon as
  // the bundle reaches the target.
  void collect(const std::vector<std::size_t>& free, const std::vector<i64>& suffix, std::size_t from, i64 sum,
               std::uint64_t mask, std::vector<std::pair<i64, std::uint64_t>>& out) const {
    if (sum + suffix[from] < target_) return;
    i64 last = -1;
    for (std::size_t k = from; k < free.size(); ++k) {
      const i64 w = w_[free[k]];
      if (w == last) continue;
      last = w;
      if (sum + w + suffix[k + 1] < target_) break;
      if (sum + w >= target_) {
        if (sum + w - target_ + waste_ <= budget_) out.emplace_back(sum + w - target_, mask | bit(free[k]));
      } else {
        collect(free, suffix, k + 1, sum + w, mask | bit(free[k]), out);
      }
    }
  }

  std::span<const i64> w_;
  int parts_;
  i64 total_;
  i64 target_ = 0;
  i64 budget_ = 0;
  i64 waste_ = 0;
  std::uint64_t used_ = 0;
  std::vector<i64> closed_;
  std::unordered_set<std::uint64_t> failed_;
};

i64 greedy_lower_bound(std::span<const i64> weights_desc, int parts) {
  std::priority_queue<i64, std::vector<i64>, std::greater<>> heap;
  for (int t = 0; t < parts; ++t) heap.push(0);
  for (i64 w : weights_desc) {
    i64 s = heap.top();
    heap.pop();
    heap.push(s + w);
  }
  return heap.top();
}

// The r largest items sit in at most r bundles, so the other parts - r
// bundles share what is left.
i64 counting_upper_bound(std::span<const i64> weights_desc, int parts, i64 total) {
  i64 best = total / parts;
  i64 top = 0;
  for (int r = 1; r < parts && r <= static_cast<int>(weights_desc.size()); ++r) {
    top += weights_desc[static_cast<std::size_t>(r - 1)];
    best = std::min(best, (total - top) / (parts - r));
  }
  return best;
}

}  // namespace

std::vector<i64> subset_sums(std::span<const i64> weights) {
  i64 total = 0;
  for (i64 w : weights) total = checked_add(total, w);
  std::vector<i64> out;
  if (total <= (i64{1} << 25)) {
    std::vector<char> reach(static_cast<std::size_t>(total) + 1, 0);
    reach[0] = 1;
    i64 hi = 0;
    for (i64 w : weights) {
      if (w == 0) continue;
      for (i64 s = hi; s >= 0; --s) {
        if (reach[static_cast<std::size_t>(s)]) reach[static_cast<std::size_t>(s + w)] = 1;
      }
      hi += w;
    }
    for (i64 s = 0; s <= total; ++s) {
      if (reach[static_cast<std::size_t>(s)]) out.push_back(s);
    }
    return out;
  }
  out.push_back(0);
  std::vector<i64> shifted;
  std::vector<i64> merged;
  for (i64 w : weights) {
    if (w == 0) continue;
    shifted.resize(out.size());
    std::transform(out.begin(), out.end(), shifted.begin(), [w](i64 s) { return s + w; });
    merged.clear();
    std::set_union(out.begin(), out.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
    out.swap(merged);
  }
  return out;
}

i64 max_min_partition(std::vector<i64> weights, int parts) {
  if (parts < 1) throw std::invalid_argument("parts must be at least 1");
  for (i64 w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
  }
  std::erase(weights, 0);
  i64 total = 0;
  for (i64 w : weights) total = checked_add(total, w);
  if (parts == 1) return total;
  if (static_cast<int>(weights.size()) < parts) return 0;
  if (parts == 2) {
    auto sums = subset_sums(weights);
    auto it = std::upper_bound(sums.begin(), sums.end(), total / 2);
    return *std::prev(it);
  }
  std::sort(weights.begin(), weights.end(), std::greater<>());
  i64 lo = greedy_lower_bound(weights, parts);
  i64 hi = counting_upper_bound(weights, parts, total);
  auto bisect = [&](auto& search) {
    while (lo < hi) {
      i64 mid = lo + (hi - lo + 1) / 2;
      if (auto got = search.feasible(mid)) {
        lo = std::min(*got, hi);
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  };
  if (static_cast<int>(weights.size()) <= BundleSearch::kMaxMaskItems) {
    BundleSearch search(weights, parts, total);
    return bisect(search);
  }
  CoverSearch search(weights, parts, total);
  return bisect(search);
}

ScaledRow scale_to_integers(std::span<const Rational> values) {
  ScaledRow out;
  i64 lcm = 1;
  for (const auto& v : values) {
    i64 g = std::gcd(lcm, v.den());
    lcm = checked_mul(lcm / g, v.den());
  }
  out.scale = lcm;
  out.weights.reserve(values.size());
  for (const auto& v : values) out.weights.push_back(checked_mul(v.num(), lcm / v.den()));
  return out;
}

MmsQuery full_query(const Instance& inst, int player) {
  MmsQuery q;
  q.player = player;
  q.parts = inst.n();
  q.items.resize(static_cast<std::size_t>(inst.m()));
  std::iota(q.items.begin(), q.items.end(), 0);
  return q;
}

Rational maximin_share(std::span<const Rational> values, int parts) {
  if (parts < 1) throw std::invalid_argument("parts must be at least 1");
  ScaledRow scaled = scale_to_integers(values);
  return Rational(max_min_partition(std::move(scaled.weights), parts), scaled.scale);
}

Rational maximin_share(const Instance& inst, const MmsQuery& query) {
  auto row = inst.row(query.player);
  std::vector<Rational> values;
  values.reserve(query.items.size());
  std::vector<char> seen(static_cast<std::size_t>(inst.m()), 0);
  for (int j : query.items) {
    if (j < 0 || j >= inst.m()) throw std::out_of_range("item index " + std::to_string(j) + " out of range");
    if (seen[j]) throw std::invalid_argument("item " + std::to_string(j + 1) + " listed twice in query");
    seen[j] = 1;
    values.push_back(row[static_cast<std::size_t>(j)]);
  }
  return maximin_share(values, query.parts);
}

std::vector<Rational> maximin_shares(const Instance& inst) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) out.push_back(maximin_share(inst.row(i), inst.n()));
  return out;
}

const Rational& ApproxRatio::value() const {
  if (!value_) throw std::logic_error("ratio is unbounded");
  return *value_;
}

std::string ApproxRatio::str() const { return value_ ? value_->str() : "unbounded"; }

ApproxRatio approximation_ratio(const Instance& inst, const Allocation& alloc, std::span<const Rational> shares) {
  auto violations = validate_allocation(inst, alloc);
  if (!violations.empty()) throw std::invalid_argument("invalid allocation: " + violations.front());
  std::optional<Rational> best;
  for (int i = 0; i < inst.n(); ++i) {
    if (shares[static_cast<std::size_t>(i)].is_zero()) continue;
    Rational r = bundle_value(inst, i, alloc.bundles[i]) / shares[static_cast<std::size_t>(i)];
    if (!best || r < *best) best = r;
  }
  return best ? ApproxRatio::of(*best) : ApproxRatio::unbounded();
}

ApproxRatio approximation_ratio(const Instance& inst, const Allocation& alloc) {
  auto shares = maximin_shares(inst);
  return approximation_ratio(inst, alloc, shares);
}

TwoPartition best_two_partition(std::span<const Rational> row) {
  const int m = static_cast<int>(row.size());
  TwoPartition out;
  if (m == 0) return out;
  ScaledRow scaled = scale_to_integers(row);
  const auto& w = scaled.weights;
  i64 total = std::accumulate(w.begin(), w.end(), i64{0});
  i64 mu = max_min_partition(w, 2);
  const i64 lo = mu;
  const i64 hi = total - mu;

  // suffix[j] = subset sums of items j..m-1.
  std::vector<std::vector<i64>> suffix(static_cast<std::size_t>(m) + 1);
  suffix[m] = {0};
  for (int j = m - 1; j >= 0; --j) {
    const auto& next = suffix[j + 1];
    std::vector<i64> shifted(next.size());
    std::transform(next.begin(), next.end(), shifted.begin(), [&](i64 s) { return s + w[j]; });
    std::set_union(next.begin(), next.end(), shifted.begin(), shifted.end(), std::back_inserter(suffix[j]));
  }
  auto reachable_in = [&](int from, i64 a, i64 b) {
    if (b < a) return false;
    const auto& sums = suffix[static_cast<std::size_t>(from)];
    auto it = std::lower_bound(sums.begin(), sums.end(), a);
    return it != sums.end() && *it <= b;
  };

  // Lexicographically smallest sorted item list containing item 0: a valid
  // prefix beats any extension, otherwise take the smallest next item that
  // still admits a completion.
  ItemSet chosen{0};
  i64 s = w[0];
  int last = 0;
  while (s < lo || s > hi) {
    int next = -1;
    for (int j = last + 1; j < m; ++j) {
      if (reachable_in(j + 1, lo - s - w[j], hi - s - w[j])) {
        next = j;
        break;
      }
    }
    if (next < 0) throw std::logic_error("two-partition search lost feasibility");
    chosen.push_back(next);
    s += w[next];
    last = next;
  }
  out.with_first = chosen;
  std::vector<char> in(static_cast<std::size_t>(m), 0);
  for (int j : chosen) in[j] = 1;
  for (int j = 0; j < m; ++j) {
    if (!in[j]) out.rest.push_back(j);
  }
  out.min_value = Rational(mu, scaled.scale);
  return out;
}

}  // namespace mmsfair
