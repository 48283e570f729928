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

#include <algorithm>
#include <numeric>

#include "mmsfair/adversary.hpp"

namespace mmsfair {

ValueRow ordinal_adversary_valuation(int i, int n, int m) {
  if (n < 1 || n > m || i < 1 || i > n) {
    throw std::out_of_range("adversary row needs 1 <= i <= n <= m (i=" + std::to_string(i) +
                            ", n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
  ValueRow row(static_cast<std::size_t>(m), Rational(1, m - i + 1));
  std::fill(row.begin(), row.begin() + (i - 1), Rational{1});
  return row;
}

std::string_view bound_verdict_name(BoundVerdict v) {
  return v == BoundVerdict::Infeasible ? "INFEASIBLE" : "FEASIBLE-UNKNOWN";
}

OrdinalBoundCheck ordinal_lower_bound_check(int n, int m, const Rational& alpha) {
  if (n < 1 || n > m) throw std::invalid_argument("counting check needs 1 <= n <= m");
  if (alpha < Rational{0}) throw std::invalid_argument("alpha must be non-negative");
  OrdinalBoundCheck check;
  check.m = m;
  for (int i = 1; i <= n; ++i) {
    std::int64_t share_items = (m - i + 1) / (n - i + 1);
    check.terms.push_back((alpha * Rational(share_items)).ceil());
    check.sum += check.terms.back();
  }
  check.verdict = check.sum > m ? BoundVerdict::Infeasible : BoundVerdict::FeasibleUnknown;
  return check;
}

ExhaustiveBound ordinal_exhaustive_bound(int n, int m) {
  if (n < 1 || n > m) throw std::invalid_argument("exhaustive bound needs 1 <= n <= m");
  std::int64_t total = 1;
  for (int j = 0; j < m; ++j) {
    total *= n;
    if (total > 1'000'000) throw std::invalid_argument("n^m exceeds 10^6 allocations");
  }
  std::vector<ValueRow> rows;
  std::vector<Rational> shares;
  for (int i = 1; i <= n; ++i) {
    rows.push_back(ordinal_adversary_valuation(i, n, m));
    shares.push_back(maximin_share(rows.back(), n));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));

  ExhaustiveBound result;
  bool have = false;
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<Rational>> got(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  while (true) {
    ++result.allocations;
    // got[player][row]: value of the player's bundle under adversary row.
    for (auto& g : got) std::fill(g.begin(), g.end(), Rational{0});
    for (int j = 0; j < m; ++j) {
      for (int r = 0; r < n; ++r) got[owner[j]][r] += rows[r][j];
    }
    std::iota(perm.begin(), perm.end(), 0);
    Rational worst;
    bool first = true;
    do {
      for (int p = 0; p < n; ++p) {
        Rational ratio = got[p][perm[p]] / shares[perm[p]];
        if (first || ratio < worst) {
          worst = ratio;
          first = false;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!have || worst > result.best_worst_ratio) {
      have = true;
      result.best_worst_ratio = worst;
      result.best_allocation.bundles.assign(static_cast<std::size_t>(n), {});
      for (int j = 0; j < m; ++j) result.best_allocation.bundles[owner[j]].push_back(j);
    }
    int k = m - 1;
    while (k >= 0 && owner[k] == n - 1) owner[k--] = 0;
    if (k < 0) break;
    ++owner[k];
  }
  return result;
}

}  // namespace mmsfair
