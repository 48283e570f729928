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

#include "mmsfair/mechanisms.hpp"

namespace mmsfair {

Allocation run_picking_sequence(std::span<const Ranking> rankings, int m, const PickingSequence& seq) {
  const int n = static_cast<int>(rankings.size());
  if (n < 1) throw MechanismError("picking sequence needs at least one ranking");
  for (const auto& r : rankings) {
    if (r.size() != m) throw MechanismError("ranking length does not match item count");
  }
  if (seq.picks.empty() && m > 0) throw MechanismError("empty picking sequence");
  for (int p : seq.picks) {
    if (p < 0 || p >= n) throw MechanismError("picking sequence names player " + std::to_string(p + 1));
  }
  if (!seq.cyclic && static_cast<int>(seq.picks.size()) < m) {
    throw MechanismError("picking sequence exhausted: " + std::to_string(seq.picks.size()) + " picks for " +
                         std::to_string(m) + " items");
  }

  Allocation alloc;
  alloc.bundles.resize(static_cast<std::size_t>(n));
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  std::vector<int> cursor(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < m; ++step) {
    int p = seq.picks[static_cast<std::size_t>(step) % seq.picks.size()];
    const auto& order = rankings[p].order;
    int& c = cursor[p];
    while (taken[order[c]]) ++c;
    int item = order[c];
    taken[item] = 1;
    alloc.bundles[p].push_back(item);
  }
  for (auto& b : alloc.bundles) std::sort(b.begin(), b.end());
  return alloc;
}

PickingSequence best_item_sequence(int n, int m) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  PickingSequence seq;
  if (m < n) {
    for (int p = 0; p < m; ++p) seq.picks.push_back(p);
    if (seq.picks.empty()) seq.picks.push_back(0);
    return seq;
  }
  for (int p = 0; p < n - 1; ++p) seq.picks.push_back(p);
  seq.picks.insert(seq.picks.end(), static_cast<std::size_t>(m - n + 1), n - 1);
  return seq;
}

PickingSequence pr_sequence(int n) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  PickingSequence seq;
  seq.cyclic = true;
  for (int p = 0; p < n; ++p) seq.picks.push_back(p);
  seq.picks.push_back(n - 1);
  return seq;
}

ItemSet positions_bundle(const Ranking& ranking, std::span<const int> positions) {
  ItemSet out;
  for (int k : positions) {
    if (k < 1 || k > ranking.size()) throw std::out_of_range("ranking position " + std::to_string(k) + " out of range");
    out.push_back(ranking.order[k - 1]);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("repeated ranking position");
  }
  return out;
}

}  // namespace mmsfair
