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

#include "mmsfair/strategy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace mmsfair {
namespace {

using i64 = std::int64_t;

void check_player(const Instance& inst, int player) {
  if (player < 0 || player >= inst.n()) throw std::out_of_range("player " + std::to_string(player + 1) + " out of range");
}

void check_rows(const Instance& inst, std::span<const ValueRow> rows) {
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != inst.m()) throw std::invalid_argument("misreport row has wrong length");
    for (const auto& v : row) {
      if (v < Rational{0}) throw std::invalid_argument("misreport row has a negative value");
    }
  }
}

std::vector<std::vector<int>> all_orders(int m) {
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Number of distinct allocations a player can reach by reporting, when it is
// known in closed form.
std::optional<std::size_t> reachable_outcomes(const MechanismId& id, const Instance& inst, int player) {
  if (id.kind != MechanismKind::PRExact24 || inst.n() != 2 || inst.m() != 4) return std::nullopt;
  auto rankings = derive_rankings(inst);
  bool same_top = rankings[0].order.front() == rankings[1].order.front();
  return (same_top && player == 0) ? 2 : 1;
}

class Tracker {
 public:
  Tracker(const Instance& inst, int player, ModelKind model) : inst_(inst), player_(player) {
    report_.player = player;
    report_.model = model;
  }

  void truthful(const Allocation& alloc) {
    report_.truthful_value = bundle_value(inst_, player_, alloc.bundles[player_]);
    report_.best_deviation_value = report_.truthful_value;
    outcomes_.insert(alloc.bundles);
  }

  void observe(const Allocation& alloc, const Misreport& report) {
    ++report_.evaluated;
    outcomes_.insert(alloc.bundles);
    Rational v = bundle_value(inst_, player_, alloc.bundles[player_]);
    if (v > report_.best_deviation_value) {
      report_.best_deviation_value = v;
      report_.witness = report;
    }
  }

  std::size_t distinct_outcomes() const { return outcomes_.size(); }
  DeviationReport& report() { return report_; }

 private:
  const Instance& inst_;
  int player_;
  DeviationReport report_;
  std::set<std::vector<ItemSet>> outcomes_;
};

DeviationReport value_search(const MechanismId& id, ModelKind model, const Instance& inst, int player,
                             const std::vector<ValueRow>& pool) {
  Tracker tracker(inst, player, model);
  tracker.truthful(run_mechanism(id, model, inst, Reports{inst}));
  for (const auto& row : pool) {
    Instance reported = inst.with_row(player, row);
    tracker.observe(run_mechanism(id, model, inst, Reports{reported}), row);
  }
  DeviationReport& report = tracker.report();
  if (value_oblivious(id.kind)) {
    report.search_complete = true;
  } else if (auto reachable = reachable_outcomes(id, inst, player)) {
    report.search_complete = tracker.distinct_outcomes() >= *reachable;
  }
  return report;
}

void consistent_rows(const std::vector<Rational>& levels, const Ranking& ranking, std::size_t pos, std::size_t min_level,
                     ValueRow& row, std::vector<ValueRow>& out) {
  if (pos == ranking.order.size()) {
    out.push_back(row);
    return;
  }
  for (std::size_t l = min_level; l < levels.size(); ++l) {
    row[ranking.order[pos]] = levels[l];
    consistent_rows(levels, ranking, pos + 1, l, row, out);
  }
}

template <typename Fn>
void for_each_row(std::span<const Rational> grid, int m, Fn fn) {
  std::vector<std::size_t> digits(static_cast<std::size_t>(m), 0);
  ValueRow row(static_cast<std::size_t>(m), grid.empty() ? Rational{0} : grid[0]);
  if (grid.empty()) return;
  while (true) {
    fn(row);
    int k = m - 1;
    while (k >= 0 && digits[k] + 1 == grid.size()) {
      digits[k] = 0;
      row[k] = grid[0];
      --k;
    }
    if (k < 0) return;
    ++digits[k];
    row[k] = grid[digits[k]];
  }
}

}  // namespace

std::string format_misreport(const Misreport& report) {
  if (const auto* r = std::get_if<Ranking>(&report)) {
    std::string out;
    for (std::size_t k = 0; k < r->order.size(); ++k) {
      if (k) out += ">";
      out += std::to_string(r->order[k] + 1);
    }
    return out;
  }
  return format_row(std::get<ValueRow>(report));
}

DeviationReport deviation_search_ordinal(const MechanismId& id, const Instance& inst, int player) {
  check_player(inst, player);
  if (inst.m() > kMaxOrdinalItems) {
    throw std::invalid_argument("ordinal search enumerates m! rankings; m = " + std::to_string(inst.m()) +
                                " exceeds " + std::to_string(kMaxOrdinalItems));
  }
  std::vector<Ranking> reports = derive_rankings(inst);
  Tracker tracker(inst, player, ModelKind::Ordinal);
  tracker.truthful(run_mechanism(id, ModelKind::Ordinal, inst, Reports{reports}));
  for (auto& order : all_orders(inst.m())) {
    Ranking r{std::move(order)};
    reports[player] = r;
    tracker.observe(run_mechanism(id, ModelKind::Ordinal, inst, Reports{reports}), r);
  }
  tracker.report().search_complete = true;
  return tracker.report();
}

DeviationReport deviation_search_cardinal(const MechanismId& id, const Instance& inst, int player,
                                          std::span<const ValueRow> misreports) {
  check_player(inst, player);
  check_rows(inst, misreports);
  const int m = inst.m();
  if (m > kMaxOrdinalItems) {
    throw std::invalid_argument("cardinal search enumerates m! strict rows; m = " + std::to_string(m) + " exceeds " +
                                std::to_string(kMaxOrdinalItems));
  }
  std::vector<ValueRow> pool(misreports.begin(), misreports.end());
  auto true_row = inst.row(player);
  for (const auto& order : all_orders(m)) {
    ValueRow permuted(static_cast<std::size_t>(m));
    ValueRow strict(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      permuted[order[k]] = true_row[k];
      strict[order[k]] = Rational(m - k);
    }
    pool.push_back(std::move(permuted));
    pool.push_back(std::move(strict));
  }
  return value_search(id, ModelKind::Cardinal, inst, player, pool);
}

DeviationReport deviation_search_public(const MechanismId& id, const Instance& inst, int player,
                                        std::span<const ValueRow> misreports, std::span<const Rational> grid) {
  check_player(inst, player);
  check_rows(inst, misreports);
  std::vector<ValueRow> pool(misreports.begin(), misreports.end());
  std::vector<Rational> levels(grid.begin(), grid.end());
  for (const auto& v : levels) {
    if (v < Rational{0}) throw std::invalid_argument("grid value is negative");
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (!levels.empty()) {
    ValueRow row(static_cast<std::size_t>(inst.m()));
    consistent_rows(levels, derive_ranking(inst, player), 0, 0, row, pool);
  }
  return value_search(id, ModelKind::PublicRankings, inst, player, pool);
}

BudgetExceeded::BudgetExceeded(const std::string& required, std::int64_t budget)
    : std::runtime_error("grid enumeration needs " + required + " instances, budget is " + std::to_string(budget)),
      required_(required) {}

GridSummary verify_truthful_on_grid(const MechanismId& id, ModelKind model, int n, int m,
                                    std::span<const Rational> grid, std::int64_t budget) {
  if (n < 1 || m < 0) throw std::invalid_argument("bad instance size");
  if (grid.empty()) throw std::invalid_argument("empty value grid");
  for (const auto& v : grid) {
    if (v < Rational{0}) throw std::invalid_argument("grid value is negative");
  }
  if (!supports_model(id.kind, model)) {
    throw MechanismError(std::string(mechanism_name(id.kind)) + " is not defined in the " +
                         std::string(model_name(model)) + " model");
  }
  GridSummary summary;
  if (id.kind == MechanismKind::RandomUniform) {
    summary.oblivious_certificate = true;
    return summary;
  }

  boost::multiprecision::cpp_int total = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(grid.size()), static_cast<unsigned>(n * m));
  if (total > budget) throw BudgetExceeded(total.str(), budget);

  std::vector<ValueRow> grid_rows;
  if (model == ModelKind::Cardinal) for_each_row(grid, m, [&](const ValueRow& r) { grid_rows.push_back(r); });

  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  std::vector<std::size_t> digits(cells, 0);
  std::vector<ValueRow> rows(static_cast<std::size_t>(n), ValueRow(static_cast<std::size_t>(m), grid[0]));
  while (true) {
    Instance inst(rows);
    ++summary.instances;
    for (int p = 0; p < n; ++p) {
      DeviationReport report;
      switch (model) {
        case ModelKind::Ordinal:
          report = deviation_search_ordinal(id, inst, p);
          break;
        case ModelKind::Cardinal:
          report = deviation_search_cardinal(id, inst, p, grid_rows);
          break;
        case ModelKind::PublicRankings:
          report = deviation_search_public(id, inst, p, {}, grid);
          break;
      }
      ++summary.searches;
      summary.all_complete = summary.all_complete && report.search_complete;
      if (report.profitable()) {
        ++summary.violations;
        if (!summary.witness) {
          summary.witness_instance = inst;
          summary.witness = std::move(report);
        }
      }
    }
    std::size_t k = cells;
    while (k > 0 && digits[k - 1] + 1 == grid.size()) {
      --k;
      digits[k] = 0;
      rows[k / m][k % m] = grid[0];
    }
    if (k == 0) break;
    --k;
    ++digits[k];
    rows[k / m][k % m] = grid[digits[k]];
  }
  return summary;
}

}  // namespace mmsfair
