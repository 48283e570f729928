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

#include "mmsfair/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mmsfair {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

int parse_count(const std::string& tok, int line, const char* what) {
  try {
    Rational r = Rational::parse(tok);
    if (!r.is_integer() || r.num() < 0 || r.num() > 1'000'000) throw std::invalid_argument("range");
    return static_cast<int>(r.num());
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed header: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Instance::Instance(std::vector<ValueRow> rows) {
  if (rows.empty()) throw std::invalid_argument("instance needs at least one player");
  n_ = static_cast<int>(rows.size());
  m_ = static_cast<int>(rows.front().size());
  values_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(m_));
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(rows[i].size()) != m_) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                  " values, expected " + std::to_string(m_));
    }
    for (int j = 0; j < m_; ++j) {
      if (rows[i][j] < Rational(0)) {
        throw std::invalid_argument("negative value for player " + std::to_string(i + 1) + ", item " +
                                    std::to_string(j + 1));
      }
      values_.push_back(rows[i][j]);
    }
  }
}

std::span<const Rational> Instance::row(int player) const {
  if (player < 0 || player >= n_) throw std::out_of_range("player index out of range");
  return {values_.data() + index(player, 0), static_cast<std::size_t>(m_)};
}

Instance Instance::with_row(int player, const ValueRow& row) const {
  if (player < 0 || player >= n_) throw std::out_of_range("player index out of range");
  if (static_cast<int>(row.size()) != m_) throw std::invalid_argument("replacement row has wrong length");
  for (const auto& v : row) {
    if (v < Rational(0)) throw std::invalid_argument("replacement row has a negative value");
  }
  Instance out = *this;
  std::copy(row.begin(), row.end(), out.values_.begin() + static_cast<std::ptrdiff_t>(index(player, 0)));
  return out;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Instance parse_instance(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  int m = -1;
  std::vector<ValueRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    auto toks = split_ws(line);
    if (n < 0) {
      if (toks.size() != 2) throw ParseError(lineno, "malformed header: expected \"n m\"");
      n = parse_count(toks[0], lineno, "player count");
      m = parse_count(toks[1], lineno, "item count");
      if (n < 1) throw ParseError(lineno, "malformed header: need at least one player");
      continue;
    }
    if (static_cast<int>(rows.size()) == n || m == 0) {
      throw ParseError(lineno, "too many rows: expected " + std::to_string(n));
    }
    if (static_cast<int>(toks.size()) != m) {
      throw ParseError(lineno, "row has " + std::to_string(toks.size()) + " values, expected " + std::to_string(m));
    }
    ValueRow row;
    row.reserve(toks.size());
    for (const auto& tok : toks) {
      Rational v;
      try {
        v = Rational::parse(tok);
      } catch (const std::exception& e) {
        throw ParseError(lineno, std::string("bad value: ") + e.what());
      }
      if (v < Rational(0)) throw ParseError(lineno, "negative value " + tok);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (n < 0) throw ParseError(lineno, "malformed header: missing \"n m\" line");
  // Zero items: the n empty rows are blank lines and were skipped.
  if (m == 0) return Instance(std::vector<ValueRow>(static_cast<std::size_t>(n)));
  if (static_cast<int>(rows.size()) != n) {
    throw ParseError(lineno, "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
  }
  return Instance(std::move(rows));
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Rational row_total(std::span<const Rational> row) {
  Rational total;
  for (const auto& v : row) total += v;
  return total;
}

Rational bundle_value(const Instance& inst, int player, std::span<const int> items) {
  auto row = inst.row(player);
  Rational total;
  for (int j : items) {
    if (j < 0 || j >= inst.m()) throw std::out_of_range("item index " + std::to_string(j) + " out of range");
    total += row[static_cast<std::size_t>(j)];
  }
  return total;
}

Ranking derive_ranking(std::span<const Rational> row) {
  Ranking r;
  r.order.resize(row.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) { return row[a] > row[b]; });
  return r;
}

Ranking derive_ranking(const Instance& inst, int player) { return derive_ranking(inst.row(player)); }

std::vector<Ranking> derive_rankings(const Instance& inst) {
  std::vector<Ranking> out;
  out.reserve(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) out.push_back(derive_ranking(inst, i));
  return out;
}

bool consistent_with(std::span<const Rational> row, const Ranking& ranking) {
  if (static_cast<int>(row.size()) != ranking.size()) return false;
  for (int k = 1; k < ranking.size(); ++k) {
    if (row[ranking.order[k - 1]] < row[ranking.order[k]]) return false;
  }
  return true;
}

std::vector<std::string> validate_allocation(int n, int m, const Allocation& alloc) {
  std::vector<std::string> violations;
  if (alloc.players() != n) {
    violations.push_back("expected " + std::to_string(n) + " bundles, got " + std::to_string(alloc.players()));
  }
  std::vector<int> owner(static_cast<std::size_t>(std::max(m, 0)), -1);
  for (int i = 0; i < alloc.players(); ++i) {
    for (int j : alloc.bundles[i]) {
      if (j < 0 || j >= m) {
        violations.push_back("item " + std::to_string(j + 1) + " out of range in bundle " + std::to_string(i + 1));
        continue;
      }
      if (owner[j] >= 0) {
        violations.push_back("item " + std::to_string(j + 1) + " duplicated (bundles " + std::to_string(owner[j] + 1) +
                             " and " + std::to_string(i + 1) + ")");
      } else {
        owner[j] = i;
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    if (owner[j] < 0) violations.push_back("item " + std::to_string(j + 1) + " unassigned");
  }
  return violations;
}

std::vector<std::string> validate_allocation(const Instance& inst, const Allocation& alloc) {
  return validate_allocation(inst.n(), inst.m(), alloc);
}

std::string format_items(std::span<const int> items) {
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(items[k] + 1);
  }
  return out + "}";
}

std::string format_allocation(const Allocation& alloc) {
  std::string out = "(";
  for (int i = 0; i < alloc.players(); ++i) {
    if (i) out += ", ";
    out += format_items(alloc.bundles[i]);
  }
  return out + ")";
}

std::string format_row(std::span<const Rational> row) {
  std::string out = "[";
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out += ",";
    out += row[k].str();
  }
  return out + "]";
}

}  // namespace mmsfair
