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
#include <array>
#include <istream>
#include <sstream>
#include <utility>

#include "mmsfair/adversary.hpp"

namespace mmsfair {
namespace {

using Premise = ChainPremise;

struct Symbols {
  Rational two_plus, two_minus, one_plus, one_minus, zero_plus;

  explicit Symbols(const Rational& e)
      : two_plus(Rational{2} + e), two_minus(Rational{2} - e), one_plus(Rational{1} + e), one_minus(Rational{1} - e),
        zero_plus(e / Rational{2}) {}
};

Instance profile(ValueRow p1, ValueRow p2) { return Instance({std::move(p1), std::move(p2)}); }

// Edges are written 1-based as in the profile numbering.
std::vector<ChainEdge> edges(std::initializer_list<std::array<int, 3>> list) {
  std::vector<ChainEdge> out;
  for (const auto& e : list) out.push_back(ChainEdge{e[0] - 1, e[1] - 1, e[2] - 1});
  return out;
}

void require_epsilon(const Rational& e, const Rational& hi, std::string_view name) {
  if (e <= Rational{0} || e > hi) {
    throw std::invalid_argument("fixture " + std::string(name) + " needs epsilon in (0, " + hi.str() + "], got " +
                                e.str());
  }
}

ChainFixture lemma_22(const Rational& e) {
  require_epsilon(e, Rational(1, 2), "lemma-2+2");
  Symbols s(e);
  ValueRow base{s.two_minus, s.one_plus, s.one_minus, s.zero_plus};
  ValueRow p2_shift{s.zero_plus, s.two_plus, s.one_minus, s.one_plus};
  ValueRow p1_b{s.one_plus, s.two_minus, s.one_minus, s.zero_plus};
  ValueRow p2_b{s.one_plus, s.two_plus, s.one_minus, s.zero_plus};
  ValueRow p1_c{s.one_plus, s.one_minus, s.two_minus, s.zero_plus};
  ChainFixture f;
  f.name = "lemma-2+2";
  f.epsilon = e;
  f.threshold = Rational(1, 2) + e;
  f.model = ModelKind::Cardinal;
  f.profiles = {profile(base, base), profile(base, p2_shift), profile(p1_b, p2_shift),
                profile(p1_b, p2_b),  profile(p1_c, base),     profile(p1_c, p2_b)};
  f.edges = edges({{2, 1, 2}, {2, 3, 1}, {4, 3, 2}, {1, 5, 1}, {6, 5, 2}, {6, 4, 1}});
  f.premises = {Premise{Premise::Kind::Count, -1, 0, 2}, Premise{Premise::Kind::Receives, 0, 0, 0}};
  return f;
}

ChainFixture lemma_13(const Rational& e) {
  require_epsilon(e, Rational(1, 2), "lemma-1+3");
  Symbols s(e);
  const Rational v1a = s.two_minus;
  ValueRow base{s.two_minus, s.one_plus, s.one_minus, s.zero_plus};
  ValueRow p1_first{v1a, s.one_plus, s.one_minus, s.zero_plus};
  ValueRow p2_shift{s.zero_plus, s.two_minus, s.one_plus, s.one_minus};
  ValueRow p1_shift{s.one_minus, v1a, s.zero_plus, s.one_plus};
  ValueRow p2_shift2{s.one_minus, s.zero_plus, s.two_minus, s.one_plus};
  ValueRow p1_shift2{s.one_plus, s.one_minus, v1a, s.zero_plus};
  ValueRow flat{Rational{1}, Rational{1}, Rational{1}, Rational{1}};
  ChainFixture f;
  f.name = "lemma-1+3";
  f.epsilon = e;
  f.threshold = Rational(1, 2) + e;
  f.model = ModelKind::Cardinal;
  f.profiles = {profile(p1_first, base),       profile(p1_first, p2_shift), profile(p1_shift, p2_shift),
                profile(p1_shift, base),       profile(p1_shift, p2_shift2), profile(p1_shift2, p2_shift2),
                profile(p1_shift2, base),      profile(flat, base)};
  f.edges = edges({{2, 1, 2}, {2, 3, 1}, {4, 3, 2}, {5, 4, 2}, {5, 6, 1}, {7, 6, 2}, {1, 8, 1}, {4, 8, 1}, {7, 8, 1}});
  f.premises = {Premise{Premise::Kind::Receives, 0, 0, 0}, Premise{Premise::Kind::Count, 0, 0, 1}};
  return f;
}

ChainFixture pr_m6(const Rational& e) {
  require_epsilon(e, Rational(1, 5), "pr-m6");
  ValueRow ones(6, Rational{1});
  ValueRow q{Rational{1}, Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)};
  ValueRow r{Rational(7, 10), Rational(3, 10), Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  ChainFixture f;
  f.name = "pr-m6";
  f.epsilon = e;
  f.threshold = Rational(4, 5) + e;
  f.model = ModelKind::PublicRankings;
  f.profiles = {profile(ones, ones), profile(q, ones), profile(q, q), profile(ones, q), profile(ones, r)};
  f.edges = edges({{2, 1, 1}, {2, 3, 2}, {4, 3, 1}, {4, 5, 2}});
  f.premises = {Premise{Premise::Kind::Receives, 0, 0, 0}};
  return f;
}

ChainFixture pr_m5(const Rational& e) {
  require_epsilon(e, Rational(1, 6), "pr-m5");
  ValueRow ones(5, Rational{1});
  ValueRow q{Rational{1}, Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  ValueRow r{Rational(11, 20), Rational(9, 20), Rational(17, 50), Rational(17, 50), Rational(17, 50)};
  ValueRow s{Rational(1, 2), Rational(1, 2), Rational(7, 20), Rational(33, 100), Rational(8, 25)};
  ValueRow t{Rational(1, 2), Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(1, 10)};
  ChainFixture f;
  f.name = "pr-m5";
  f.epsilon = e;
  f.threshold = Rational(5, 6) + e;
  f.model = ModelKind::PublicRankings;
  f.profiles = {profile(ones, ones), profile(q, ones), profile(q, q),  profile(ones, q),
                profile(ones, r),    profile(q, s),    profile(t, s)};
  f.edges = edges({{2, 1, 1}, {2, 3, 2}, {4, 3, 1}, {4, 5, 2}, {1, 5, 2}, {1, 4, 2}, {4, 1, 2}, {6, 3, 2}, {6, 7, 1}});
  f.premises = {Premise{Premise::Kind::Count, 0, 0, 3}};
  return f;
}

ValueRow along(std::string_view order) {
  ValueRow row(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) row[order[k] - 'a'] = Rational(10 - static_cast<int>(k));
  return row;
}

ChainFixture ordinal_m4(const Rational& e) {
  require_epsilon(e, Rational(1, 2), "ordinal-m4");
  ChainFixture f;
  f.name = "ordinal-m4";
  f.epsilon = e;
  f.threshold = Rational(1, 2) + e;
  f.model = ModelKind::Ordinal;
  f.profiles = {profile(along("abcd"), along("abcd")), profile(along("abcd"), along("abdc")),
                profile(along("abcd"), along("bdca")), profile(along("bacd"), along("bdca")),
                profile(along("bacd"), along("bacd")), profile(along("bacd"), along("abcd"))};
  f.edges = edges({{1, 2, 2}, {3, 2, 2}, {3, 4, 1}, {5, 4, 2}, {5, 6, 2}, {1, 6, 1}});
  f.premises = {Premise{Premise::Kind::Count, -1, 0, 2}, Premise{Premise::Kind::Receives, 0, 0, 0}};
  return f;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_index(const std::string& tok, int line, bool allow_star) {
  if (allow_star && tok == "*") return -1;
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
    return v - 1;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a positive index, got '" + tok + "'");
  }
}

ValueRow parse_row(const std::vector<std::string>& toks, int line) {
  ValueRow row;
  for (const auto& t : toks) {
    try {
      row.push_back(Rational::parse(t));
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  return row;
}

}  // namespace

std::vector<std::string> builtin_fixture_names() {
  return {"lemma-2+2", "lemma-1+3", "pr-m6", "pr-m5", "ordinal-m4"};
}

ChainFixture builtin_fixture(std::string_view name, const Rational& epsilon) {
  if (name == "lemma-2+2") return lemma_22(epsilon);
  if (name == "lemma-1+3") return lemma_13(epsilon);
  if (name == "pr-m6") return pr_m6(epsilon);
  if (name == "pr-m5") return pr_m5(epsilon);
  if (name == "ordinal-m4") return ordinal_m4(epsilon);
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

ChainFixture parse_fixture(std::istream& in) {
  ChainFixture f;
  f.name = "custom";
  f.epsilon = Rational(1, 10);
  bool have_threshold = false;
  std::vector<ValueRow> pending;
  int pending_line = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = split(line);
    if (toks.empty()) continue;
    if (pending_line) {
      ValueRow row = parse_row(toks, lineno);
      pending.push_back(std::move(row));
      if (pending.size() == 2) {
        try {
          f.profiles.push_back(Instance(pending));
        } catch (const std::invalid_argument& e) {
          throw ParseError(pending_line, e.what());
        }
        pending.clear();
        pending_line = 0;
      }
      continue;
    }
    const std::string& key = toks[0];
    auto need = [&](std::size_t count) {
      if (toks.size() != count) throw ParseError(lineno, "'" + key + "' takes " + std::to_string(count - 1) + " fields");
    };
    auto rational = [&](const std::string& t) {
      try {
        return Rational::parse(t);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    };
    if (key == "name") {
      need(2);
      f.name = toks[1];
    } else if (key == "epsilon") {
      need(2);
      f.epsilon = rational(toks[1]);
    } else if (key == "threshold") {
      need(2);
      f.threshold = rational(toks[1]);
      have_threshold = true;
    } else if (key == "model") {
      need(2);
      try {
        f.model = parse_model(toks[1]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (key == "profile") {
      if (toks.size() > 2) throw ParseError(lineno, "'profile' takes at most a label");
      pending_line = lineno;
    } else if (key == "edge") {
      need(4);
      f.edges.push_back(
          ChainEdge{parse_index(toks[1], lineno, false), parse_index(toks[2], lineno, false), parse_index(toks[3], lineno, false)});
    } else if (key == "premise") {
      need(5);
      ChainPremise p;
      if (toks[1] == "receives") {
        p.kind = ChainPremise::Kind::Receives;
        p.value = parse_index(toks[4], lineno, false);
      } else if (toks[1] == "count") {
        p.kind = ChainPremise::Kind::Count;
        try {
          p.value = std::stoi(toks[4]);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad bundle size '" + toks[4] + "'");
        }
      } else {
        throw ParseError(lineno, "unknown premise kind '" + toks[1] + "'");
      }
      p.profile = parse_index(toks[2], lineno, true);
      p.player = parse_index(toks[3], lineno, false);
      f.premises.push_back(p);
    } else {
      throw ParseError(lineno, "unknown directive '" + key + "'");
    }
  }
  if (pending_line) throw ParseError(pending_line, "profile needs two rows");
  if (!have_threshold) throw ParseError(lineno, "missing threshold line");
  auto problems = validate_fixture(f);
  if (!problems.empty()) throw ParseError(lineno, problems.front());
  return f;
}

ChainFixture parse_fixture_string(const std::string& text) {
  std::istringstream in(text);
  return parse_fixture(in);
}

std::string format_fixture(const ChainFixture& f) {
  std::ostringstream out;
  out << "name " << f.name << "\n";
  out << "epsilon " << f.epsilon.str() << "\n";
  out << "threshold " << f.threshold.str() << "\n";
  out << "model " << model_name(f.model) << "\n";
  for (const auto& p : f.premises) {
    out << "premise " << (p.kind == ChainPremise::Kind::Receives ? "receives " : "count ")
        << (p.profile < 0 ? std::string("*") : std::to_string(p.profile + 1)) << " " << p.player + 1 << " "
        << (p.kind == ChainPremise::Kind::Receives ? p.value + 1 : p.value) << "\n";
  }
  for (std::size_t k = 0; k < f.profiles.size(); ++k) {
    out << "profile " << k + 1 << "\n";
    for (int i = 0; i < f.profiles[k].n(); ++i) {
      auto row = f.profiles[k].row(i);
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].str();
      out << "\n";
    }
  }
  for (const auto& e : f.edges) out << "edge " << e.from + 1 << " " << e.to + 1 << " " << e.player + 1 << "\n";
  return out.str();
}

std::vector<std::string> validate_fixture(const ChainFixture& f) {
  std::vector<std::string> problems;
  if (f.profiles.empty()) problems.push_back("fixture has no profiles");
  if (f.threshold <= Rational{0}) problems.push_back("threshold must be positive");
  const int count = static_cast<int>(f.profiles.size());
  for (int k = 0; k < count; ++k) {
    if (f.profiles[k].n() != 2) problems.push_back("profile " + std::to_string(k + 1) + " needs two players");
    if (f.profiles[k].m() != f.profiles[0].m()) {
      problems.push_back("profile " + std::to_string(k + 1) + " has a different item count");
    }
  }
  if (!problems.empty()) return problems;
  for (const auto& e : f.edges) {
    std::string tag = "edge " + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1);
    if (e.from < 0 || e.from >= count || e.to < 0 || e.to >= count || e.from == e.to) {
      problems.push_back(tag + " has a bad profile index");
      continue;
    }
    if (e.player < 0 || e.player > 1) {
      problems.push_back(tag + " names player " + std::to_string(e.player + 1));
      continue;
    }
    const Instance& a = f.profiles[e.from];
    const Instance& b = f.profiles[e.to];
    auto same = [&](int p) {
      auto x = a.row(p);
      auto y = b.row(p);
      return std::equal(x.begin(), x.end(), y.begin(), y.end());
    };
    if (!same(1 - e.player)) problems.push_back(tag + " changes the other player's row");
    if (same(e.player)) problems.push_back(tag + " leaves the deviating row unchanged");
  }
  for (const auto& p : f.premises) {
    if (p.profile >= count || p.player < 0 || p.player > 1) problems.push_back("premise out of range");
    if (p.kind == ChainPremise::Kind::Receives && (p.value < 0 || p.value >= f.profiles[0].m())) {
      problems.push_back("premise names an unknown item");
    }
  }
  return problems;
}

bool fixture_applies(const ChainFixture& f, ModelKind model) {
  switch (f.model) {
    case ModelKind::PublicRankings:
      return true;
    case ModelKind::Cardinal:
      return model != ModelKind::PublicRankings;
    case ModelKind::Ordinal:
      return model == ModelKind::Ordinal;
  }
  return false;
}

ChainFixture mirrored(const ChainFixture& f) {
  ChainFixture out = f;
  for (auto& prof : out.profiles) {
    auto r0 = prof.row(0);
    auto r1 = prof.row(1);
    prof = Instance({ValueRow(r1.begin(), r1.end()), ValueRow(r0.begin(), r0.end())});
  }
  for (auto& e : out.edges) e.player = 1 - e.player;
  for (auto& p : out.premises) p.player = 1 - p.player;
  return out;
}

}  // namespace mmsfair
