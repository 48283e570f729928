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

#include <cmath>
#include <random>
#include <sstream>

#include "mmsfair/adversary.hpp"

namespace mmsfair {
namespace {

double parse_probability(std::string_view text) {
  std::string s(text);
  if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
  std::size_t used = 0;
  double p = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad probability '" + s + "'");
  return p;
}

double sample(const Distribution& d, std::mt19937_64& rng) {
  switch (d.kind) {
    case Distribution::Kind::ContinuousUniform01:
      return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    case Distribution::Kind::DiscreteUniform:
      return static_cast<double>(std::uniform_int_distribution<int>(0, d.levels - 1)(rng)) / (d.levels - 1);
    case Distribution::Kind::Bernoulli:
      return std::bernoulli_distribution(d.p)(rng) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::int64_t trial) {
  auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

double Distribution::mean() const {
  switch (kind) {
    case Kind::ContinuousUniform01:
    case Kind::DiscreteUniform:
      return 0.5;
    case Kind::Bernoulli:
      return p;
  }
  return 0.0;
}

double Distribution::variance() const {
  switch (kind) {
    case Kind::ContinuousUniform01:
      return 1.0 / 12.0;
    case Kind::DiscreteUniform:
      return static_cast<double>(levels + 1) / (12.0 * (levels - 1));
    case Kind::Bernoulli:
      return p * (1 - p);
  }
  return 0.0;
}

std::string Distribution::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::ContinuousUniform01:
      out << "uniform";
      break;
    case Kind::DiscreteUniform:
      out << "discrete:" << levels;
      break;
    case Kind::Bernoulli:
      out << "bernoulli:" << p;
      break;
  }
  return out.str();
}

Distribution Distribution::parse(std::string_view text) {
  Distribution d;
  if (text == "uniform") return d;
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "discrete" && !arg.empty()) {
    d.kind = Kind::DiscreteUniform;
    std::size_t used = 0;
    std::string s(arg);
    d.levels = std::stoi(s, &used);
    if (used != s.size() || d.levels < 2) throw std::invalid_argument("discrete:K needs an integer K >= 2");
    return d;
  }
  if (head == "bernoulli" && !arg.empty()) {
    d.kind = Kind::Bernoulli;
    d.p = parse_probability(arg);
    if (!(d.p > 0.0 && d.p <= 1.0)) throw std::invalid_argument("bernoulli:P needs 0 < P <= 1");
    return d;
  }
  throw std::invalid_argument("unknown distribution '" + std::string(text) + "' (uniform, discrete:K, bernoulli:P)");
}

MCResult montecarlo_randomized(const MCConfig& cfg) {
  const int n = cfg.n;
  const int m = cfg.m;
  if (n < 1 || m < 0) throw std::invalid_argument("bad instance size");
  if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
  if (cfg.rho < Rational{0} || cfg.rho >= Rational{1}) throw std::invalid_argument("rho must lie in [0, 1)");
  if (cfg.distributions.size() != 1 && static_cast<int>(cfg.distributions.size()) != n) {
    throw std::invalid_argument("give one distribution or one per player");
  }
  std::vector<Distribution> dist(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dist[i] = cfg.distributions.size() == 1 ? cfg.distributions[0] : cfg.distributions[i];
    if (!(dist[i].mean() > 0.0)) throw std::invalid_argument("distribution " + dist[i].str() + " has mean 0");
  }
  const double rho = cfg.rho.to_double();

  std::vector<std::vector<double>> ys(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(cfg.trials)));
  std::int64_t successes = 0;
  std::vector<double> values(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  std::vector<double> total(static_cast<std::size_t>(n));
  std::vector<double> got(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    auto rng = trial_stream(cfg.seed, t);
    for (int i = 0; i < n; ++i) {
      total[i] = 0;
      got[i] = 0;
      for (int j = 0; j < m; ++j) {
        double v = sample(dist[i], rng);
        values[static_cast<std::size_t>(i) * m + j] = v;
        total[i] += v;
      }
    }
    std::uniform_int_distribution<int> owner(0, n - 1);
    for (int j = 0; j < m; ++j) {
      int p = owner(rng);
      got[p] += values[static_cast<std::size_t>(p) * m + j];
    }
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      ys[i][t] = got[i];
      if (got[i] < rho * total[i] / n) ok = false;
    }
    if (ok) ++successes;
  }

  MCResult r;
  r.trials = cfg.trials;
  r.success_rate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  const double T = static_cast<double>(cfg.trials);
  for (int i = 0; i < n; ++i) {
    double mean = 0;
    for (double y : ys[i]) mean += y;
    mean /= T;
    double m2 = 0;
    double m4 = 0;
    for (double y : ys[i]) {
      double d = y - mean;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    double var = cfg.trials > 1 ? m2 / (T - 1) : 0.0;
    double central2 = m2 / T;
    double central4 = m4 / T;
    r.means.push_back(mean);
    r.variances.push_back(var);
    r.mean_errors.push_back(std::sqrt(var / T));
    r.variance_errors.push_back(std::sqrt(std::max(0.0, central4 - central2 * central2) / T));
    r.thresholds.push_back((rho * m * dist[i].mean() + rho * std::pow(static_cast<double>(m), 0.75)) / n);
  }
  return r;
}

}  // namespace mmsfair
