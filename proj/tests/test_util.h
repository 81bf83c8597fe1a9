// Copyright 2026 The mperobust Authors.
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

#ifndef MPEROBUST_TESTS_TEST_UTIL_H_
#define MPEROBUST_TESTS_TEST_UTIL_H_

// Random model generators and small independent oracles shared by tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mperobust/game.h"
#include "mperobust/io.h"

#ifdef DOCTEST_VERSION_STR
// Absolute-tolerance check with both values in the failure message.
#define CHECK_NEAR(actual, expected, tol)                              \
  CHECK_MESSAGE(std::abs((actual) - (expected)) <= (tol), "actual ", \
                (actual), " expected ", (expected), " tol ", (tol))
#endif

namespace mperobust::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(MPEROBUST_DATA_DIR) + "/" + name;
}

inline MarkovGame LoadDataGame(const std::string& name) {
  return parse_game(read_text_file(DataPath(name)));
}

inline StrategyProfile LoadDataProfile(const std::string& name) {
  return parse_profile(read_text_file(DataPath(name)));
}

// Random distribution; with probability `sparsity` each entry is zeroed
// (at least one entry stays positive).
inline std::vector<double> RandomDistribution(std::mt19937_64& rng,
                                              std::size_t n,
                                              double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = u(rng) < sparsity ? 0.0 : -std::log(1.0 - u(rng));
    total += x;
  }
  if (total == 0.0) {
    p[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
    return p;
  }
  for (auto& x : p) x /= total;
  return p;
}

inline Mdp RandomMdp(std::mt19937_64& rng, std::size_t states,
                     std::size_t actions, double gamma,
                     double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p, r;
  for (std::size_t k = 0; k < states * actions; ++k) {
    auto row = RandomDistribution(rng, states, sparsity);
    p.insert(p.end(), row.begin(), row.end());
    r.push_back(u(rng));
  }
  return Mdp(states, actions, std::move(p), std::move(r), gamma);
}

inline MarkovGame RandomGame(std::mt19937_64& rng,
                             const std::vector<std::size_t>& actions,
                             std::size_t states, double gamma,
                             double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> names;
  for (std::size_t s = 0; s < states; ++s) names.push_back(std::to_string(s + 1));
  std::vector<std::vector<std::string>> action_sets;
  std::size_t joint = 1;
  for (std::size_t count : actions) {
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < count; ++a) labels.push_back(std::to_string(a + 1));
    action_sets.push_back(labels);
    joint *= count;
  }
  std::vector<double> p;
  for (std::size_t k = 0; k < states * joint; ++k) {
    auto row = RandomDistribution(rng, states, sparsity);
    p.insert(p.end(), row.begin(), row.end());
  }
  std::vector<std::vector<double>> r(actions.size());
  for (auto& table : r) {
    for (std::size_t k = 0; k < states * joint; ++k) table.push_back(u(rng));
  }
  return MarkovGame(names, action_sets, std::move(p), std::move(r), gamma);
}

inline MarkovStrategy RandomStrategy(std::mt19937_64& rng, std::size_t states,
                                     std::size_t actions,
                                     double sparsity = 0.0) {
  std::vector<std::vector<double>> rows;
  for (std::size_t s = 0; s < states; ++s) {
    rows.push_back(RandomDistribution(rng, actions, sparsity));
  }
  return MarkovStrategy::FromRows(rows);
}

inline StrategyProfile RandomProfile(std::mt19937_64& rng,
                                     const MarkovGame& game) {
  std::vector<MarkovStrategy> out;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out.push_back(RandomStrategy(rng, game.num_states(), game.num_actions(i)));
  }
  return StrategyProfile(std::move(out));
}

// Mixes each transition row with a random row (weight `mix`) and adds
// uniform reward noise in [-noise, noise].
inline MarkovGame PerturbGame(std::mt19937_64& rng, const MarkovGame& g,
                              double mix, double noise) {
  std::uniform_real_distribution<double> u(-noise, noise);
  std::vector<double> p = g.transitions();
  const std::size_t ns = g.num_states();
  for (std::size_t k = 0; k < p.size(); k += ns) {
    auto other = RandomDistribution(rng, ns);
    for (std::size_t t = 0; t < ns; ++t) {
      p[k + t] = (1.0 - mix) * p[k + t] + mix * other[t];
    }
  }
  std::vector<std::vector<double>> r;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    r.push_back(g.rewards(i));
    for (auto& x : r.back()) x += u(rng);
  }
  return MarkovGame(g.state_names(), g.action_sets(), std::move(p),
                    std::move(r), g.discount(), g.metric());
}

inline Mdp PerturbMdp(std::mt19937_64& rng, const Mdp& m, double mix,
                      double noise) {
  auto g = PerturbGame(rng, single_player_game(m), mix, noise);
  return Mdp(m.num_states(), m.num_actions(), g.transitions(), g.rewards(0),
             m.discount());
}

// Policy value by plain successive approximation from zero, independent of
// the library's linear solve.
inline std::vector<double> OracleEvaluate(const Mdp& m,
                                          const MarkovStrategy& pi,
                                          std::size_t sweeps = 4000) {
  const std::size_t ns = m.num_states();
  std::vector<double> v(ns, 0.0), next(ns);
  const double g = m.discount();
  for (std::size_t k = 0; k < sweeps; ++k) {
    for (std::size_t s = 0; s < ns; ++s) {
      double total = 0.0;
      for (std::size_t a = 0; a < m.num_actions(); ++a) {
        double cont = 0.0;
        const auto row = m.transition_row(s, a);
        for (std::size_t t = 0; t < ns; ++t) cont += row[t] * v[t];
        total += pi(s, a) * ((1.0 - g) * m.reward(s, a) + g * cont);
      }
      next[s] = total;
    }
    v.swap(next);
  }
  return v;
}

// Best value over all deterministic policies, each evaluated by the oracle.
inline std::vector<double> OracleOptimalValue(const Mdp& m) {
  const std::size_t ns = m.num_states();
  const std::size_t na = m.num_actions();
  std::vector<double> best(ns, -1e300);
  std::vector<std::size_t> choice(ns, 0);
  while (true) {
    const auto v = OracleEvaluate(
        m, MarkovStrategy::Deterministic(na, choice), 800);
    for (std::size_t s = 0; s < ns; ++s) best[s] = std::max(best[s], v[s]);
    std::size_t k = 0;
    while (k < ns && ++choice[k] == na) choice[k++] = 0;
    if (k == ns) break;
  }
  return best;
}

// Solves the dense square system m x = rhs by Gaussian elimination with
// partial pivoting; returns false when m is (numerically) singular.
inline bool SolveDense(std::vector<std::vector<double>> m,
                       std::vector<double> rhs, std::vector<double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= m[r][k] * x[k];
    x[r] = acc / m[r][r];
  }
  return true;
}

// Optimal transport cost by enumerating every basis of the coupling
// polytope (2n-1 cells out of n*n). Only sensible for n <= 4.
inline double OracleTransport(const std::vector<double>& mu,
                              const std::vector<double>& nu,
                              const StateMetric& d) {
  const std::size_t n = mu.size();
  if (n == 1) return 0.0;
  const std::size_t cells = n * n;
  const std::size_t k = 2 * n - 1;
  // Marginal rows, dropping the last column constraint (redundant).
  std::vector<double> rhs(mu);
  rhs.insert(rhs.end(), nu.begin(), nu.end() - 1);
  double best = 1e300;
  std::vector<std::size_t> pick(k);
  for (std::size_t t = 0; t < k; ++t) pick[t] = t;
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t i = pick[c] / n;
      const std::size_t j = pick[c] % n;
      m[i][c] = 1.0;
      if (j + 1 < n) m[n + j][c] = 1.0;
    }
    if (SolveDense(m, rhs, x) &&
        std::all_of(x.begin(), x.end(), [](double v) { return v > -1e-12; })) {
      double cost = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        cost += x[c] * d(pick[c] / n, pick[c] % n);
      }
      best = std::min(best, cost);
    }
    // Next k-subset in lexicographic order.
    std::size_t t = k;
    while (t > 0 && pick[t - 1] == cells - k + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }
  return best;
}

// Random metric: shortest-path closure of random positive edge weights.
inline StateMetric RandomMetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = u(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return StateMetric(d);
}

// Random line metric |x_i - x_j| with points in shuffled order.
inline StateMetric RandomLineMetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(x[i] - x[j]);
  }
  return StateMetric(d);
}

// Distribution whose masses are multiples of 1/grid.
inline std::vector<double> GridDistribution(std::mt19937_64& rng,
                                            std::size_t n, int grid) {
  std::vector<double> p(n, 0.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int k = 0; k < grid; ++k) p[pick(rng)] += 1.0 / grid;
  return p;
}

}  // namespace mperobust::testing

#endif  // MPEROBUST_TESTS_TEST_UTIL_H_
