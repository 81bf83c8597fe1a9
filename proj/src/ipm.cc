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

#include "mperobust/ipm.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mperobust/errors.h"
#include "mperobust/linear_program.h"

namespace mperobust {
namespace {

void CheckPair(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size() || mu.empty()) {
    throw DimensionError(fmt::format(
        "distributions have lengths {} and {}", mu.size(), nu.size()));
  }
  for (auto dist : {mu, nu}) {
    double sum = 0.0;
    for (double p : dist) {
      if (!(p >= 0.0)) throw DomainError("probability must be nonnegative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      throw DomainError(fmt::format("probabilities sum to {}", sum));
    }
  }
}

void CheckMetricFor(std::span<const double> mu, const StateMetric& metric) {
  if (metric.size() != mu.size()) {
    throw DimensionError("metric size does not match the distribution");
  }
  if (auto v = validate_metric(metric); !v.empty()) {
    throw DomainError("invalid metric: " + v.front());
  }
}

double CdfDistance(std::span<const double> mu, std::span<const double> nu,
                   const std::vector<double>& positions) {
  std::vector<std::size_t> order(positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return positions[i] < positions[j];
  });
  double cdf_gap = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    cdf_gap += mu[order[k]] - nu[order[k]];
    total += std::abs(cdf_gap) * (positions[order[k + 1]] - positions[order[k]]);
  }
  return total;
}

}  // namespace

std::string_view ipm_name(IpmKind kind) {
  return kind == IpmKind::kTotalVariation ? "tv" : "w1";
}

double tv_distance(std::span<const double> mu, std::span<const double> nu) {
  CheckPair(mu, nu);
  double total = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) total += std::abs(mu[k] - nu[k]);
  return 0.5 * total;
}

std::optional<std::vector<double>> line_embedding(const StateMetric& metric) {
  const std::size_t n = metric.size();
  if (n == 0) return std::vector<double>{};
  // A point farthest from state 0 is an endpoint of any line embedding.
  std::size_t end = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (metric(0, k) > metric(0, end)) end = k;
  }
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = metric(end, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double scale = std::max(1.0, metric(i, j));
      if (std::abs(metric(i, j) - std::abs(x[i] - x[j])) > 1e-12 * scale) {
        return std::nullopt;
      }
    }
  }
  return x;
}

double transport_cost(std::span<const double> mu, std::span<const double> nu,
                      const StateMetric& metric) {
  CheckPair(mu, nu);
  CheckMetricFor(mu, metric);
  const std::size_t n = mu.size();
  // Variables x(i, j) >= 0; rows fix the marginals.
  std::vector<double> a(2 * n * n * n, 0.0), b(2 * n), c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t var = i * n + j;
      c[var] = metric(i, j);
      a[i * n * n + var] = 1.0;
      a[(n + j) * n * n + var] = 1.0;
    }
    b[i] = mu[i];
    b[n + i] = nu[i];
  }
  const auto solution = solve_standard_form_lp(2 * n, a, b, c);
  if (solution.status != LpStatus::kOptimal) {
    throw std::logic_error("transport problem has no optimal coupling");
  }
  return std::max(0.0, solution.objective);
}

double wasserstein1(std::span<const double> mu, std::span<const double> nu,
                    const StateMetric& metric) {
  CheckPair(mu, nu);
  CheckMetricFor(mu, metric);
  if (auto positions = line_embedding(metric)) {
    return CdfDistance(mu, nu, *positions);
  }
  return transport_cost(mu, nu, metric);
}

double span_seminorm(std::span<const double> f) {
  if (f.empty()) throw DimensionError("span of an empty vector");
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

double lipschitz_constant(std::span<const double> f,
                          const StateMetric& metric) {
  if (f.size() != metric.size()) {
    throw DimensionError("function and metric sizes differ");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (!(metric(i, j) > 0.0)) {
        throw DomainError(
            fmt::format("states {} and {} are at zero distance", i, j));
      }
      out = std::max(out, std::abs(f[i] - f[j]) / metric(i, j));
    }
  }
  return out;
}

void check_same_shape(const MarkovGame& g, const MarkovGame& g_hat) {
  bool same = g.num_players() == g_hat.num_players() &&
              g.num_states() == g_hat.num_states() &&
              g.discount() == g_hat.discount();
  for (std::size_t i = 0; same && i < g.num_players(); ++i) {
    same = g.num_actions(i) == g_hat.num_actions(i);
  }
  if (!same) {
    throw DimensionError(
        "games differ in players, states, action sets or discount");
  }
}

ApproximationParams game_approx_params(const MarkovGame& g,
                                       const MarkovGame& g_hat, IpmKind kind) {
  check_same_shape(g, g_hat);
  ApproximationParams out;
  out.kind = kind;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (std::size_t k = 0; k < g.rewards(i).size(); ++k) {
      out.epsilon =
          std::max(out.epsilon, std::abs(g.rewards(i)[k] - g_hat.rewards(i)[k]));
    }
  }
  const auto metric = kind == IpmKind::kWasserstein
                          ? std::optional<StateMetric>(g.metric_or_line())
                          : std::nullopt;
  for (std::size_t s = 0; s < g.num_states(); ++s) {
    for (std::size_t j = 0; j < g.num_joint_actions(); ++j) {
      const auto p = g.transition_row(s, j);
      const auto q = g_hat.transition_row(s, j);
      const double d = metric ? wasserstein1(p, q, *metric) : tv_distance(p, q);
      out.delta = std::max(out.delta, d);
    }
  }
  return out;
}

LipschitzConstants game_lipschitz_constants(const MarkovGame& game) {
  if (!game.metric()) throw DomainError("game has no state metric");
  return game_lipschitz_constants(game, *game.metric());
}

LipschitzConstants game_lipschitz_constants(const MarkovGame& game,
                                            const StateMetric& metric) {
  if (metric.size() != game.num_states()) {
    throw DimensionError("metric size does not match the state count");
  }
  LipschitzConstants out;
  const std::size_t ns = game.num_states();
  for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t t = s + 1; t < ns; ++t) {
        const double d = metric(s, t);
        if (!(d > 0.0)) throw DomainError("distinct states at zero distance");
        for (std::size_t i = 0; i < game.num_players(); ++i) {
          out.reward = std::max(
              out.reward,
              std::abs(game.reward(i, s, j) - game.reward(i, t, j)) / d);
        }
        out.transition = std::max(
            out.transition,
            wasserstein1(game.transition_row(s, j), game.transition_row(t, j),
                         metric) /
                d);
      }
    }
  }
  return out;
}

LipschitzConstants mdp_lipschitz_constants(const Mdp& mdp,
                                           const StateMetric& metric) {
  return game_lipschitz_constants(single_player_game(mdp), metric);
}

}  // namespace mperobust
