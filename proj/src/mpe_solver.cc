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

#include "mperobust/mpe_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "mperobust/errors.h"
#include "mperobust/linear_program.h"
#include "mperobust/rng.h"

namespace mperobust {
namespace {

using Support = std::vector<std::size_t>;

std::vector<Support> NonemptySubsets(std::size_t n) {
  std::vector<Support> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Support s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) s.push_back(k);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Finds a mixed strategy q of the column player, supported in `cols`, under
// which every row in `rows` earns the maximal payoff payoff(r, .) q.
// `payoff(r, c)` is indexed (responder action, opponent action).
template <typename Payoff>
std::optional<std::vector<double>> SupportedMix(
    std::size_t num_responder, std::size_t num_opponent, Payoff payoff,
    const Support& rows, const Support& cols) {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < num_responder; ++r) {
    for (std::size_t c = 0; c < num_opponent; ++c) {
      lowest = std::min(lowest, payoff(r, c));
    }
  }
  // Shifting payoffs to >= 1 makes the common payoff u a nonnegative LP
  // variable.
  const double shift = 1.0 - lowest;
  const std::size_t k = cols.size();
  const std::size_t slack_count = num_responder - rows.size();
  const std::size_t vars = k + 1 + slack_count;
  const std::size_t constraints = num_responder + 1;
  std::vector<double> a(constraints * vars, 0.0), b(constraints, 0.0);
  std::size_t slack = 0;
  for (std::size_t r = 0; r < num_responder; ++r) {
    for (std::size_t m = 0; m < k; ++m) {
      a[r * vars + m] = payoff(r, cols[m]) + shift;
    }
    a[r * vars + k] = -1.0;
    if (!std::binary_search(rows.begin(), rows.end(), r)) {
      a[r * vars + k + 1 + slack++] = 1.0;
    }
  }
  for (std::size_t m = 0; m < k; ++m) a[num_responder * vars + m] = 1.0;
  b[num_responder] = 1.0;
  const std::vector<double> c(vars, 0.0);
  const auto solution = solve_standard_form_lp(constraints, a, b, c);
  if (solution.status != LpStatus::kOptimal) return std::nullopt;
  std::vector<double> mix(num_opponent, 0.0);
  double total = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    mix[cols[m]] = std::max(0.0, solution.x[m]);
    total += mix[cols[m]];
  }
  for (double& p : mix) p /= total;
  return mix;
}

bool IsEquilibrium(const PayoffMatrix& a, const PayoffMatrix& b,
                   const std::vector<double>& x, const std::vector<double>& y,
                   double tol) {
  double xay = 0.0, xby = 0.0;
  std::vector<double> ay(a.rows(), 0.0), xb(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      ay[i] += a(i, j) * y[j];
      xb[j] += x[i] * b(i, j);
      xay += x[i] * a(i, j) * y[j];
      xby += x[i] * b(i, j) * y[j];
    }
  }
  return *std::max_element(ay.begin(), ay.end()) <= xay + tol &&
         *std::max_element(xb.begin(), xb.end()) <= xby + tol;
}


}  // namespace

PayoffMatrix PayoffMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PayoffMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DimensionError("payoff rows have different lengths");
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

StageGame stage_game(const MarkovGame& game,
                     const std::vector<ValueFunction>& values,
                     std::size_t state) {
  if (game.num_players() != 2) {
    throw DomainError("stage games are defined for two players only");
  }
  if (values.size() != 2 || values[0].size() != game.num_states() ||
      values[1].size() != game.num_states()) {
    throw DimensionError("need one value function per player");
  }
  if (state >= game.num_states()) throw DimensionError("state out of range");
  const double gamma = game.discount();
  StageGame out{PayoffMatrix(game.num_actions(0), game.num_actions(1)),
                PayoffMatrix(game.num_actions(0), game.num_actions(1))};
  for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
    const auto row = game.transition_row(state, j);
    double cont0 = 0.0, cont1 = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      cont0 += row[t] * values[0][t];
      cont1 += row[t] * values[1][t];
    }
    const std::size_t a1 = game.action_of(j, 0);
    const std::size_t a2 = game.action_of(j, 1);
    out.row_payoffs(a1, a2) =
        (1.0 - gamma) * game.reward(0, state, j) + gamma * cont0;
    out.col_payoffs(a1, a2) =
        (1.0 - gamma) * game.reward(1, state, j) + gamma * cont1;
  }
  return out;
}

BimatrixEquilibrium bimatrix_nash(const PayoffMatrix& a,
                                  const PayoffMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() == 0 ||
      a.cols() == 0) {
    throw DimensionError("payoff matrices must share a nonempty shape");
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const auto row_sets = NonemptySubsets(m);
  const auto col_sets = NonemptySubsets(n);
  std::vector<std::pair<const Support*, const Support*>> pairs;
  for (const auto& rows : row_sets) {
    for (const auto& cols : col_sets) pairs.emplace_back(&rows, &cols);
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
    const std::size_t ls = l.first->size() + l.second->size();
    const std::size_t rs = r.first->size() + r.second->size();
    if (ls != rs) return ls < rs;
    if (*l.first != *r.first) return *l.first < *r.first;
    return *l.second < *r.second;
  });

  for (const auto& [rows, cols] : pairs) {
    // y makes every row in `rows` a best response; x likewise for `cols`.
    auto y = SupportedMix(
        m, n, [&](std::size_t r, std::size_t c) { return a(r, c); }, *rows,
        *cols);
    if (!y) continue;
    auto x = SupportedMix(
        n, m, [&](std::size_t r, std::size_t c) { return b(c, r); }, *cols,
        *rows);
    if (!x) continue;
    if (!IsEquilibrium(a, b, *x, *y, 1e-9)) continue;
    BimatrixEquilibrium eq{std::move(*x), std::move(*y), 0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double w = eq.row_strategy[i] * eq.col_strategy[j];
        eq.row_payoff += w * a(i, j);
        eq.col_payoff += w * b(i, j);
      }
    }
    return eq;
  }
  throw std::logic_error("support enumeration found no equilibrium");
}

SolveResult solve_mpe(const MarkovGame& game, const SolveOptions& options) {
  if (game.num_players() != 2) {
    throw DomainError("two-player solver only");
  }
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (options.max_iter == 0) throw DomainError("max_iter must be positive");
  const std::size_t ns = game.num_states();
  const double gamma = game.discount();
  const double threshold = options.tol * (1.0 - gamma) / (2.0 * gamma);
  const double cert_tol = std::min(options.tol, kDefaultTolerance);

  std::optional<SolveResult> best;
  std::size_t total_iterations = 0;
  auto consider = [&](StrategyProfile profile) {
    auto cert = certify_profile(game, profile, cert_tol);
    if (best && cert.max_alpha() >= best->certificate.max_alpha()) return;
    SolveResult r;
    r.profile = std::move(profile);
    r.values = cert.values;
    r.certificate = std::move(cert);
    best = std::move(r);
  };

  for (std::size_t attempt = 0; attempt <= options.restarts; ++attempt) {
    std::vector<ValueFunction> values(2, ValueFunction(ns));
    if (attempt > 0) {
      CounterRng rng(derive_seed(options.seed, attempt));
      for (std::size_t i = 0; i < 2; ++i) {
        const auto [lo, hi] = std::minmax_element(game.rewards(i).begin(),
                                                  game.rewards(i).end());
        for (std::size_t s = 0; s < ns; ++s) {
          values[i][s] = *lo + (*hi - *lo) * rng.Uniform();
        }
      }
    }
    std::vector<StrategyProfile> history;
    bool stopped = false;
    for (std::size_t iter = 0; iter < options.max_iter && !stopped; ++iter) {
      std::vector<std::vector<double>> row_mix, col_mix;
      std::vector<ValueFunction> next(2, ValueFunction(ns));
      for (std::size_t s = 0; s < ns; ++s) {
        const auto stage = stage_game(game, values, s);
        auto eq = bimatrix_nash(stage.row_payoffs, stage.col_payoffs);
        next[0][s] = eq.row_payoff;
        next[1][s] = eq.col_payoff;
        row_mix.push_back(std::move(eq.row_strategy));
        col_mix.push_back(std::move(eq.col_strategy));
      }
      const double change = std::max(sup_norm_distance(next[0], values[0]),
                                     sup_norm_distance(next[1], values[1]));
      values = std::move(next);
      ++total_iterations;
      history.emplace_back(std::vector<MarkovStrategy>{
          MarkovStrategy::FromRows(row_mix), MarkovStrategy::FromRows(col_mix)});
      stopped = change <= threshold;
    }
    if (stopped) {
      consider(history.back());
      if (best->certificate.max_alpha() <= options.tol) break;
    } else {
      for (auto& profile : history) consider(std::move(profile));
    }
  }
  best->iterations = total_iterations;
  best->converged = best->certificate.max_alpha() <= options.tol;
  return *best;
}

}  // namespace mperobust
