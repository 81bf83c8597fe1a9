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

#include "mperobust/mdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "mperobust/errors.h"

namespace mperobust {
namespace {

void CheckStrategy(const Mdp& mdp, const MarkovStrategy& strategy) {
  if (strategy.num_states() != mdp.num_states() ||
      strategy.num_actions() != mdp.num_actions()) {
    throw DimensionError(fmt::format(
        "strategy is {}x{}, MDP is {}x{}", strategy.num_states(),
        strategy.num_actions(), mdp.num_states(), mdp.num_actions()));
  }
}

void CheckValue(const Mdp& mdp, const ValueFunction& v) {
  if (v.size() != mdp.num_states()) {
    throw DimensionError(fmt::format("value function has {} entries, MDP has "
                                     "{} states",
                                     v.size(), mdp.num_states()));
  }
}

void CheckTolerance(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

// Lowest-index action within a relative 1e-12 of the best action value.
std::size_t GreedyAction(const Mdp& mdp, std::size_t s, const ValueFunction& v,
                         double* best_value) {
  std::vector<double> q(mdp.num_actions());
  for (std::size_t a = 0; a < q.size(); ++a) q[a] = action_value(mdp, s, a, v);
  const double best = *std::max_element(q.begin(), q.end());
  const double slack = 1e-12 * std::max(1.0, std::abs(best));
  std::size_t choice = 0;
  while (q[choice] < best - slack) ++choice;
  if (best_value) *best_value = best;
  return choice;
}

}  // namespace

double action_value(const Mdp& mdp, std::size_t s, std::size_t a,
                    const ValueFunction& v) {
  const auto row = mdp.transition_row(s, a);
  double expected = 0.0;
  for (std::size_t t = 0; t < row.size(); ++t) expected += row[t] * v[t];
  const double gamma = mdp.discount();
  return (1.0 - gamma) * mdp.reward(s, a) + gamma * expected;
}

ValueFunction bellman_policy(const Mdp& mdp, const MarkovStrategy& strategy,
                             const ValueFunction& v) {
  CheckStrategy(mdp, strategy);
  CheckValue(mdp, v);
  ValueFunction out(mdp.num_states());
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    double total = 0.0;
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      if (strategy(s, a) != 0.0) {
        total += strategy(s, a) * action_value(mdp, s, a, v);
      }
    }
    out[s] = total;
  }
  return out;
}

ValueFunction bellman_optimal(const Mdp& mdp, const ValueFunction& v) {
  CheckValue(mdp, v);
  ValueFunction out(mdp.num_states());
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    double best = action_value(mdp, s, 0, v);
    for (std::size_t a = 1; a < mdp.num_actions(); ++a) {
      best = std::max(best, action_value(mdp, s, a, v));
    }
    out[s] = best;
  }
  return out;
}

MarkovStrategy greedy_policy(const Mdp& mdp, const ValueFunction& v) {
  CheckValue(mdp, v);
  std::vector<std::size_t> choice(mdp.num_states());
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    choice[s] = GreedyAction(mdp, s, v, nullptr);
  }
  return MarkovStrategy::Deterministic(mdp.num_actions(), choice);
}

ValueFunction evaluate_policy(const Mdp& mdp, const MarkovStrategy& strategy) {
  CheckStrategy(mdp, strategy);
  const auto n = static_cast<Eigen::Index>(mdp.num_states());
  const double gamma = mdp.discount();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      const double p = strategy(static_cast<std::size_t>(s), a);
      if (p == 0.0) continue;
      rhs(s) += (1.0 - gamma) * p * mdp.reward(static_cast<std::size_t>(s), a);
      const auto row = mdp.transition_row(static_cast<std::size_t>(s), a);
      for (Eigen::Index t = 0; t < n; ++t) {
        system(s, t) -= gamma * p * row[static_cast<std::size_t>(t)];
      }
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd solution = lu.solve(rhs);
  // One step of iterative refinement keeps the residual at rounding level.
  solution += lu.solve(rhs - system * solution);
  return ValueFunction(
      std::vector<double>(solution.data(), solution.data() + n));
}

OptimalSolution solve_optimal(const Mdp& mdp, double tol) {
  CheckTolerance(tol);
  const double gamma = mdp.discount();
  const double threshold = tol * (1.0 - gamma) / (2.0 * gamma);
  ValueFunction v(mdp.num_states());
  std::size_t iterations = 0;
  while (true) {
    ValueFunction next = bellman_optimal(mdp, v);
    ++iterations;
    const double change = sup_norm_distance(next, v);
    v = std::move(next);
    if (change <= threshold) break;
  }

  std::vector<std::size_t> choice(mdp.num_states());
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    choice[s] = GreedyAction(mdp, s, v, nullptr);
  }
  auto policy = MarkovStrategy::Deterministic(mdp.num_actions(), choice);
  ValueFunction values = evaluate_policy(mdp, policy);

  // Policy improvement on the exact values; terminates after finitely many
  // switches because each strictly improves the value.
  for (std::size_t round = 0; round < 1000; ++round) {
    bool changed = false;
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      double best = 0.0;
      const std::size_t a = GreedyAction(mdp, s, values, &best);
      const double current = action_value(mdp, s, choice[s], values);
      if (current < best - 1e-12 * std::max(1.0, std::abs(best))) {
        choice[s] = a;
        changed = true;
      }
    }
    if (!changed) break;
    policy = MarkovStrategy::Deterministic(mdp.num_actions(), choice);
    values = evaluate_policy(mdp, policy);
  }
  return {std::move(values), std::move(policy), iterations};
}

double alpha_optimality(const Mdp& mdp, const MarkovStrategy& strategy,
                        double tol) {
  const ValueFunction policy_value = evaluate_policy(mdp, strategy);
  const ValueFunction optimal = solve_optimal(mdp, tol).values;
  double gap = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    gap = std::max(gap, optimal[s] - policy_value[s]);
  }
  return gap;
}

}  // namespace mperobust
