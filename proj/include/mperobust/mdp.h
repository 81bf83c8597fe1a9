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

#ifndef MPEROBUST_MDP_H_
#define MPEROBUST_MDP_H_

// Bellman operators and dynamic programming for finite discounted MDPs.
// Values follow the normalized convention V = (1 - gamma) E[sum gamma^t r],
// so every policy value lies in [min r, max r].

#include <cstddef>

#include "mperobust/game.h"

namespace mperobust {

inline constexpr double kDefaultTolerance = 1e-10;

// (1 - gamma) r(s, a) + gamma sum_{s'} P(s'|s, a) v(s').
double action_value(const Mdp& mdp, std::size_t s, std::size_t a,
                    const ValueFunction& v);

// [B_pi v](s) = sum_a pi(a|s) action_value(s, a, v).
ValueFunction bellman_policy(const Mdp& mdp, const MarkovStrategy& strategy,
                             const ValueFunction& v);

// [B_* v](s) = max_a action_value(s, a, v).
ValueFunction bellman_optimal(const Mdp& mdp, const ValueFunction& v);

// Deterministic strategy attaining the max in B_* v; ties go to the lowest
// action index.
MarkovStrategy greedy_policy(const Mdp& mdp, const ValueFunction& v);

// Fixed point of B_pi, from a direct solve of (I - gamma P_pi) V = (1-gamma) r_pi.
ValueFunction evaluate_policy(const Mdp& mdp, const MarkovStrategy& strategy);

struct OptimalSolution {
  ValueFunction values;
  MarkovStrategy policy;
  std::size_t iterations = 0;
};

// Value iteration until ||v_{k+1} - v_k|| <= tol (1 - gamma) / (2 gamma),
// followed by greedy extraction. The greedy policy is then improved until no
// action beats it, and `values` is its exact evaluation.
OptimalSolution solve_optimal(const Mdp& mdp, double tol = kDefaultTolerance);

// max_s (V_*(s) - V_pi(s)). Nonnegative up to tol.
double alpha_optimality(const Mdp& mdp, const MarkovStrategy& strategy,
                        double tol = kDefaultTolerance);

}  // namespace mperobust

#endif  // MPEROBUST_MDP_H_
