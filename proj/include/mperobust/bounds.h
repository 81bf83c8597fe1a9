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

#ifndef MPEROBUST_BOUNDS_H_
#define MPEROBUST_BOUNDS_H_

// Closed-form robustness bounds for approximate games and MDPs, and the
// Hoeffding-based sample sizes for learning with a generative model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mperobust/game.h"
#include "mperobust/ipm.h"

namespace mperobust {

// max_{s,a} |sum_{s'} (P(s'|s,a) - Phat(s'|s,a)) v_hat(s')|.
double delta_term(const MarkovGame& g, const MarkovGame& g_hat,
                  const ValueFunction& v_hat);
// MDP counterpart, for the single-agent robustness bound.
double delta_term(const Mdp& m, const Mdp& m_hat, const ValueFunction& v_hat);

// 2 (epsilon + gamma delta_term / (1 - gamma)).
double alpha_bound_instance(double epsilon, double delta_term, double gamma);

// 2 (epsilon + gamma delta rho / (1 - gamma)), rho the Minkowski functional
// of the approximate value function.
double alpha_bound_ipm(double epsilon, double delta, double rho, double gamma);

// Total-variation worst case: rho replaced by Span(rhat).
double alpha_bound_tv(double epsilon, double delta, double span_reward,
                      double gamma);

// Wasserstein worst case for an (L_r, L_P)-Lipschitz approximate model:
// 2 (epsilon + gamma L_r delta / (1 - gamma L_P)). Throws DomainError when
// gamma L_P >= 1, where the bound says nothing.
double alpha_bound_w(double epsilon, double delta, double l_r, double l_p,
                     double gamma);

// (1 - gamma) L_r / (1 - gamma L_P), an upper bound on Lip(V_*).
double lipschitz_value_bound(double l_r, double l_p, double gamma);

// Same arithmetic as alpha_bound_instance for an optimal strategy of an
// approximate MDP.
double mdp_alpha_bound(double epsilon, double delta_term, double gamma);

// max over players, states and joint actions of r minus the min: the Span(r)
// entering the sample sizes below.
double game_reward_span(const MarkovGame& game);

// 2 exp(-2 n gap^2 / span_h^2): tail bound on the deviation of an empirical
// mean of a function with span at most span_h.
double hoeffding_tail(std::uint64_t n, double gap, double span_h);

// Samples per state-action pair guaranteeing an alpha-optimal plug-in
// policy with probability 1 - p. Natural log; never less than 1.
std::uint64_t sample_size_mdp(double alpha, double p, double span_reward,
                              std::size_t num_states, std::size_t num_actions,
                              double gamma);

// Game version: the union bound runs over |S| prod|A^i| pairs and |N|
// players.
std::uint64_t sample_size_game(double alpha, double p, double span_reward,
                               std::size_t num_states,
                               std::span<const std::size_t> action_counts,
                               std::size_t num_players, double gamma);

// The expression inside the ceiling of sample_size_game.
double sample_size_game_unrounded(double alpha, double p, double span_reward,
                                  std::size_t num_states,
                                  std::span<const std::size_t> action_counts,
                                  std::size_t num_players, double gamma);

struct RobustnessReport {
  IpmKind kind = IpmKind::kTotalVariation;
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<double> delta_term;      // per player
  std::vector<double> rho;             // Span or Lip of vhat^i
  std::vector<double> alpha_instance;  // from delta_term
  std::vector<double> alpha_ipm;       // from delta * rho
  // Instance-independent bound; empty when gamma L_P >= 1 under W1.
  std::vector<std::optional<double>> alpha_structural;
  // Lipschitz constants of g_hat under its metric, for W1 only.
  std::optional<LipschitzConstants> lipschitz;
};

// Bounds for a profile whose values on g_hat are `v_hat` (one per player).
RobustnessReport robustness_report(const MarkovGame& g,
                                   const MarkovGame& g_hat, IpmKind kind,
                                   const std::vector<ValueFunction>& v_hat);

}  // namespace mperobust

#endif  // MPEROBUST_BOUNDS_H_
