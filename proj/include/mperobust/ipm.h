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

#ifndef MPEROBUST_IPM_H_
#define MPEROBUST_IPM_H_

// Integral probability metrics between distributions on a finite state set,
// their Minkowski functionals, and the (epsilon, delta) parameters comparing
// two games.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mperobust/game.h"

namespace mperobust {

enum class IpmKind { kTotalVariation, kWasserstein };

std::string_view ipm_name(IpmKind kind);

// (1/2) sum |mu - nu|.
double tv_distance(std::span<const double> mu, std::span<const double> nu);

// Optimal transport cost under `metric`. Line metrics use the CDF formula;
// every other metric is solved exactly as a linear program over couplings.
double wasserstein1(std::span<const double> mu, std::span<const double> nu,
                    const StateMetric& metric);

// Coordinates x with metric(i, j) == |x_i - x_j| for all pairs, if any.
std::optional<std::vector<double>> line_embedding(const StateMetric& metric);

// Transport LP solved directly, whatever the metric.
double transport_cost(std::span<const double> mu, std::span<const double> nu,
                      const StateMetric& metric);

// max f - min f. Minkowski functional of the total-variation class.
double span_seminorm(std::span<const double> f);

// max over distinct pairs of |f(s) - f(s')| / d(s, s'). Minkowski functional
// of the Wasserstein class. Zero for a single state.
double lipschitz_constant(std::span<const double> f, const StateMetric& metric);

struct ApproximationParams {
  double epsilon = 0.0;
  double delta = 0.0;
  IpmKind kind = IpmKind::kTotalVariation;
};

// epsilon = max |r^i - rhat^i|, delta = max_{s,a} d(P(.|s,a), Phat(.|s,a)).
// The Wasserstein variant uses g.metric_or_line().
ApproximationParams game_approx_params(const MarkovGame& g,
                                       const MarkovGame& g_hat, IpmKind kind);

// Throws DimensionError unless the games share players, states, action sets
// and discount.
void check_same_shape(const MarkovGame& g, const MarkovGame& g_hat);

struct LipschitzConstants {
  double reward = 0.0;
  double transition = 0.0;
};

// Throws DomainError if the game stores no metric.
LipschitzConstants game_lipschitz_constants(const MarkovGame& game);
LipschitzConstants game_lipschitz_constants(const MarkovGame& game,
                                            const StateMetric& metric);
LipschitzConstants mdp_lipschitz_constants(const Mdp& mdp,
                                           const StateMetric& metric);

}  // namespace mperobust

#endif  // MPEROBUST_IPM_H_
