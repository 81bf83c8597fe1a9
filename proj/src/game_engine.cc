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

#include "mperobust/game_engine.h"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "mperobust/errors.h"

namespace mperobust {

ValueFunction game_bellman_player(const MarkovGame& game,
                                  const StrategyProfile& profile,
                                  std::size_t player, const ValueFunction& v,
                                  BellmanMode mode) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw DimensionError(fmt::format("player {} out of range", player));
  }
  if (v.size() != game.num_states()) {
    throw DimensionError("value function does not match the state count");
  }
  const double gamma = game.discount();
  const std::size_t na = game.num_actions(player);
  ValueFunction out(game.num_states());
  std::vector<double> q(na);
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
      double weight = 1.0;
      for (std::size_t k = 0; k < game.num_players(); ++k) {
        if (k != player) weight *= profile[k](s, game.action_of(j, k));
      }
      if (weight == 0.0) continue;
      const auto row = game.transition_row(s, j);
      double backup = (1.0 - gamma) * game.reward(player, s, j);
      for (std::size_t t = 0; t < row.size(); ++t) {
        backup += gamma * row[t] * v[t];
      }
      q[game.action_of(j, player)] += weight * backup;
    }
    if (mode == BellmanMode::kBestResponse) {
      out[s] = *std::max_element(q.begin(), q.end());
    } else {
      double total = 0.0;
      for (std::size_t a = 0; a < na; ++a) total += profile[player](s, a) * q[a];
      out[s] = total;
    }
  }
  return out;
}

std::vector<double> CertificateAlpha::alpha() const {
  std::vector<double> out(raw_alpha);
  for (double& a : out) a = std::max(a, 0.0);
  return out;
}

double CertificateAlpha::max_alpha() const {
  double out = 0.0;
  for (double a : raw_alpha) out = std::max(out, a);
  return out;
}

CertificateAlpha certify_profile(const MarkovGame& game,
                                 const StrategyProfile& profile, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  check_profile(game, profile);
  CertificateAlpha cert;
  cert.tol = tol;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const Mdp mdp = induced_mdp(game, profile, i);
    ValueFunction value = evaluate_policy(mdp, profile[i]);
    ValueFunction best = solve_optimal(mdp, tol).values;
    double gap = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < game.num_states(); ++s) {
      gap = std::max(gap, best[s] - value[s]);
    }
    cert.raw_alpha.push_back(gap);
    cert.values.push_back(std::move(value));
    cert.best_response_values.push_back(std::move(best));
  }
  return cert;
}

bool is_mpe(const MarkovGame& game, const StrategyProfile& profile,
            double tol) {
  const auto cert =
      certify_profile(game, profile, std::min(tol, kDefaultTolerance));
  return cert.max_alpha() <= tol;
}

}  // namespace mperobust
