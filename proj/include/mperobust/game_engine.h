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

#ifndef MPEROBUST_GAME_ENGINE_H_
#define MPEROBUST_GAME_ENGINE_H_

// Game Bellman operators and alpha-MPE certification. A profile is certified
// player by player: V^i_pi and the best-response value V^i_(*, pi^-i) are the
// policy value and optimal value of the MDP induced by the other players.

#include <cstddef>
#include <vector>

#include "mperobust/game.h"
#include "mperobust/mdp.h"

namespace mperobust {

enum class BellmanMode { kFixed, kBestResponse };

// Computed directly from the joint-action tables, without building the
// induced MDP.
ValueFunction game_bellman_player(const MarkovGame& game,
                                  const StrategyProfile& profile,
                                  std::size_t player, const ValueFunction& v,
                                  BellmanMode mode);

struct CertificateAlpha {
  // max_s (V^i_(*, pi^-i)(s) - V^i_pi(s)), unclamped.
  std::vector<double> raw_alpha;
  std::vector<ValueFunction> values;
  std::vector<ValueFunction> best_response_values;
  double tol = kDefaultTolerance;

  // raw_alpha with small negative noise clamped to zero.
  std::vector<double> alpha() const;
  double max_alpha() const;
};

CertificateAlpha certify_profile(const MarkovGame& game,
                                 const StrategyProfile& profile,
                                 double tol = kDefaultTolerance);

// True iff every player's alpha is at most tol.
bool is_mpe(const MarkovGame& game, const StrategyProfile& profile,
            double tol);

}  // namespace mperobust

#endif  // MPEROBUST_GAME_ENGINE_H_
