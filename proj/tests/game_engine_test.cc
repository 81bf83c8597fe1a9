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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "mperobust/errors.h"
#include "mperobust/game.h"
#include "mperobust/game_engine.h"
#include "mperobust/mdp.h"
#include "test_util.h"

namespace mperobust {
namespace {

// Relabels states by `sigma` (new index of old state s is sigma[s]) and
// reverses player 0's actions.
MarkovGame Relabel(const MarkovGame& g, const std::vector<std::size_t>& sigma) {
  const std::size_t ns = g.num_states();
  const std::size_t nj = g.num_joint_actions();
  std::vector<double> p(g.transitions().size());
  std::vector<std::vector<double>> r(g.num_players(),
                                     std::vector<double>(ns * nj));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t j = 0; j < nj; ++j) {
      auto joint = g.joint_actions(j);
      joint[0] = g.num_actions(0) - 1 - joint[0];
      const std::size_t nj2 = g.joint_index(joint);
      for (std::size_t t = 0; t < ns; ++t) {
        p[(sigma[s] * nj + nj2) * ns + sigma[t]] = g.transition_row(s, j)[t];
      }
      for (std::size_t i = 0; i < g.num_players(); ++i) {
        r[i][sigma[s] * nj + nj2] = g.reward(i, s, j);
      }
    }
  }
  return MarkovGame(g.state_names(), g.action_sets(), p, r, g.discount());
}

StrategyProfile Relabel(const StrategyProfile& pi,
                        const std::vector<std::size_t>& sigma) {
  std::vector<MarkovStrategy> out;
  for (std::size_t i = 0; i < pi.num_players(); ++i) {
    auto rows = pi[i].ToRows();
    std::vector<std::vector<double>> moved(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
      if (i == 0) std::reverse(rows[s].begin(), rows[s].end());
      moved[sigma[s]] = rows[s];
    }
    out.push_back(MarkovStrategy::FromRows(moved));
  }
  return StrategyProfile(out);
}

TEST_CASE("game Bellman operators agree with the induced MDP path") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::RandomGame(rng, {std::size_t(2 + trial % 2), 3}, 4, 0.9, 0.3);
    const auto pi = testing::RandomProfile(rng, g);
    std::vector<double> raw(4);
    for (auto& x : raw) x = u(rng);
    const ValueFunction v(raw);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto m = induced_mdp(g, pi, i);
      const auto fixed =
          game_bellman_player(g, pi, i, v, BellmanMode::kFixed);
      const auto best =
          game_bellman_player(g, pi, i, v, BellmanMode::kBestResponse);
      const auto fixed_mdp = bellman_policy(m, pi[i], v);
      const auto best_mdp = bellman_optimal(m, v);
      CHECK(sup_norm_distance(fixed, fixed_mdp) <= 1e-12);
      CHECK(sup_norm_distance(best, best_mdp) <= 1e-12);
    }
  }
}

TEST_CASE("single-player game operators reduce to the MDP operators") {
  std::mt19937_64 rng(2);
  const auto m = testing::RandomMdp(rng, 4, 3, 0.8);
  const auto g = single_player_game(m);
  const auto pi = testing::RandomStrategy(rng, 4, 3);
  const StrategyProfile profile({pi});
  const ValueFunction v(std::vector<double>{0.1, -0.3, 0.7, 0.2});
  CHECK(sup_norm_distance(
            game_bellman_player(g, profile, 0, v, BellmanMode::kFixed),
            bellman_policy(m, pi, v)) <= 1e-15);
  CHECK(sup_norm_distance(
            game_bellman_player(g, profile, 0, v, BellmanMode::kBestResponse),
            bellman_optimal(m, v)) <= 1e-15);
  // Certification of a single-player game is the MDP's optimality gap.
  const auto cert = certify_profile(g, profile);
  CHECK_NEAR(cert.raw_alpha[0], alpha_optimality(m, pi), 1e-12);
  const auto opt = solve_optimal(m);
  CHECK(certify_profile(g, StrategyProfile({opt.policy})).max_alpha() <=
        1e-10);
}

TEST_CASE("fixed-mode operator leaves the profile's values unchanged") {
  const auto g = testing::LoadDataGame("game_g.json");
  const auto pi = testing::LoadDataProfile("profile_pihat.json");
  const auto cert = certify_profile(g, pi);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto v = cert.values[i];
    CHECK(sup_norm_distance(
              game_bellman_player(g, pi, i, v, BellmanMode::kFixed), v) <=
          1e-10);
  }
}

TEST_CASE("certify_profile on the reference games") {
  const auto g = testing::LoadDataGame("game_g.json");
  const auto gh = testing::LoadDataGame("game_ghat.json");
  const auto pi = testing::LoadDataProfile("profile_pihat.json");
  const auto a = certify_profile(g, pi).alpha();
  CHECK_NEAR(a[0], 0.005300, 1e-5);
  CHECK_NEAR(a[1], 0.002785, 1e-5);
  const auto b = certify_profile(gh, pi).alpha();
  CHECK_NEAR(b[0], 0.0, 1e-6);
  CHECK_NEAR(b[1], 0.0, 1e-6);

  CHECK(is_mpe(gh, pi, 1e-6));
  CHECK_FALSE(is_mpe(g, pi, 1e-6));
  CHECK(is_mpe(g, pi, 0.01));
}

TEST_CASE("certificates are nonnegative and best responses dominate") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::RandomGame(rng, {2, 2}, 3, 0.85, 0.3);
    const auto pi = testing::RandomProfile(rng, g);
    const auto cert = certify_profile(g, pi);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(cert.alpha()[i] >= 0.0);
      for (std::size_t s = 0; s < 3; ++s) {
        CHECK(cert.best_response_values[i][s] >=
              cert.values[i][s] - 1e-10);
      }
    }
  }
}

TEST_CASE("certification is invariant under relabeling") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::RandomGame(rng, {3, 2}, 4, 0.9);
    const auto pi = testing::RandomProfile(rng, g);
    std::vector<std::size_t> sigma(4);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const auto a = certify_profile(g, pi).raw_alpha;
    const auto b = certify_profile(Relabel(g, sigma), Relabel(pi, sigma))
                       .raw_alpha;
    CHECK_NEAR(a[0], b[0], 1e-11);
    CHECK_NEAR(a[1], b[1], 1e-11);
  }
}

TEST_CASE("certify_profile validates shapes") {
  const auto g = testing::LoadDataGame("game_g.json");
  CHECK_THROWS_AS(
      certify_profile(g, StrategyProfile({MarkovStrategy::Uniform(3, 2)})),
      DimensionError);
}

}  // namespace
}  // namespace mperobust
