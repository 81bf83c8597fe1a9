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
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mperobust/game.h"
#include "mperobust/ipm.h"
#include "mperobust/mdp.h"
#include "test_util.h"

namespace mperobust {
namespace {

ValueFunction RandomValues(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return ValueFunction(v);
}

TEST_CASE("bellman_policy closed forms") {
  Mdp one(1, 1, {1.0}, {0.3}, 0.7);
  const auto pi = MarkovStrategy::Uniform(1, 1);
  CHECK(bellman_policy(one, pi, ValueFunction(std::vector<double>{2.0}))[0] ==
        doctest::Approx(0.3 * 0.3 + 0.7 * 2.0));

  // Deterministic two-cycle 1 -> 2 -> 1.
  Mdp cycle(2, 1, {0, 1, 1, 0}, {1.0, 0.0}, 0.5);
  const auto v = bellman_policy(cycle, MarkovStrategy::Uniform(2, 1),
                                ValueFunction(2));
  CHECK(v[0] == doctest::Approx(0.5));
  CHECK(v[1] == doctest::Approx(0.0));
}

TEST_CASE("bellman_optimal enumerates both actions") {
  // s1: a1 -> r=1 stays, a2 -> r=0 moves to s2; s2: a1 -> r=0.2 stays,
  // a2 -> r=0.5 moves to s1.
  Mdp m(2, 2, {1, 0, 0, 1, 0, 1, 1, 0}, {1.0, 0.0, 0.2, 0.5}, 0.5);
  const ValueFunction v(std::vector<double>{0.0, 4.0});
  const auto b = bellman_optimal(m, v);
  // s1: max(0.5*1 + 0.5*0, 0 + 0.5*4) = 2; s2: max(0.1 + 2, 0.25 + 0) = 2.1
  CHECK(b[0] == doctest::Approx(2.0));
  CHECK(b[1] == doctest::Approx(2.1));
  const auto zero = bellman_optimal(m, ValueFunction(2));
  CHECK(zero[0] == doctest::Approx(0.5));
  CHECK(zero[1] == doctest::Approx(0.25));
}

TEST_CASE("single-action MDPs have no choice") {
  std::mt19937_64 rng(1);
  const auto m = testing::RandomMdp(rng, 5, 1, 0.9);
  const auto pi = MarkovStrategy::Uniform(5, 1);
  const auto v = RandomValues(rng, 5, 1.0);
  const auto a = bellman_policy(m, pi, v);
  const auto b = bellman_optimal(m, v);
  for (std::size_t s = 0; s < 5; ++s) CHECK(a[s] == b[s]);
  const auto exact = evaluate_policy(m, pi);
  const auto opt = solve_optimal(m);
  CHECK(sup_norm_distance(exact, opt.values) <= 1e-10);
}

TEST_CASE("evaluate_policy on a constant-reward MDP returns the reward") {
  for (double gamma : {0.1, 0.5, 0.99}) {
    Mdp m(1, 2, {1.0, 1.0}, {0.42, 0.42}, gamma);
    CHECK(evaluate_policy(m, MarkovStrategy::Uniform(1, 2))[0] ==
          doctest::Approx(0.42).epsilon(1e-13));
  }
}

TEST_CASE("evaluate_policy agrees with successive approximation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = testing::RandomMdp(rng, 4, 3, 0.8, 0.3);
    const auto pi = testing::RandomStrategy(rng, 4, 3, 0.3);
    const auto exact = evaluate_policy(m, pi);
    const auto oracle = testing::OracleEvaluate(m, pi);
    for (std::size_t s = 0; s < 4; ++s) CHECK_NEAR(exact[s], oracle[s], 1e-12);
  }
}

TEST_CASE("Bellman operators are gamma-contractions on 200 random MDPs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ug(0.05, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ns = 1 + trial % 6;
    const std::size_t na = 1 + trial % 4;
    const double gamma = ug(rng);
    const auto m = testing::RandomMdp(rng, ns, na, gamma, 0.3);
    const auto pi = testing::RandomStrategy(rng, ns, na);
    const auto v1 = RandomValues(rng, ns, 5.0);
    const auto v2 = RandomValues(rng, ns, 5.0);
    const double d = sup_norm_distance(v1, v2);
    CHECK(sup_norm_distance(bellman_policy(m, pi, v1),
                            bellman_policy(m, pi, v2)) <=
          gamma * d + 1e-12);
    CHECK(sup_norm_distance(bellman_optimal(m, v1), bellman_optimal(m, v2)) <=
          gamma * d + 1e-12);
  }
}

TEST_CASE("bellman_optimal is monotone") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::RandomMdp(rng, 4, 3, 0.9);
    auto v1 = RandomValues(rng, 4, 1.0);
    auto v2 = v1;
    for (std::size_t s = 0; s < 4; ++s) v2[s] += u(rng);
    const auto b1 = bellman_optimal(m, v1);
    const auto b2 = bellman_optimal(m, v2);
    for (std::size_t s = 0; s < 4; ++s) CHECK(b1[s] <= b2[s] + 1e-15);
  }
}

TEST_CASE("values are normalized and respect the reward span") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::RandomMdp(rng, 5, 3, 0.95, 0.5);
    const auto pi = testing::RandomStrategy(rng, 5, 3, 0.3);
    const auto [rmin, rmax] =
        std::minmax_element(m.rewards().begin(), m.rewards().end());
    const auto v = evaluate_policy(m, pi);
    for (double x : v) {
      CHECK(x >= *rmin - 1e-12);
      CHECK(x <= *rmax + 1e-12);
    }
    const auto opt = solve_optimal(m);
    CHECK(span_seminorm(opt.values.view()) <= *rmax - *rmin + 1e-12);
    // Dominance over the random strategy.
    for (std::size_t s = 0; s < 5; ++s) {
      CHECK(opt.values[s] >= v[s] - 1e-10);
    }
  }
}

TEST_CASE("solve_optimal matches exhaustive deterministic policies") {
  // Corpus of 100 MDPs with at most 3 states and 3 actions.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ug(0.1, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ns = 1 + trial % 3;
    const std::size_t na = 1 + (trial / 3) % 3;
    const auto m = testing::RandomMdp(rng, ns, na, ug(rng), 0.4);
    const auto opt = solve_optimal(m);
    const auto oracle = testing::OracleOptimalValue(m);
    for (std::size_t s = 0; s < ns; ++s) {
      CHECK_NEAR(opt.values[s], oracle[s], 1e-10);
    }
    CHECK(alpha_optimality(m, opt.policy) <= 2e-10);
  }
}

TEST_CASE("solve_optimal satisfies the stopping guarantee") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = testing::RandomMdp(rng, 6, 3, 0.97);
    const double tol = 1e-9;
    const auto opt = solve_optimal(m, tol);
    CHECK(sup_norm_distance(opt.values, bellman_optimal(m, opt.values)) <=
          tol * (1 - 0.97) / (2 * 0.97));
  }
}

TEST_CASE("greedy ties break toward the lowest action") {
  Mdp m(1, 3, {1.0, 1.0, 1.0}, {0.5, 0.5, 0.2}, 0.9);
  const auto pi = greedy_policy(m, ValueFunction(1));
  CHECK(pi(0, 0) == 1.0);
  CHECK(solve_optimal(m).policy(0, 0) == 1.0);
}

TEST_CASE("alpha_optimality of the uniform strategy by enumeration") {
  // Action 1 dominates everywhere.
  Mdp m(2, 2, {0.5, 0.5, 0.1, 0.9, 0.7, 0.3, 0.2, 0.8}, {1.0, 0.0, 0.8, 0.1},
        0.6);
  const auto uniform = MarkovStrategy::Uniform(2, 2);
  const auto best = testing::OracleOptimalValue(m);
  const auto v = testing::OracleEvaluate(m, uniform);
  const double expected = std::max(best[0] - v[0], best[1] - v[1]);
  CHECK_NEAR(alpha_optimality(m, uniform), expected, 1e-10);
  CHECK(expected > 0.1);
}

TEST_CASE("reference value vectors") {
  const auto g = testing::LoadDataGame("game_g.json");
  const auto gh = testing::LoadDataGame("game_ghat.json");
  const auto pi = testing::LoadDataProfile("profile_pihat.json");
  auto check_vec = [](const ValueFunction& v, std::vector<double> want) {
    for (std::size_t s = 0; s < want.size(); ++s) CHECK_NEAR(v[s], want[s], 1e-4);
  };
  check_vec(evaluate_policy(induced_mdp(g, pi, 0), pi[0]),
            {0.6341, 0.6192, 0.6209});
  check_vec(evaluate_policy(induced_mdp(g, pi, 1), pi[1]),
            {0.7252, 0.7142, 0.7154});
  check_vec(evaluate_policy(induced_mdp(gh, pi, 0), pi[0]),
            {0.6327, 0.6170, 0.6187});
  check_vec(evaluate_policy(induced_mdp(gh, pi, 1), pi[1]),
            {0.7258, 0.7148, 0.7148});
  check_vec(solve_optimal(induced_mdp(g, pi, 0)).values,
            {0.6394, 0.6222, 0.6241});
  check_vec(solve_optimal(induced_mdp(g, pi, 1)).values,
            {0.7280, 0.7158, 0.7171});
}

}  // namespace
}  // namespace mperobust
