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

#ifndef MPEROBUST_GAME_H_
#define MPEROBUST_GAME_H_

// Finite Markov games, MDPs, Markov strategies and value functions.
//
// All containers store dense row-major arrays. Joint actions are indexed
// lexicographically with player 0 most significant, so for two players with
// two actions each the order is (0,0), (0,1), (1,0), (1,1).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mperobust {

// Tolerance on row sums of probability vectors read from input.
inline constexpr double kStochasticTolerance = 1e-9;

// Distance matrix over the states of a model. Axioms are checked by
// validate_metric, not by the constructor.
class StateMetric {
 public:
  explicit StateMetric(const std::vector<std::vector<double>>& distances);

  // d(i, j) = |i - j|.
  static StateMetric Line(std::size_t num_states);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const {
    return distances_[i * size_ + j];
  }
  std::vector<std::vector<double>> ToRows() const;

  bool operator==(const StateMetric&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> distances_;
};

std::vector<std::string> validate_metric(const StateMetric& metric);

class ValueFunction {
 public:
  ValueFunction() = default;
  explicit ValueFunction(std::size_t num_states, double fill = 0.0)
      : values_(num_states, fill) {}
  explicit ValueFunction(std::vector<double> values)
      : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t s) const { return values_[s]; }
  double& operator[](std::size_t s) { return values_[s]; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  std::span<const double> view() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const ValueFunction&) const = default;

 private:
  std::vector<double> values_;
};

// max_s |a(s) - b(s)|.
double sup_norm_distance(const ValueFunction& a, const ValueFunction& b);

// pi(a|s) for one player. Rows are validated on construction.
class MarkovStrategy {
 public:
  MarkovStrategy(std::size_t num_states, std::size_t num_actions,
                 std::vector<double> probabilities);
  static MarkovStrategy FromRows(const std::vector<std::vector<double>>& rows);
  static MarkovStrategy Deterministic(std::size_t num_actions,
                                      std::span<const std::size_t> choice);
  static MarkovStrategy Uniform(std::size_t num_states,
                                std::size_t num_actions);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  double operator()(std::size_t s, std::size_t a) const {
    return probabilities_[s * num_actions_ + a];
  }
  std::span<const double> row(std::size_t s) const {
    return std::span<const double>(probabilities_)
        .subspan(s * num_actions_, num_actions_);
  }
  std::vector<std::vector<double>> ToRows() const;

  bool operator==(const MarkovStrategy&) const = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> probabilities_;
};

class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<MarkovStrategy> strategies)
      : strategies_(std::move(strategies)) {}

  std::size_t num_players() const { return strategies_.size(); }
  const MarkovStrategy& operator[](std::size_t player) const {
    return strategies_[player];
  }
  auto begin() const { return strategies_.begin(); }
  auto end() const { return strategies_.end(); }

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<MarkovStrategy> strategies_;
};

// Single-agent model <S, A, P, r, gamma>. The constructor checks only that
// array sizes agree; semantic checks live in validate_mdp.
class Mdp {
 public:
  // transitions: [s][a][s'] flattened; rewards: [s][a] flattened.
  Mdp(std::size_t num_states, std::size_t num_actions,
      std::vector<double> transitions, std::vector<double> rewards,
      double discount, std::optional<StateMetric> metric = std::nullopt);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  double discount() const { return discount_; }
  const std::optional<StateMetric>& metric() const { return metric_; }

  std::span<const double> transition_row(std::size_t s, std::size_t a) const {
    return std::span<const double>(transitions_)
        .subspan((s * num_actions_ + a) * num_states_, num_states_);
  }
  double reward(std::size_t s, std::size_t a) const {
    return rewards_[s * num_actions_ + a];
  }
  const std::vector<double>& rewards() const { return rewards_; }
  const std::vector<double>& transitions() const { return transitions_; }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
  double discount_;
  std::optional<StateMetric> metric_;
};

std::vector<std::string> validate_mdp(const Mdp& mdp);

// N-player game <N, S, (A^i), P, (r^i), gamma>. As with Mdp, only shapes are
// checked on construction.
class MarkovGame {
 public:
  // transitions: [s][joint][s'] flattened; rewards[i]: [s][joint] flattened.
  MarkovGame(std::vector<std::string> states,
             std::vector<std::vector<std::string>> action_sets,
             std::vector<double> transitions,
             std::vector<std::vector<double>> rewards, double discount,
             std::optional<StateMetric> metric = std::nullopt);

  std::size_t num_players() const { return action_sets_.size(); }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions(std::size_t player) const {
    return action_sets_[player].size();
  }
  std::size_t num_joint_actions() const { return num_joint_actions_; }
  double discount() const { return discount_; }

  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::vector<std::string>>& action_sets() const {
    return action_sets_;
  }
  const std::optional<StateMetric>& metric() const { return metric_; }
  // The stored metric, or the line metric |i - j| when none is stored.
  StateMetric metric_or_line() const;

  std::size_t joint_index(std::span<const std::size_t> actions) const;
  std::vector<std::size_t> joint_actions(std::size_t joint) const;
  std::size_t action_of(std::size_t joint, std::size_t player) const {
    return (joint / strides_[player]) % action_sets_[player].size();
  }

  std::span<const double> transition_row(std::size_t s,
                                         std::size_t joint) const {
    return std::span<const double>(transitions_)
        .subspan((s * num_joint_actions_ + joint) * states_.size(),
                 states_.size());
  }
  double reward(std::size_t player, std::size_t s, std::size_t joint) const {
    return rewards_[player][s * num_joint_actions_ + joint];
  }
  const std::vector<double>& transitions() const { return transitions_; }
  const std::vector<double>& rewards(std::size_t player) const {
    return rewards_[player];
  }

  // Same game with the transition kernel replaced.
  MarkovGame WithTransitions(std::vector<double> transitions) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::vector<std::string>> action_sets_;
  std::vector<std::size_t> strides_;
  std::size_t num_joint_actions_ = 1;
  std::vector<double> transitions_;
  std::vector<std::vector<double>> rewards_;
  double discount_;
  std::optional<StateMetric> metric_;
};

// Lists every violated invariant. Empty iff the game is valid.
std::vector<std::string> validate_game(const MarkovGame& game);

// Throws DimensionError unless the profile has one strategy per player with
// matching state and action counts.
void check_profile(const MarkovGame& game, const StrategyProfile& profile);

// The MDP faced by `player` when everyone else follows `profile`.
Mdp induced_mdp(const MarkovGame& game, const StrategyProfile& profile,
                std::size_t player);

// One-player game with the same primitives as `mdp`.
MarkovGame single_player_game(const Mdp& mdp);

}  // namespace mperobust

#endif  // MPEROBUST_GAME_H_
