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

#include "mperobust/game.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mperobust/errors.h"

namespace mperobust {
namespace {

std::string JointLabel(const MarkovGame& game, std::size_t joint) {
  std::string out = "(";
  const auto actions = game.joint_actions(joint);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out += ",";
    out += game.action_sets()[i][actions[i]];
  }
  return out + ")";
}

// Appends stochasticity violations for one row.
void CheckRow(std::span<const double> row, const std::string& where,
              std::vector<std::string>& out) {
  double sum = 0.0;
  bool negative = false;
  bool finite = true;
  for (double p : row) {
    if (!std::isfinite(p)) finite = false;
    if (p < 0.0) negative = true;
    sum += p;
  }
  if (!finite) {
    out.push_back(fmt::format("{}: non-finite probability", where));
    return;
  }
  if (negative) out.push_back(fmt::format("{}: negative probability", where));
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    out.push_back(fmt::format("{}: row sums to {} instead of 1", where, sum));
  }
}

void CheckDiscount(double gamma, std::vector<std::string>& out) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    out.push_back(fmt::format("gamma: {} is outside the open interval (0,1)",
                              gamma));
  }
}

void CheckMetric(const std::optional<StateMetric>& metric,
                 std::size_t num_states, std::vector<std::string>& out) {
  if (!metric) return;
  if (metric->size() != num_states) {
    out.push_back(fmt::format("metric: size {} does not match {} states",
                              metric->size(), num_states));
    return;
  }
  for (auto& v : validate_metric(*metric)) out.push_back(std::move(v));
}

}  // namespace

StateMetric::StateMetric(const std::vector<std::vector<double>>& distances)
    : size_(distances.size()) {
  distances_.reserve(size_ * size_);
  for (const auto& row : distances) {
    if (row.size() != size_) {
      throw DimensionError("metric must be a square matrix");
    }
    distances_.insert(distances_.end(), row.begin(), row.end());
  }
}

StateMetric StateMetric::Line(std::size_t num_states) {
  std::vector<std::vector<double>> rows(num_states,
                                        std::vector<double>(num_states));
  for (std::size_t i = 0; i < num_states; ++i) {
    for (std::size_t j = 0; j < num_states; ++j) {
      rows[i][j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
    }
  }
  return StateMetric(rows);
}

std::vector<std::vector<double>> StateMetric::ToRows() const {
  std::vector<std::vector<double>> rows(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    rows[i].assign(distances_.begin() + i * size_,
                   distances_.begin() + (i + 1) * size_);
  }
  return rows;
}

std::vector<std::string> validate_metric(const StateMetric& d) {
  std::vector<std::string> out;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      out.push_back(fmt::format("metric[{}][{}]: self-distance must be 0", i, i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) <= 0.0) {
        out.push_back(fmt::format(
            "metric[{}][{}]: distance between distinct states must be positive",
            i, j));
      }
      if (d(i, j) != d(j, i)) {
        out.push_back(fmt::format("metric[{}][{}]: not symmetric", i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d(i, k) > d(i, j) + d(j, k) + 1e-12) {
          out.push_back(fmt::format(
              "metric: triangle inequality fails for ({}, {}, {})", i, j, k));
        }
      }
    }
  }
  return out;
}

double sup_norm_distance(const ValueFunction& a, const ValueFunction& b) {
  if (a.size() != b.size()) {
    throw DimensionError("value functions have different sizes");
  }
  double out = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    out = std::max(out, std::abs(a[s] - b[s]));
  }
  return out;
}

MarkovStrategy::MarkovStrategy(std::size_t num_states, std::size_t num_actions,
                               std::vector<double> probabilities)
    : num_states_(num_states),
      num_actions_(num_actions),
      probabilities_(std::move(probabilities)) {
  if (num_actions_ == 0 || probabilities_.size() != num_states_ * num_actions_) {
    throw DimensionError(fmt::format(
        "strategy needs {}x{} probabilities, got {}", num_states_,
        num_actions_, probabilities_.size()));
  }
  std::vector<std::string> violations;
  for (std::size_t s = 0; s < num_states_; ++s) {
    CheckRow(row(s), fmt::format("strategy row {}", s), violations);
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

MarkovStrategy MarkovStrategy::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t actions = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != actions) {
      throw DimensionError("strategy rows have different lengths");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return MarkovStrategy(rows.size(), actions, std::move(flat));
}

MarkovStrategy MarkovStrategy::Deterministic(
    std::size_t num_actions, std::span<const std::size_t> choice) {
  std::vector<double> flat(choice.size() * num_actions, 0.0);
  for (std::size_t s = 0; s < choice.size(); ++s) {
    if (choice[s] >= num_actions) {
      throw DimensionError("deterministic choice out of range");
    }
    flat[s * num_actions + choice[s]] = 1.0;
  }
  return MarkovStrategy(choice.size(), num_actions, std::move(flat));
}

MarkovStrategy MarkovStrategy::Uniform(std::size_t num_states,
                                       std::size_t num_actions) {
  return MarkovStrategy(
      num_states, num_actions,
      std::vector<double>(num_states * num_actions,
                          1.0 / static_cast<double>(num_actions)));
}

std::vector<std::vector<double>> MarkovStrategy::ToRows() const {
  std::vector<std::vector<double>> rows;
  for (std::size_t s = 0; s < num_states_; ++s) {
    rows.emplace_back(row(s).begin(), row(s).end());
  }
  return rows;
}

Mdp::Mdp(std::size_t num_states, std::size_t num_actions,
         std::vector<double> transitions, std::vector<double> rewards,
         double discount, std::optional<StateMetric> metric)
    : num_states_(num_states),
      num_actions_(num_actions),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)),
      discount_(discount),
      metric_(std::move(metric)) {
  if (num_states_ == 0 || num_actions_ == 0) {
    throw DimensionError("an MDP needs at least one state and one action");
  }
  if (transitions_.size() != num_states_ * num_actions_ * num_states_ ||
      rewards_.size() != num_states_ * num_actions_) {
    throw DimensionError("MDP arrays do not match |S| and |A|");
  }
}

std::vector<std::string> validate_mdp(const Mdp& mdp) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      CheckRow(mdp.transition_row(s, a),
               fmt::format("transitions[s={}, a={}]", s, a), out);
      if (!std::isfinite(mdp.reward(s, a))) {
        out.push_back(fmt::format("rewards[s={}, a={}]: not finite", s, a));
      }
    }
  }
  CheckDiscount(mdp.discount(), out);
  CheckMetric(mdp.metric(), mdp.num_states(), out);
  return out;
}

MarkovGame::MarkovGame(std::vector<std::string> states,
                       std::vector<std::vector<std::string>> action_sets,
                       std::vector<double> transitions,
                       std::vector<std::vector<double>> rewards,
                       double discount, std::optional<StateMetric> metric)
    : states_(std::move(states)),
      action_sets_(std::move(action_sets)),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)),
      discount_(discount),
      metric_(std::move(metric)) {
  if (action_sets_.empty()) throw DimensionError("a game needs a player");
  if (states_.empty()) throw DimensionError("a game needs a state");
  strides_.assign(action_sets_.size(), 1);
  for (std::size_t i = action_sets_.size(); i-- > 0;) {
    if (action_sets_[i].empty()) {
      throw DimensionError(fmt::format("player {} has no actions", i));
    }
    strides_[i] = num_joint_actions_;
    num_joint_actions_ *= action_sets_[i].size();
  }
  const std::size_t pairs = states_.size() * num_joint_actions_;
  if (transitions_.size() != pairs * states_.size()) {
    throw DimensionError("transition array does not match |S| x |A| x |S|");
  }
  if (rewards_.size() != action_sets_.size()) {
    throw DimensionError("need one reward table per player");
  }
  for (const auto& r : rewards_) {
    if (r.size() != pairs) {
      throw DimensionError("reward table does not match |S| x |A|");
    }
  }
}

StateMetric MarkovGame::metric_or_line() const {
  return metric_ ? *metric_ : StateMetric::Line(states_.size());
}

std::size_t MarkovGame::joint_index(std::span<const std::size_t> actions) const {
  if (actions.size() != action_sets_.size()) {
    throw DimensionError("joint action has the wrong number of components");
  }
  std::size_t joint = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] >= action_sets_[i].size()) {
      throw DimensionError(fmt::format("action {} out of range for player {}",
                                       actions[i], i));
    }
    joint += actions[i] * strides_[i];
  }
  return joint;
}

std::vector<std::size_t> MarkovGame::joint_actions(std::size_t joint) const {
  std::vector<std::size_t> out(action_sets_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = action_of(joint, i);
  return out;
}

MarkovGame MarkovGame::WithTransitions(std::vector<double> transitions) const {
  return MarkovGame(states_, action_sets_, std::move(transitions), rewards_,
                    discount_, metric_);
}

std::vector<std::string> validate_game(const MarkovGame& game) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < game.num_states(); ++s) {
    for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
      const std::string where =
          fmt::format("transitions[{}|{}]", game.state_names()[s],
                      JointLabel(game, j));
      CheckRow(game.transition_row(s, j), where, out);
      for (std::size_t i = 0; i < game.num_players(); ++i) {
        if (!std::isfinite(game.reward(i, s, j))) {
          out.push_back(fmt::format("rewards[{}][{}|{}]: not finite", i,
                                    game.state_names()[s],
                                    JointLabel(game, j)));
        }
      }
    }
  }
  CheckDiscount(game.discount(), out);
  CheckMetric(game.metric(), game.num_states(), out);
  return out;
}

void check_profile(const MarkovGame& game, const StrategyProfile& profile) {
  if (profile.num_players() != game.num_players()) {
    throw DimensionError(fmt::format("profile has {} strategies for {} players",
                                     profile.num_players(),
                                     game.num_players()));
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (profile[i].num_states() != game.num_states() ||
        profile[i].num_actions() != game.num_actions(i)) {
      throw DimensionError(fmt::format(
          "strategy of player {} is {}x{}, game expects {}x{}", i,
          profile[i].num_states(), profile[i].num_actions(),
          game.num_states(), game.num_actions(i)));
    }
  }
}

Mdp induced_mdp(const MarkovGame& game, const StrategyProfile& profile,
                std::size_t player) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw DimensionError(fmt::format("player {} out of range", player));
  }
  const std::size_t ns = game.num_states();
  const std::size_t na = game.num_actions(player);
  std::vector<double> transitions(ns * na * ns, 0.0);
  std::vector<double> rewards(ns * na, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t j = 0; j < game.num_joint_actions(); ++j) {
      double weight = 1.0;
      for (std::size_t k = 0; k < game.num_players(); ++k) {
        if (k != player) weight *= profile[k](s, game.action_of(j, k));
      }
      if (weight == 0.0) continue;
      const std::size_t a = game.action_of(j, player);
      rewards[s * na + a] += weight * game.reward(player, s, j);
      const auto row = game.transition_row(s, j);
      double* out = &transitions[(s * na + a) * ns];
      for (std::size_t t = 0; t < ns; ++t) out[t] += weight * row[t];
    }
  }
  return Mdp(ns, na, std::move(transitions), std::move(rewards),
             game.discount(), game.metric());
}

MarkovGame single_player_game(const Mdp& mdp) {
  std::vector<std::string> states;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    states.push_back(std::to_string(s + 1));
  }
  std::vector<std::string> actions;
  for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
    actions.push_back(std::to_string(a + 1));
  }
  return MarkovGame(std::move(states), {std::move(actions)},
                    mdp.transitions(), {mdp.rewards()}, mdp.discount(),
                    mdp.metric());
}

}  // namespace mperobust
