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

#include "mperobust/bounds.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mperobust/errors.h"

namespace mperobust {
namespace {

void CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError(fmt::format("discount {} outside (0,1)", gamma));
  }
}

void CheckNonnegative(double x, const char* name) {
  if (!(x >= 0.0)) throw DomainError(fmt::format("{} must be nonnegative", name));
}

double ExpectationGap(std::span<const double> p, std::span<const double> q,
                      const ValueFunction& v) {
  double gap = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) gap += (p[t] - q[t]) * v[t];
  return std::abs(gap);
}

}  // namespace

double delta_term(const MarkovGame& g, const MarkovGame& g_hat,
                  const ValueFunction& v_hat) {
  check_same_shape(g, g_hat);
  if (v_hat.size() != g.num_states()) {
    throw DimensionError("value function does not match the state count");
  }
  double out = 0.0;
  for (std::size_t s = 0; s < g.num_states(); ++s) {
    for (std::size_t j = 0; j < g.num_joint_actions(); ++j) {
      out = std::max(out, ExpectationGap(g.transition_row(s, j),
                                         g_hat.transition_row(s, j), v_hat));
    }
  }
  return out;
}

double delta_term(const Mdp& m, const Mdp& m_hat, const ValueFunction& v_hat) {
  if (m.num_states() != m_hat.num_states() ||
      m.num_actions() != m_hat.num_actions() ||
      v_hat.size() != m.num_states()) {
    throw DimensionError("MDPs and value function do not share a shape");
  }
  double out = 0.0;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      out = std::max(out, ExpectationGap(m.transition_row(s, a),
                                         m_hat.transition_row(s, a), v_hat));
    }
  }
  return out;
}

double alpha_bound_instance(double epsilon, double delta_term, double gamma) {
  CheckGamma(gamma);
  CheckNonnegative(epsilon, "epsilon");
  CheckNonnegative(delta_term, "delta term");
  return 2.0 * (epsilon + gamma * delta_term / (1.0 - gamma));
}

double alpha_bound_ipm(double epsilon, double delta, double rho,
                       double gamma) {
  CheckNonnegative(delta, "delta");
  CheckNonnegative(rho, "rho");
  return alpha_bound_instance(epsilon, delta * rho, gamma);
}

double alpha_bound_tv(double epsilon, double delta, double span_reward,
                      double gamma) {
  return alpha_bound_ipm(epsilon, delta, span_reward, gamma);
}

double alpha_bound_w(double epsilon, double delta, double l_r, double l_p,
                     double gamma) {
  CheckGamma(gamma);
  CheckNonnegative(epsilon, "epsilon");
  CheckNonnegative(delta, "delta");
  CheckNonnegative(l_r, "L_r");
  CheckNonnegative(l_p, "L_P");
  if (!(gamma * l_p < 1.0)) {
    throw DomainError(fmt::format(
        "Wasserstein bound needs gamma * L_P < 1, got {}", gamma * l_p));
  }
  return 2.0 * (epsilon + gamma * l_r * delta / (1.0 - gamma * l_p));
}

double lipschitz_value_bound(double l_r, double l_p, double gamma) {
  CheckGamma(gamma);
  CheckNonnegative(l_r, "L_r");
  CheckNonnegative(l_p, "L_P");
  if (!(gamma * l_p < 1.0)) {
    throw DomainError("Lipschitz value bound needs gamma * L_P < 1");
  }
  return (1.0 - gamma) * l_r / (1.0 - gamma * l_p);
}

double mdp_alpha_bound(double epsilon, double delta_term, double gamma) {
  return alpha_bound_instance(epsilon, delta_term, gamma);
}

double game_reward_span(const MarkovGame& game) {
  double lo = game.rewards(0).front();
  double hi = lo;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto [mn, mx] = std::minmax_element(game.rewards(i).begin(),
                                              game.rewards(i).end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  return hi - lo;
}

double hoeffding_tail(std::uint64_t n, double gap, double span_h) {
  if (n < 1 || !(gap > 0.0) || !(span_h > 0.0)) {
    throw DomainError("Hoeffding tail needs n >= 1, gap > 0 and span > 0");
  }
  const double ratio = gap / span_h;
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * ratio * ratio);
}

double sample_size_game_unrounded(double alpha, double p, double span_reward,
                                  std::size_t num_states,
                                  std::span<const std::size_t> action_counts,
                                  std::size_t num_players, double gamma) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
  CheckNonnegative(span_reward, "Span(r)");
  CheckGamma(gamma);
  if (num_states == 0 || num_players == 0 || action_counts.empty()) {
    throw DomainError("state, action and player counts must be positive");
  }
  double pairs = static_cast<double>(num_states);
  for (std::size_t count : action_counts) {
    if (count == 0) throw DomainError("action counts must be positive");
    pairs *= static_cast<double>(count);
  }
  const double scale = gamma / (1.0 - gamma) * span_reward;
  const double log_term =
      std::log(2.0 * pairs * static_cast<double>(num_players) / p);
  return scale * scale * 2.0 * log_term / (alpha * alpha);
}

std::uint64_t sample_size_game(double alpha, double p, double span_reward,
                               std::size_t num_states,
                               std::span<const std::size_t> action_counts,
                               std::size_t num_players, double gamma) {
  const double raw = sample_size_game_unrounded(
      alpha, p, span_reward, num_states, action_counts, num_players, gamma);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
}

std::uint64_t sample_size_mdp(double alpha, double p, double span_reward,
                              std::size_t num_states, std::size_t num_actions,
                              double gamma) {
  const std::size_t counts[] = {num_actions};
  return sample_size_game(alpha, p, span_reward, num_states, counts, 1, gamma);
}

RobustnessReport robustness_report(const MarkovGame& g,
                                   const MarkovGame& g_hat, IpmKind kind,
                                   const std::vector<ValueFunction>& v_hat) {
  check_same_shape(g, g_hat);
  if (v_hat.size() != g.num_players()) {
    throw DimensionError(fmt::format("expected {} value functions, got {}",
                                     g.num_players(), v_hat.size()));
  }
  const auto params = game_approx_params(g, g_hat, kind);
  const double gamma = g.discount();
  RobustnessReport out;
  out.kind = kind;
  out.epsilon = params.epsilon;
  out.delta = params.delta;
  const StateMetric metric = g_hat.metric_or_line();
  if (kind == IpmKind::kWasserstein) {
    out.lipschitz = game_lipschitz_constants(g_hat, metric);
  }
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const double dt = delta_term(g, g_hat, v_hat[i]);
    const double rho = kind == IpmKind::kTotalVariation
                           ? span_seminorm(v_hat[i].view())
                           : lipschitz_constant(v_hat[i].view(), metric);
    out.delta_term.push_back(dt);
    out.rho.push_back(rho);
    out.alpha_instance.push_back(alpha_bound_instance(out.epsilon, dt, gamma));
    out.alpha_ipm.push_back(alpha_bound_ipm(out.epsilon, out.delta, rho, gamma));
    if (kind == IpmKind::kTotalVariation) {
      out.alpha_structural.emplace_back(alpha_bound_tv(
          out.epsilon, out.delta, span_seminorm(g_hat.rewards(i)), gamma));
    } else if (gamma * out.lipschitz->transition < 1.0) {
      out.alpha_structural.emplace_back(
          alpha_bound_w(out.epsilon, out.delta, out.lipschitz->reward,
                        out.lipschitz->transition, gamma));
    } else {
      out.alpha_structural.emplace_back(std::nullopt);
    }
  }
  return out;
}

}  // namespace mperobust
