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

#ifndef MPEROBUST_EXPERIMENTS_H_
#define MPEROBUST_EXPERIMENTS_H_

// Plug-in learning with a generative model: sample n next states for every
// (state, joint action), solve the empirical game, and certify the result
// against the true game.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "mperobust/game.h"
#include "mperobust/rng.h"

namespace mperobust {

// Inverse-CDF draw from P(.|state, joint_action).
std::size_t generative_sample(const MarkovGame& game, std::size_t state,
                              std::size_t joint_action, CounterRng& rng);

struct EmpiricalModel {
  std::size_t num_states = 0;
  std::size_t num_joint_actions = 0;
  std::uint64_t samples_per_pair = 0;
  // [s][joint][s'] flattened; each (s, joint) slice sums to samples_per_pair.
  std::vector<std::uint64_t> counts;

  std::uint64_t count(std::size_t s, std::size_t joint, std::size_t next) const {
    return counts[(s * num_joint_actions + joint) * num_states + next];
  }
  // counts / n.
  std::vector<double> estimated_transitions() const;
};

// Draws exactly n samples per pair. The stream for pair (s, joint) is keyed by
// derive_seed(derive_seed(stream_key, s), joint). Rewards, discount and
// metric are copied from `game`.
std::pair<MarkovGame, EmpiricalModel> estimate_model(const MarkovGame& game,
                                                     std::uint64_t n,
                                                     std::uint64_t stream_key);

struct ExperimentRecord {
  std::size_t trial_index = 0;
  std::vector<double> alpha;  // certified on the true game, clamped at 0
  bool solver_converged = false;
  std::uint64_t rng_seed = 0;
};

struct ExperimentOptions {
  double solver_tol = 1e-8;
  std::size_t solver_max_iter = 10000;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

// Trial k uses seed derive_seed(master_seed, k); results are ordered by
// trial and independent of the thread count.
std::vector<ExperimentRecord> run_experiments(
    const MarkovGame& game, std::uint64_t n, std::size_t num_trials,
    std::uint64_t master_seed, const ExperimentOptions& options = {});

struct PlayerStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct ExperimentSummary {
  std::size_t count = 0;
  std::vector<PlayerStats> per_player;  // empty when count == 0
  std::optional<double> convergence_rate;
};

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

// trial,alpha1,alpha2,...,converged,seed
void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records,
                       std::size_t num_players);
// stat,player,value
void write_summary_csv(std::ostream& out, const ExperimentSummary& summary);

}  // namespace mperobust

#endif  // MPEROBUST_EXPERIMENTS_H_
