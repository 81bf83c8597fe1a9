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

#include "mperobust/experiments.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mperobust/errors.h"
#include "mperobust/game_engine.h"
#include "mperobust/mpe_solver.h"

namespace mperobust {

std::size_t generative_sample(const MarkovGame& game, std::size_t state,
                              std::size_t joint_action, CounterRng& rng) {
  if (state >= game.num_states() ||
      joint_action >= game.num_joint_actions()) {
    throw DimensionError("state or joint action out of range");
  }
  const auto row = game.transition_row(state, joint_action);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] <= 0.0) continue;
    cumulative += row[t];
    last_positive = t;
    if (u < cumulative) return t;
  }
  // Row sums a hair below 1 leave a sliver of [0, 1) uncovered.
  return last_positive;
}

std::vector<double> EmpiricalModel::estimated_transitions() const {
  std::vector<double> out(counts.size());
  const auto n = static_cast<double>(samples_per_pair);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out[k] = static_cast<double>(counts[k]) / n;
  }
  return out;
}

std::pair<MarkovGame, EmpiricalModel> estimate_model(const MarkovGame& game,
                                                     std::uint64_t n,
                                                     std::uint64_t stream_key) {
  if (n == 0) throw DomainError("need at least one sample per pair");
  EmpiricalModel model;
  model.num_states = game.num_states();
  model.num_joint_actions = game.num_joint_actions();
  model.samples_per_pair = n;
  model.counts.assign(
      model.num_states * model.num_joint_actions * model.num_states, 0);
  for (std::size_t s = 0; s < model.num_states; ++s) {
    const std::uint64_t state_key = derive_seed(stream_key, s);
    for (std::size_t j = 0; j < model.num_joint_actions; ++j) {
      CounterRng rng(derive_seed(state_key, j));
      std::uint64_t* slice =
          &model.counts[(s * model.num_joint_actions + j) * model.num_states];
      for (std::uint64_t k = 0; k < n; ++k) {
        ++slice[generative_sample(game, s, j, rng)];
      }
    }
  }
  MarkovGame estimated = game.WithTransitions(model.estimated_transitions());
  return {std::move(estimated), std::move(model)};
}

std::vector<ExperimentRecord> run_experiments(const MarkovGame& game,
                                              std::uint64_t n,
                                              std::size_t num_trials,
                                              std::uint64_t master_seed,
                                              const ExperimentOptions& options) {
  std::vector<ExperimentRecord> records(num_trials);
  if (num_trials == 0) return records;
  if (n == 0) throw DomainError("need at least one sample per pair");

  auto run_trial = [&](std::size_t k) {
    ExperimentRecord& rec = records[k];
    rec.trial_index = k;
    rec.rng_seed = derive_seed(master_seed, k);
    const auto [empirical, counts] = estimate_model(game, n, rec.rng_seed);
    SolveOptions solve;
    solve.tol = options.solver_tol;
    solve.max_iter = options.solver_max_iter;
    solve.seed = rec.rng_seed;
    const SolveResult solved = solve_mpe(empirical, solve);
    rec.solver_converged = solved.converged;
    rec.alpha = certify_profile(game, solved.profile).alpha();
  };

  std::size_t threads = options.threads != 0
                            ? options.threads
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, num_trials);
  if (threads <= 1) {
    for (std::size_t k = 0; k < num_trials; ++k) run_trial(k);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < num_trials; k = next++) run_trial(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  ExperimentSummary out;
  out.count = records.size();
  if (records.empty()) return out;
  const std::size_t players = records.front().alpha.size();
  for (std::size_t i = 0; i < players; ++i) {
    std::vector<double> column;
    for (const auto& r : records) column.push_back(r.alpha.at(i));
    std::sort(column.begin(), column.end());
    PlayerStats st;
    st.min = column.front();
    st.max = column.back();
    const std::size_t mid = column.size() / 2;
    st.median = column.size() % 2 ? column[mid]
                                  : 0.5 * (column[mid - 1] + column[mid]);
    double total = 0.0;
    for (double a : column) total += a;
    st.mean = total / static_cast<double>(column.size());
    out.per_player.push_back(st);
  }
  const auto converged = std::count_if(
      records.begin(), records.end(),
      [](const ExperimentRecord& r) { return r.solver_converged; });
  out.convergence_rate =
      static_cast<double>(converged) / static_cast<double>(records.size());
  return out;
}

void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records,
                       std::size_t num_players) {
  out << "trial";
  for (std::size_t i = 0; i < num_players; ++i) out << ",alpha" << i + 1;
  out << ",converged,seed\n";
  for (const auto& r : records) {
    out << r.trial_index;
    for (double a : r.alpha) fmt::print(out, ",{:.17g}", a);
    out << ',' << (r.solver_converged ? 1 : 0) << ',' << r.rng_seed << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentSummary& summary) {
  out << "stat,player,value\n";
  out << "count,all," << summary.count << '\n';
  for (std::size_t i = 0; i < summary.per_player.size(); ++i) {
    const auto& st = summary.per_player[i];
    fmt::print(out, "min,{},{:.17g}\n", i + 1, st.min);
    fmt::print(out, "median,{},{:.17g}\n", i + 1, st.median);
    fmt::print(out, "max,{},{:.17g}\n", i + 1, st.max);
    fmt::print(out, "mean,{},{:.17g}\n", i + 1, st.mean);
  }
  if (summary.convergence_rate) {
    fmt::print(out, "convergence_rate,all,{:.17g}\n", *summary.convergence_rate);
  }
}

}  // namespace mperobust
