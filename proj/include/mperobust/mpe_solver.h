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

#ifndef MPEROBUST_MPE_SOLVER_H_
#define MPEROBUST_MPE_SOLVER_H_

// Markov perfect equilibria of two-player general-sum games by Nash value
// iteration. Best-response maps of general-sum games need not contract, so
// convergence is not guaranteed; every result carries a certificate computed
// on the input game and `converged` reflects that certificate.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mperobust/game.h"
#include "mperobust/game_engine.h"

namespace mperobust {

class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
  static PayoffMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// One-shot game at `state`: entry (a1, a2) for player i is
// (1 - gamma) r^i(s, (a1, a2)) + gamma sum_{s'} P(s'|s, (a1, a2)) v^i(s').
struct StageGame {
  PayoffMatrix row_payoffs;
  PayoffMatrix col_payoffs;
};

StageGame stage_game(const MarkovGame& game,
                     const std::vector<ValueFunction>& values,
                     std::size_t state);

struct BimatrixEquilibrium {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double row_payoff = 0.0;
  double col_payoff = 0.0;
};

// Support enumeration. Support pairs (I, J) are visited by |I| + |J|, then
// lexicographically by I and J; the first pair admitting an equilibrium
// wins. Each pair is decided exactly by an LP feasibility problem, so
// degenerate games are handled. Cost grows as 4^max(m, n).
BimatrixEquilibrium bimatrix_nash(const PayoffMatrix& a, const PayoffMatrix& b);

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iter = 10000;
  // Seeds the random initial values used by restarts after a failed run.
  std::uint64_t seed = 0;
  std::size_t restarts = 2;
};

struct SolveResult {
  StrategyProfile profile;
  // V^i of `profile` on the input game.
  std::vector<ValueFunction> values;
  CertificateAlpha certificate;
  std::size_t iterations = 0;
  bool converged = false;
};

// Throws DomainError unless the game has exactly two players.
SolveResult solve_mpe(const MarkovGame& game, const SolveOptions& options = {});

}  // namespace mperobust

#endif  // MPEROBUST_MPE_SOLVER_H_
