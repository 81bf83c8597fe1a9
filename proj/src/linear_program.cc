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

#include "mperobust/linear_program.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mperobust/errors.h"

namespace mperobust {
namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kFeasibilityEps = 1e-10;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), body_(rows, std::vector<double>(cols + 1, 0.0)),
        cost_(cols + 1, 0.0), basis_(rows, 0) {}

  std::vector<double>& row(std::size_t r) { return body_[r]; }
  std::vector<double>& cost() { return cost_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return body_.size(); }
  double& rhs(std::size_t r) { return body_[r][cols_]; }

  void Pivot(std::size_t r, std::size_t col) {
    auto& pivot_row = body_[r];
    const double scale = pivot_row[col];
    for (double& x : pivot_row) x /= scale;
    pivot_row[col] = 1.0;
    for (std::size_t i = 0; i < body_.size(); ++i) {
      if (i == r) continue;
      Eliminate(body_[i], pivot_row, col);
    }
    Eliminate(cost_, pivot_row, col);
    basis_[r] = col;
  }

  // Runs simplex iterations over columns [0, allowed). Returns false if the
  // objective is unbounded below.
  bool Optimize(std::size_t allowed) {
    while (true) {
      std::size_t entering = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (cost_[j] < -kPivotEps) {
          entering = j;
          break;
        }
      }
      if (entering == allowed) return true;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows(); ++i) {
        const double coef = body_[i][entering];
        if (coef > kPivotEps) {
          best_ratio = std::min(best_ratio, body_[i][cols_] / coef);
        }
      }
      // Among rows attaining the minimum ratio, the smallest basic index.
      std::size_t leaving = rows();
      for (std::size_t i = 0; i < rows(); ++i) {
        const double coef = body_[i][entering];
        if (coef <= kPivotEps) continue;
        if (body_[i][cols_] / coef > best_ratio + kPivotEps) continue;
        if (leaving == rows() || basis_[i] < basis_[leaving]) leaving = i;
      }
      if (leaving == rows()) return false;
      Pivot(leaving, entering);
    }
  }

  void DropRow(std::size_t r) {
    body_.erase(body_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::size_t cols() const { return cols_; }

 private:
  static void Eliminate(std::vector<double>& target,
                        const std::vector<double>& pivot_row,
                        std::size_t col) {
    const double factor = target[col];
    if (factor == 0.0) return;
    for (std::size_t k = 0; k < target.size(); ++k) {
      target[k] -= factor * pivot_row[k];
    }
    target[col] = 0.0;
  }

  std::size_t cols_;
  std::vector<std::vector<double>> body_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_standard_form_lp(std::size_t rows, std::span<const double> a,
                                  std::span<const double> b,
                                  std::span<const double> c) {
  const std::size_t n = c.size();
  if (a.size() != rows * n || b.size() != rows) {
    throw DimensionError("linear program arrays have inconsistent sizes");
  }
  // Columns: n structural variables followed by one artificial per row.
  Tableau t(rows, n + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    auto& r = t.row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] = sign * a[i * n + j];
    r[n + i] = 1.0;
    t.rhs(i) = sign * b[i];
    t.basis()[i] = n + i;
  }
  // Phase 1: minimize the sum of artificials.
  auto& cost = t.cost();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j <= n + rows; ++j) {
      if (j < n || j == n + rows) cost[j] -= t.row(i)[j];
    }
  }
  t.Optimize(n + rows);
  LpSolution out;
  if (-cost[n + rows] > kFeasibilityEps) return out;

  // Drive artificials out of the basis; rows where that is impossible are
  // linearly dependent on the others.
  for (std::size_t i = t.rows(); i-- > 0;) {
    if (t.basis()[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t.row(i)[j]) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col == n) {
      t.DropRow(i);
    } else {
      t.Pivot(i, col);
    }
  }

  // Phase 2 on the structural columns.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const std::size_t basic = t.basis()[i];
    const double cb = c[basic];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= n + rows; ++j) cost[j] -= cb * t.row(i)[j];
  }
  if (!t.Optimize(n)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    out.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  }
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace mperobust
