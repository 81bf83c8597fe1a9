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

#ifndef MPEROBUST_LINEAR_PROGRAM_H_
#define MPEROBUST_LINEAR_PROGRAM_H_

// Dense two-phase simplex for small standard-form programs
//
//   minimize c'x  subject to  A x = b,  x >= 0.
//
// Bland's rule is used throughout, so the method terminates on degenerate
// problems. Intended for problems with at most a few dozen variables.

#include <cstddef>
#include <span>
#include <vector>

namespace mperobust {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// `a` is row-major with `rows` rows of `c.size()` entries.
LpSolution solve_standard_form_lp(std::size_t rows, std::span<const double> a,
                                  std::span<const double> b,
                                  std::span<const double> c);

}  // namespace mperobust

#endif  // MPEROBUST_LINEAR_PROGRAM_H_
