// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BFM_COVERAGE_LP_HPP
#define BFM_COVERAGE_LP_HPP

#include <optional>
#include <vector>

#include "bfm/agent_set.hpp"
#include "bfm/rational.hpp"
#include "bfm/valuations.hpp"

namespace bfm {

/// 2e/(e-1): worst-case ratio between the coverage LP optimum and the best
/// integral budgeted cover.
double coverage_integrality_gap();

/// LPs with at most this many (sets + elements) are solved with exact
/// rational pivots; larger ones use the floating-point path.
inline constexpr int kExactLpLimit = 64;

/// Optimal point of the budgeted coverage LP
///   max sum_j w_j z_j  s.t.  z_j <= sum_{i in T_j} x_i,  sum_i c_i x_i <= B,
///   0 <= x, z <= 1.
/// x is indexed by set id (inactive sets are 0), z by element id.
struct FractionalSolution {
  std::vector<double> x;
  std::vector<double> z;
  double objective = 0.0;
  /// Present when the exact rational path was used.
  std::optional<Rational> exact_objective;
  std::optional<std::vector<Rational>> exact_x;
};

/// Solves the LP over the sets in `active` (all of which must cost at most
/// the budget). Throws SolverError if the simplex fails.
FractionalSolution solve_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                     const Rational& budget, const AgentSet& active);

/// Same, over every set whose cost is at most the budget.
FractionalSolution solve_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                     const Rational& budget);

/// OPT_f as an exact rational when the exact path applies, otherwise the
/// float objective converted exactly.
Rational coverage_lp_value(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget,
                           const AgentSet& active);

/// F(x) = sum_j w_j (1 - prod_{i in T_j} (1 - x_i)).
double potential_F(const CoverageSpec& spec, const std::vector<double>& x);

/// L(x) = sum_j w_j min(1, sum_{i in T_j} x_i).
double bound_L(const CoverageSpec& spec, const std::vector<double>& x);

struct PipageResult {
  std::vector<double> x;
  std::vector<double> potential_history;  // F before the first move and after each
  int iterations = 0;
};

/// Repeatedly takes the two lowest-index fractional coordinates (i, j) and
/// moves along x_i += eps, x_j -= eps c_i / c_j to whichever end of the
/// feasible interval has the larger F (left end on ties). The budget is
/// preserved and F never decreases; at most one fractional coordinate is
/// left. Fractional coordinates of zero-cost sets are raised to 1 first.
PipageResult pipage_round(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget,
                          std::vector<double> x);

/// Coordinates within this distance of 0 or 1 are treated as integral.
inline constexpr double kIntegralTolerance = 1e-12;

/// Given x with at most one fractional coordinate r, returns the better (by
/// exact coverage value) of the round-down set and the singleton {r}; the
/// round-down set wins ties.
AgentSet resolve_last_fractional(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                 const Rational& budget, const std::vector<double>& x);

/// LP -> pipage -> last-coordinate resolution, as one integral heuristic.
AgentSet round_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget);

}  // namespace bfm

#endif  // BFM_COVERAGE_LP_HPP
