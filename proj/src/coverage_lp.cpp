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

#include "bfm/coverage_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bfm/errors.hpp"
#include "bfm/simplex.hpp"

namespace bfm {
namespace {

using Size = std::size_t;

bool is_fractional(double value) { return value > kIntegralTolerance && value < 1.0 - kIntegralTolerance; }

template <class T>
struct LpModel {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> c;
};

// Variables: x for each active set (in `active` order), then z for each element.
template <class T>
LpModel<T> build_model(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget,
                       const AgentSet& active, auto convert) {
  const Size m = active.size();
  const Size n = static_cast<Size>(spec.num_elements);
  const Size vars = m + n;
  LpModel<T> model;
  model.c.assign(vars, T(0));
  for (Size j = 0; j < n; ++j) model.c[m + j] = convert(spec.weights[j]);

  std::vector<std::vector<T>> cover(n, std::vector<T>(vars, T(0)));
  for (Size j = 0; j < n; ++j) cover[j][m + j] = T(1);
  for (Size k = 0; k < m; ++k) {
    for (int j : spec.subsets[static_cast<Size>(active[k])]) cover[static_cast<Size>(j)][k] = T(-1);
  }
  for (auto& row : cover) {
    model.a.push_back(std::move(row));
    model.b.push_back(T(0));
  }

  // Budget row normalized by B.
  std::vector<T> budget_row(vars, T(0));
  for (Size k = 0; k < m; ++k) budget_row[k] = convert(costs[static_cast<Size>(active[k])] / budget);
  model.a.push_back(std::move(budget_row));
  model.b.push_back(T(1));

  for (Size v = 0; v < vars; ++v) {
    std::vector<T> bound(vars, T(0));
    bound[v] = T(1);
    model.a.push_back(std::move(bound));
    model.b.push_back(T(1));
  }
  return model;
}

std::vector<double> move_pair(const std::vector<double>& x, Size i, Size j, double eps, double ratio,
                              bool i_binds, double i_target, double j_target) {
  std::vector<double> out = x;
  out[i] = x[i] + eps;
  out[j] = x[j] - eps * ratio;
  if (i_binds) {
    out[i] = i_target;
  } else {
    out[j] = j_target;
  }
  for (Size k : {i, j}) {
    if (std::abs(out[k]) <= kIntegralTolerance) out[k] = 0.0;
    if (std::abs(out[k] - 1.0) <= kIntegralTolerance) out[k] = 1.0;
    out[k] = std::clamp(out[k], 0.0, 1.0);
  }
  return out;
}

}  // namespace

double coverage_integrality_gap() { return 2.0 * std::numbers::e / (std::numbers::e - 1.0); }

FractionalSolution solve_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                     const Rational& budget, const AgentSet& active) {
  spec.validate();
  if (static_cast<int>(costs.size()) != spec.num_sets()) throw InputError("coverage LP: one cost per set required");
  if (budget.sign() <= 0) throw InputError("coverage LP: budget must be positive");
  for (AgentId i : active) {
    if (i < 0 || i >= spec.num_sets()) throw InputError("coverage LP: unknown set " + std::to_string(i));
    if (budget < costs[static_cast<Size>(i)]) throw InputError("coverage LP: set cost exceeds the budget");
    if (costs[static_cast<Size>(i)].sign() < 0) throw InputError("coverage LP: negative cost");
  }

  const Size m = active.size();
  const Size n = static_cast<Size>(spec.num_elements);
  FractionalSolution solution;
  solution.x.assign(static_cast<Size>(spec.num_sets()), 0.0);
  solution.z.assign(n, 0.0);

  if (static_cast<int>(m + n) <= kExactLpLimit) {
    auto model = build_model<Rational>(spec, costs, budget, active, [](const Rational& v) { return v; });
    const auto lp = maximize_packing_lp(model.a, model.b, model.c);
    std::vector<Rational> exact_x(static_cast<Size>(spec.num_sets()));
    for (Size k = 0; k < m; ++k) {
      exact_x[static_cast<Size>(active[k])] = lp.x[k];
      solution.x[static_cast<Size>(active[k])] = lp.x[k].to_double();
    }
    for (Size j = 0; j < n; ++j) solution.z[j] = lp.x[m + j].to_double();
    solution.objective = lp.objective.to_double();
    solution.exact_objective = lp.objective;
    solution.exact_x = std::move(exact_x);
  } else {
    auto model = build_model<double>(spec, costs, budget, active, [](const Rational& v) { return v.to_double(); });
    const auto lp = maximize_packing_lp(model.a, model.b, model.c);
    for (Size k = 0; k < m; ++k) solution.x[static_cast<Size>(active[k])] = std::clamp(lp.x[k], 0.0, 1.0);
    for (Size j = 0; j < n; ++j) solution.z[j] = std::clamp(lp.x[m + j], 0.0, 1.0);
    solution.objective = lp.objective;
  }
  return solution;
}

FractionalSolution solve_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                     const Rational& budget) {
  AgentSet active;
  for (AgentId i = 0; i < spec.num_sets(); ++i) {
    if (costs.at(static_cast<Size>(i)) <= budget) active.push_back(i);
  }
  return solve_coverage_lp(spec, costs, budget, active);
}

Rational coverage_lp_value(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget,
                           const AgentSet& active) {
  const auto solution = solve_coverage_lp(spec, costs, budget, active);
  if (solution.exact_objective) return *solution.exact_objective;
  return Rational::from_double(solution.objective);
}

double potential_F(const CoverageSpec& spec, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.num_sets()) throw InputError("potential_F: one coordinate per set required");
  const auto owners = spec.element_owners();
  double total = 0.0;
  for (Size j = 0; j < owners.size(); ++j) {
    double uncovered = 1.0;
    for (AgentId i : owners[j]) uncovered *= 1.0 - x[static_cast<Size>(i)];
    total += spec.weights[j].to_double() * (1.0 - uncovered);
  }
  return total;
}

double bound_L(const CoverageSpec& spec, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.num_sets()) throw InputError("bound_L: one coordinate per set required");
  const auto owners = spec.element_owners();
  double total = 0.0;
  for (Size j = 0; j < owners.size(); ++j) {
    double mass = 0.0;
    for (AgentId i : owners[j]) mass += x[static_cast<Size>(i)];
    total += spec.weights[j].to_double() * std::min(1.0, mass);
  }
  return total;
}

PipageResult pipage_round(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget,
                          std::vector<double> x) {
  if (static_cast<int>(x.size()) != spec.num_sets() || costs.size() != x.size()) {
    throw InputError("pipage_round: one coordinate and one cost per set required");
  }
  (void)budget;  // the moves preserve sum c_i x_i, so the budget is never consulted
  for (Size k = 0; k < x.size(); ++k) {
    if (x[k] < -kIntegralTolerance || x[k] > 1.0 + kIntegralTolerance) {
      throw InputError("pipage_round: coordinates must lie in [0, 1]");
    }
    x[k] = std::clamp(x[k], 0.0, 1.0);
    if (!is_fractional(x[k])) x[k] = std::round(x[k]);
  }

  PipageResult result;
  result.potential_history.push_back(potential_F(spec, x));
  // F is nondecreasing in every coordinate, so free sets can simply be taken.
  bool raised = false;
  for (Size k = 0; k < x.size(); ++k) {
    if (is_fractional(x[k]) && costs[k].is_zero()) {
      x[k] = 1.0;
      raised = true;
    }
  }
  if (raised) result.potential_history.push_back(potential_F(spec, x));

  for (;;) {
    Size i = x.size();
    Size j = x.size();
    for (Size k = 0; k < x.size(); ++k) {
      if (!is_fractional(x[k])) continue;
      if (i == x.size()) {
        i = k;
      } else {
        j = k;
        break;
      }
    }
    if (j == x.size()) break;

    const double ci = costs[i].to_double();
    const double cj = costs[j].to_double();
    const double ratio = ci / cj;  // x_j moves by -eps * ratio
    const double lower_i = -x[i];
    const double lower_j = (x[j] - 1.0) * cj / ci;
    const double upper_i = 1.0 - x[i];
    const double upper_j = x[j] * cj / ci;
    const bool left_i_binds = lower_i >= lower_j;
    const bool right_i_binds = upper_i <= upper_j;
    const double left = left_i_binds ? lower_i : lower_j;
    const double right = right_i_binds ? upper_i : upper_j;

    auto left_x = move_pair(x, i, j, left, ratio, left_i_binds, 0.0, 1.0);
    auto right_x = move_pair(x, i, j, right, ratio, right_i_binds, 1.0, 0.0);
    const double left_f = potential_F(spec, left_x);
    const double right_f = potential_F(spec, right_x);
    const double slack = 1e-12 * std::max(1.0, std::abs(left_f));
    const bool take_right = right_f > left_f + slack;
    x = take_right ? std::move(right_x) : std::move(left_x);
    result.potential_history.push_back(take_right ? right_f : left_f);
    ++result.iterations;
  }
  result.x = std::move(x);
  return result;
}

AgentSet resolve_last_fractional(const CoverageSpec& spec, const std::vector<Rational>& costs,
                                 const Rational& budget, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.num_sets()) throw InputError("resolve_last_fractional: size mismatch");
  AgentSet round_down;
  std::optional<AgentId> fractional;
  for (Size k = 0; k < x.size(); ++k) {
    if (is_fractional(x[k])) {
      if (fractional) throw InputError("resolve_last_fractional: more than one fractional coordinate");
      fractional = static_cast<AgentId>(k);
    } else if (x[k] > 0.5) {
      round_down.push_back(static_cast<AgentId>(k));
    }
  }
  if (!fractional || budget < costs[static_cast<Size>(*fractional)]) return round_down;
  const AgentSet singleton{*fractional};
  return coverage_value(spec, round_down) < coverage_value(spec, singleton) ? singleton : round_down;
}

AgentSet round_coverage_lp(const CoverageSpec& spec, const std::vector<Rational>& costs, const Rational& budget) {
  const auto lp = solve_coverage_lp(spec, costs, budget);
  const auto rounded = pipage_round(spec, costs, budget, lp.x);
  return resolve_last_fractional(spec, costs, budget, rounded.x);
}

}  // namespace bfm
