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

#ifndef BFM_SIMPLEX_HPP
#define BFM_SIMPLEX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "bfm/errors.hpp"
#include "bfm/rational.hpp"

namespace bfm {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool positive(const Rational& v) { return v.sign() > 0; }
  static bool negative(const Rational& v) { return v.sign() < 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr double kTolerance = 1e-12;
  static bool positive(double v) { return v > kTolerance; }
  static bool negative(double v) { return v < -kTolerance; }
};

template <class T>
struct LpSolution {
  std::vector<T> x;
  T objective{};
  int pivots = 0;
};

/// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
/// so the slack basis is feasible and no phase one is needed. Bland's rule
/// (lowest index entering, lowest basic index among ratio ties) rules out
/// cycling; with T = Rational every pivot is exact.
template <class T>
LpSolution<T> maximize_packing_lp(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                  const std::vector<T>& c) {
  using Traits = ScalarTraits<T>;
  const std::size_t rows = a.size();
  const std::size_t vars = c.size();
  const std::size_t cols = vars + rows;

  std::vector<std::vector<T>> tableau(rows, std::vector<T>(cols + 1, T(0)));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != vars) throw InputError("simplex: ragged constraint matrix");
    if (Traits::negative(b[r])) throw InputError("simplex: right-hand side must be nonnegative");
    for (std::size_t j = 0; j < vars; ++j) tableau[r][j] = a[r][j];
    tableau[r][vars + r] = T(1);
    tableau[r][cols] = b[r];
    basis[r] = vars + r;
  }
  // Objective row holds -c so that a negative entry marks an improving column.
  std::vector<T> objective(cols + 1, T(0));
  for (std::size_t j = 0; j < vars; ++j) objective[j] = T(0) - c[j];

  LpSolution<T> solution;
  const int max_pivots = 64 * static_cast<int>(cols + 1);
  for (;;) {
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (Traits::negative(objective[j])) {
        entering = j;
        break;
      }
    }
    if (entering == cols) break;

    std::size_t leaving = rows;
    T best_ratio{};
    for (std::size_t r = 0; r < rows; ++r) {
      if (!Traits::positive(tableau[r][entering])) continue;
      T ratio = tableau[r][cols] / tableau[r][entering];
      if (leaving == rows || ratio < best_ratio || (!(best_ratio < ratio) && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving == rows) throw SolverError("simplex: LP is unbounded");
    if (++solution.pivots > max_pivots) throw SolverError("simplex: pivot limit exceeded");

    const T pivot = tableau[leaving][entering];
    for (auto& entry : tableau[leaving]) entry = entry / pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leaving) continue;
      const T factor = tableau[r][entering];
      if (!Traits::positive(factor) && !Traits::negative(factor)) continue;
      for (std::size_t j = 0; j <= cols; ++j) tableau[r][j] = tableau[r][j] - factor * tableau[leaving][j];
    }
    const T factor = objective[entering];
    for (std::size_t j = 0; j <= cols; ++j) objective[j] = objective[j] - factor * tableau[leaving][j];
    basis[leaving] = entering;
  }

  solution.x.assign(vars, T(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < vars) solution.x[basis[r]] = tableau[r][cols];
  }
  solution.objective = objective[cols];
  return solution;
}

}  // namespace bfm

#endif  // BFM_SIMPLEX_HPP
