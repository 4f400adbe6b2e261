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

#ifndef BFM_ERRORS_HPP
#define BFM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bfm {

/// Malformed or out-of-contract input (unknown ids, wrong lengths, bad text).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force routine was asked to enumerate beyond its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An allocation rule was observed to be non-monotone in some agent's bid.
class MonotonicityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The LP solver failed (iteration limit, unbounded on a bounded LP).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfm

#endif  // BFM_ERRORS_HPP
