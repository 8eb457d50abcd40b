// Copyright 2026 The pblottery Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pblottery/rational.hpp"

namespace pblottery {

enum class Relation { ge, eq, le };

std::string_view to_string(Relation relation);

// sum_k coefficients[k] * x_k  (relation)  bound
struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::ge;
  Rational bound;
};

// Exact phase-one simplex with Bland's rule. Returns some x >= 0 of length
// `variables` satisfying every row, or nullopt when none exists. Throws
// ValidationError when a row has the wrong length.
std::optional<std::vector<Rational>> find_nonnegative_solution(
    std::size_t variables, std::span<const LinearConstraint> rows);

}  // namespace pblottery
