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
#include <string_view>
#include <vector>

#include "pblottery/limits.hpp"
#include "pblottery/model.hpp"

namespace pblottery {

// Maximal groups of voters with identical utility vectors, ordered by their
// smallest member; members ascend within a cell.
struct UnanimousPartition {
  std::vector<std::vector<std::size_t>> cells;
};

UnanimousPartition unanimous_partition(const Instance& instance);

enum class ExAnteAxiom { ifs, strong_ifs, ufs, strong_ufs, gfs };

std::string_view to_string(ExAnteAxiom axiom);

struct ExAnteWitness {
  std::vector<std::size_t> voters;
  Rational lhs;
  Rational bound;
};

// holds == false iff some witness has lhs < bound.
struct ExAnteReport {
  ExAnteAxiom axiom = ExAnteAxiom::ifs;
  bool holds = true;
  std::vector<ExAnteWitness> witnesses;
};

// Projects by descending utility per cost (zero cost with positive utility
// first), ties by ascending cost then index; projects the voter values at zero
// follow in index order.
std::vector<std::size_t> utility_per_cost_order(const Instance& instance, std::size_t voter);

// max { u_voter(t) : t fractional, cost(t) = budget }, by the fractional
// knapsack greedy. Throws PreconditionError unless 0 <= budget <= B.
Rational optimal_fractional_utility(const Instance& instance, std::size_t voter,
                                    const Rational& budget);

// Each check throws PreconditionError when p is not feasible. Witnesses list
// every violating voter (IFS variants) or cell (UFS variants).
ExAnteReport check_ifs(const Instance& instance, const FractionalOutcome& p);
ExAnteReport check_strong_ifs(const Instance& instance, const FractionalOutcome& p);
ExAnteReport check_ufs(const Instance& instance, const FractionalOutcome& p);
ExAnteReport check_strong_ufs(const Instance& instance, const FractionalOutcome& p);

// Enumerates all 2^n - 1 groups; the single witness is the group of least
// slack. Throws ScaleError when n exceeds limits.max_voters.
ExAnteReport check_gfs(const Instance& instance, const FractionalOutcome& p,
                       const Limits& limits = {});

// sum_c p_c * max_{i in group} u_ic
Rational group_coverage(const Instance& instance, const FractionalOutcome& p,
                        std::span<const std::size_t> group);

}  // namespace pblottery
