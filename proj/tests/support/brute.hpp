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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pblottery/model.hpp"
#include "pblottery/simplex.hpp"

// Reference implementations read straight off the definitions. They share no
// code with the library beyond the model types and are exponential on purpose.
namespace pbtest::brute {

using pblottery::FractionalOutcome;
using pblottery::Instance;
using pblottery::Outcome;
using pblottery::Rational;

std::vector<std::size_t> bits(std::uint64_t mask);
Rational mask_cost(const Instance& instance, std::uint64_t mask);
Rational mask_utility(const Instance& instance, std::size_t voter, std::uint64_t mask);
std::size_t approved_in(const Instance& instance, std::size_t voter, std::uint64_t mask);

// max u_i(t) over fractional t with cost(t) <= b: some optimum has at most one
// fractional coordinate, so try every full set plus one partial project.
Rational optimal_utility(const Instance& instance, std::size_t voter, const Rational& b);

bool bb1(const Instance& instance, std::uint64_t mask);
bool bfx(const Instance& instance, std::uint64_t mask);

// Ex-post axioms by enumerating voter groups S and project sets T.
bool jr(const Instance& instance, std::uint64_t w);
bool ejr(const Instance& instance, std::uint64_t w);
bool fjr(const Instance& instance, std::uint64_t w);
bool ejrx(const Instance& instance, std::uint64_t w);
// General JR with thresholds from {k/24} and every min(1, u_ij).
bool jr_general(const Instance& instance, std::uint64_t w);

// Ex-ante axioms from the definitions; UFS variants over every unanimous
// subgroup, GFS over every group with the maxima recomputed per group.
bool ifs(const Instance& instance, const FractionalOutcome& p);
bool strong_ifs(const Instance& instance, const FractionalOutcome& p);
bool ufs(const Instance& instance, const FractionalOutcome& p);
bool strong_ufs(const Instance& instance, const FractionalOutcome& p);
bool gfs(const Instance& instance, const FractionalOutcome& p);

// Exact law of the dependent rounding rule, branch by branch.
std::map<std::uint64_t, Rational> rounding_distribution(const Instance& instance,
                                                        const FractionalOutcome& p);

// Minimal rho with sum_i min(b_i, u_ij rho) = cost(j), by trying every set of
// capped voters.
std::optional<Rational> minimal_rho(const Instance& instance, std::span<const Rational> budgets,
                                    std::size_t project);

// Feasibility of {x >= 0, rows} by trying every choice of tight constraints.
bool vertex_feasible(std::size_t variables, std::span<const pblottery::LinearConstraint> rows);

}  // namespace pbtest::brute
