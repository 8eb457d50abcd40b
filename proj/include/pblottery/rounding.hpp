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
#include <vector>

#include "pblottery/model.hpp"

namespace pblottery {

struct Seed {
  std::uint64_t value = 0;
};

// splitmix64 finalizer applied to base + index; used to derive the seeds of
// consecutive samples from one user seed.
Seed derive_seed(Seed base, std::uint64_t index);

// Direction taken in one rounding round. With indices (i, j), `up` adds alpha
// to q_i and removes cost(i)/cost(j) * alpha from q_j; `down` removes beta from
// q_i and adds cost(i)/cost(j) * beta to q_j. A single-index round is the same
// rule with alpha = 1 - q and beta = q.
enum class Branch { up, down };

struct RoundingStep {
  std::size_t round = 0;
  std::vector<std::size_t> indices;  // one or two project indices
  Rational alpha;
  Rational beta;
  Branch branch = Branch::up;
  std::vector<Rational> after;  // q after this round
};

struct RoundingTrace {
  Seed seed;
  std::vector<Rational> initial;
  std::vector<RoundingStep> rounds;
  Outcome result;
};

struct RoundingResult {
  Outcome outcome;
  RoundingTrace trace;
};

// Dependent rounding of a feasible fractional outcome. Each round makes at
// least one fractional coordinate integral while preserving every marginal in
// expectation and sum_c cost(c) * q_c exactly whenever two coordinates move,
// so the result is budget balanced up to one project. Pairs are the two
// lowest-index fractional projects; a fractional zero-cost project is rounded
// on its own first since it carries no spend.
//
// Throws PreconditionError when p is not feasible (cost(p) must equal B).
RoundingResult dependent_round(const Instance& instance, const FractionalOutcome& p, Seed seed);

// Same outcome as dependent_round(instance, p, seed).outcome, without the trace.
Outcome sample_outcome(const Instance& instance, const FractionalOutcome& p, Seed seed);

// Budget balanced up to one project.
bool is_bb1(const Instance& instance, const Outcome& w);

// Budget feasible up to any project: removing any single member fits in B.
bool is_bfx(const Instance& instance, const Outcome& w);

// B - max_c cost(c).
Rational hard_cap_budget(const Instance& instance);

// Rounds p with cost(p) = B - max cost so that every outcome costs at most B.
// Throws PreconditionError when cost(p) differs from that reduced budget.
Outcome round_with_hard_cap(const Instance& instance, const FractionalOutcome& p, Seed seed);

}  // namespace pblottery
