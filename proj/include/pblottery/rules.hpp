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
#include <vector>

#include "pblottery/limits.hpp"
#include "pblottery/model.hpp"
#include "pblottery/rounding.hpp"

namespace pblottery {

// Every voter funds their own optimal fractional outcome with a 1/n share of
// the probability mass: the projects that fit fully in utility-per-cost order,
// plus the fitting fraction of the next one.
FractionalOutcome fractional_random_dictator(const Instance& instance);

struct GcrStep {
  std::size_t beta = 0;
  std::vector<std::size_t> projects;  // T_j
  std::vector<std::size_t> voters;    // N_j, deactivated by this step
};

struct GcrTrace {
  std::vector<GcrStep> steps;
  Outcome outcome;  // union of every T_j
};

// Greedy Cohesive Rule for binary utilities. Each step takes the weakly
// (beta, T)-cohesive group of still-active voters with the largest beta, then
// the smallest cost(T), then the most voters, then the lexicographically
// smallest T. Throws SettingError on non-binary instances and ScaleError
// beyond limits.max_projects.
GcrTrace greedy_cohesive_rule(const Instance& instance, const Limits& limits = {});

struct MesResult {
  Outcome outcome;
  PaymentMatrix payments;
  std::vector<std::size_t> selection_order;
  std::vector<Rational> rho_log;  // rho at which selection_order[k] was bought
};

// Smallest rho >= 0 with sum_i min(remaining_i, u_ij * rho) == cost(j), or
// nothing when no rho reaches cost(j).
std::optional<Rational> minimal_affordable_rho(const Instance& instance,
                                               std::span<const Rational> remaining,
                                               std::size_t project);

// Method of Equal Shares with budgets B/n. Ties in rho go to the lowest index.
MesResult method_of_equal_shares(const Instance& instance);

// What a unanimous group can buy with its pooled share |S| * B/n under binary
// utilities: the cheapest-first prefix G_S of its approvals that fits, the
// first project that does not, and the fraction delta_S of it the rest buys.
struct GroupLadder {
  std::vector<std::size_t> voters;
  std::vector<std::size_t> approvals;  // ascending cost, ties by index
  std::vector<std::size_t> prefix;     // G_S
  std::optional<std::size_t> next;     // g_{kappa+1}
  Rational allowance;                  // |S| * B / n
  Rational prefix_cost;                // cost(G_S)
  Rational delta;                      // 0 when next is absent
};

GroupLadder group_ladder(const Instance& instance, std::span<const std::size_t> cell);

struct BwGcrPlan {
  GcrTrace gcr;
  std::vector<GroupLadder> ladders;  // one per unanimous cell
  std::vector<bool> funded;          // cell received a budget
  std::vector<Rational> budgets;     // b_i per voter
  FractionalOutcome fractional;
};

struct BwGcrResult {
  BwGcrPlan plan;
  Outcome outcome;
};

// The deterministic part of the best-of-both-worlds GCR rule: p starts at
// 1_{W_GCR}; every unanimous cell whose approvals in W_GCR number exactly
// |G_S| spends |S| * B/n - cost(G_S) on its cheapest approved projects
// (continuing past any that fill up); the remaining budget is then added in
// project-index order. Runtime-checks the budget bound
// sum_i b_i <= B - cost(W_GCR) and cost(T_j) <= cost(G_S) for every step and
// funded cell it deactivated; throws InvariantError on a breach.
BwGcrPlan bw_gcr_plan(const Instance& instance, const Limits& limits = {});
BwGcrResult bw_gcr(const Instance& instance, Seed seed, const Limits& limits = {});

struct BwMesPlan {
  MesResult mes;
  PaymentMatrix payments;  // after the leftover budgets are spent
  std::vector<std::optional<std::size_t>> favourite;  // kappa_i for voters with unbought approvals
  FractionalOutcome fractional;
};

struct BwMesResult {
  BwMesPlan plan;
  Outcome outcome;
};

// The deterministic part of the best-of-both-worlds MES rule. Voters with an
// unbought approved project put all leftover budget on the cheapest such
// project (ascending voter index); everyone else fills the remaining project
// capacities in index order. Requires binary or cost utilities
// (SettingError). A project pushed past full funding raises InvariantError
// instead of being clamped.
BwMesPlan bw_mes_plan(const Instance& instance);
BwMesResult bw_mes(const Instance& instance, Seed seed);

}  // namespace pblottery
