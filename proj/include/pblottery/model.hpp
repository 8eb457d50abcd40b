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
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pblottery/rational.hpp"

namespace pblottery {

// Utility/cost regime of an instance, from most to least specific.
enum class Setting {
  committee,         // unit costs and binary utilities
  binary_utilities,  // u_ic in {0, 1}
  cost_utilities,    // u_ic in {0, cost(c)}
  unit_cost,         // cost(c) = 1
  general,
};

std::string_view to_string(Setting setting);

// Integral outcome: a subset of the project indices [0, m).
class Outcome {
 public:
  Outcome() = default;
  explicit Outcome(std::size_t universe) : in_(universe, false) {}
  Outcome(std::size_t universe, std::initializer_list<std::size_t> members);
  Outcome(std::size_t universe, std::span<const std::size_t> members);

  // Bit c of mask selects project c. Requires universe <= 64.
  static Outcome from_mask(std::size_t universe, std::uint64_t mask);
  std::uint64_t mask() const;

  std::size_t universe() const noexcept { return in_.size(); }
  bool contains(std::size_t c) const { return in_.at(c); }
  void insert(std::size_t c) { in_.at(c) = true; }
  void erase(std::size_t c) { in_.at(c) = false; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::size_t> members() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome& a, const Outcome& b) { return a.in_ <=> b.in_; }

 private:
  std::vector<bool> in_;
};

// Per-project funded fraction, each in [0, 1].
struct FractionalOutcome {
  std::vector<Rational> fractions;

  static FractionalOutcome zeros(std::size_t m) { return {std::vector<Rational>(m)}; }
  static FractionalOutcome indicator(const Outcome& w);

  std::size_t size() const noexcept { return fractions.size(); }
  const Rational& operator[](std::size_t c) const { return fractions[c]; }
  Rational& operator[](std::size_t c) { return fractions[c]; }
  bool is_integral() const;

  friend bool operator==(const FractionalOutcome&, const FractionalOutcome&) = default;
};

struct LotteryEntry {
  Rational weight;
  Outcome outcome;
};

// Explicit distribution over pairwise distinct integral outcomes.
class Lottery {
 public:
  // Throws ValidationError unless every weight lies in (0, 1], weights sum to
  // exactly one, and outcomes are distinct and share one universe.
  explicit Lottery(std::vector<LotteryEntry> entries);

  // Sums the weights of repeated outcomes and drops zero weights before
  // validating.
  static Lottery merged(std::vector<LotteryEntry> entries);

  const std::vector<LotteryEntry>& entries() const noexcept { return entries_; }
  std::size_t universe() const noexcept { return entries_.front().outcome.universe(); }

  // sum_j weight_j * 1_{W_j}
  FractionalOutcome marginals() const;

 private:
  std::vector<LotteryEntry> entries_;
};

// Spend of every voter on every project plus each voter's leftover budget.
struct PaymentMatrix {
  std::vector<std::vector<Rational>> spend;  // [voter][project]
  std::vector<Rational> remaining;           // [voter]

  static PaymentMatrix with_budgets(std::size_t n, std::size_t m, const Rational& share);
  Rational project_total(std::size_t project) const;
  Rational voter_total(std::size_t voter) const;
};

struct ProjectSpec {
  std::string id;
  Rational cost;
};

struct VoterSpec {
  std::string id;
  std::vector<Rational> utilities;  // aligned with the ProjectSpec order given
};

// A participatory-budgeting instance. Projects are kept sorted by id so that
// the dense index of a project is stable across serialization round trips;
// voters keep the order they were given in.
class Instance {
 public:
  // Throws ValidationError naming the offending field when an invariant is
  // violated: negative value, cost above budget, total cost below budget,
  // duplicate or empty id, missing voters, or misaligned utility rows.
  Instance(Rational budget, std::vector<ProjectSpec> projects, std::vector<VoterSpec> voters);

  std::size_t n() const noexcept { return voter_ids_.size(); }
  std::size_t m() const noexcept { return project_ids_.size(); }

  const Rational& budget() const noexcept { return budget_; }
  // B / n, the budget share of one voter.
  const Rational& share() const noexcept { return share_; }
  const Rational& cost(std::size_t c) const { return costs_.at(c); }
  std::span<const Rational> costs() const noexcept { return costs_; }
  const Rational& total_cost() const noexcept { return total_cost_; }
  Rational cost(const Outcome& w) const;
  Rational cost(const FractionalOutcome& p) const;
  Rational max_cost() const;

  const Rational& utility(std::size_t voter, std::size_t c) const {
    return utilities_[voter * m() + c];
  }
  std::span<const Rational> utilities(std::size_t voter) const {
    return {utilities_.data() + voter * m(), m()};
  }
  bool approves(std::size_t voter, std::size_t c) const { return utility(voter, c).sign() > 0; }
  std::vector<std::size_t> approval_set(std::size_t voter) const;

  const std::string& project_id(std::size_t c) const { return project_ids_.at(c); }
  const std::string& voter_id(std::size_t i) const { return voter_ids_.at(i); }
  std::optional<std::size_t> project_index(std::string_view id) const;
  std::optional<std::size_t> voter_index(std::string_view id) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.budget_ == b.budget_ && a.project_ids_ == b.project_ids_ &&
           a.voter_ids_ == b.voter_ids_ && a.costs_ == b.costs_ && a.utilities_ == b.utilities_;
  }

 private:
  Rational budget_;
  Rational share_;
  Rational total_cost_;
  std::vector<std::string> project_ids_;
  std::vector<std::string> voter_ids_;
  std::vector<Rational> costs_;
  std::vector<Rational> utilities_;  // row-major n x m
  std::unordered_map<std::string, std::size_t> project_lookup_;
  std::unordered_map<std::string, std::size_t> voter_lookup_;
};

bool has_binary_utilities(const Instance& instance);
bool has_cost_utilities(const Instance& instance);
bool has_unit_costs(const Instance& instance);

// Most specific setting tag; committee when unit costs and binary both hold.
Setting classify(const Instance& instance);

Rational utility(const Instance& instance, std::size_t voter, const Outcome& w);
Rational utility(const Instance& instance, std::size_t voter, const FractionalOutcome& p);

// Every component in [0, 1] and cost(p) == B exactly.
bool is_feasible(const Instance& instance, const FractionalOutcome& p);
// Throws PreconditionError naming the violation when p is not feasible.
void require_feasible(const Instance& instance, const FractionalOutcome& p);

// sum_j lambda_j * 1_{W_j} == p, component-wise and exactly.
bool implements(const Lottery& lottery, const FractionalOutcome& p);

}  // namespace pblottery
