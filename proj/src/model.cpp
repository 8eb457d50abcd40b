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

#include "pblottery/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pblottery/errors.hpp"

namespace pblottery {

std::string_view to_string(Setting setting) {
  switch (setting) {
    case Setting::committee:
      return "committee";
    case Setting::binary_utilities:
      return "binary-utilities";
    case Setting::cost_utilities:
      return "cost-utilities";
    case Setting::unit_cost:
      return "unit-cost";
    case Setting::general:
      return "general";
  }
  return "general";
}

Outcome::Outcome(std::size_t universe, std::initializer_list<std::size_t> members)
    : Outcome(universe, std::span<const std::size_t>(members.begin(), members.size())) {}

Outcome::Outcome(std::size_t universe, std::span<const std::size_t> members)
    : in_(universe, false) {
  for (std::size_t c : members) in_.at(c) = true;
}

Outcome Outcome::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw PreconditionError("outcome mask needs at most 64 projects");
  Outcome w(universe);
  for (std::size_t c = 0; c < universe; ++c) {
    if ((mask >> c) & 1U) w.in_[c] = true;
  }
  return w;
}

std::uint64_t Outcome::mask() const {
  if (in_.size() > 64) throw PreconditionError("outcome mask needs at most 64 projects");
  std::uint64_t mask = 0;
  for (std::size_t c = 0; c < in_.size(); ++c) {
    if (in_[c]) mask |= std::uint64_t{1} << c;
  }
  return mask;
}

std::size_t Outcome::size() const {
  return static_cast<std::size_t>(std::count(in_.begin(), in_.end(), true));
}

std::vector<std::size_t> Outcome::members() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < in_.size(); ++c) {
    if (in_[c]) out.push_back(c);
  }
  return out;
}

FractionalOutcome FractionalOutcome::indicator(const Outcome& w) {
  FractionalOutcome p = zeros(w.universe());
  for (std::size_t c : w.members()) p[c] = 1;
  return p;
}

bool FractionalOutcome::is_integral() const {
  return std::all_of(fractions.begin(), fractions.end(),
                     [](const Rational& x) { return x.is_zero() || x == 1; });
}

Lottery::Lottery(std::vector<LotteryEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("lottery", "empty support");
  const std::size_t universe = entries_.front().outcome.universe();
  Rational total;
  std::vector<const Outcome*> seen;
  for (const auto& e : entries_) {
    if (e.weight.sign() <= 0 || e.weight > 1) {
      throw ValidationError("lottery.weight", "weight " + e.weight.str() + " outside (0, 1]");
    }
    if (e.outcome.universe() != universe) {
      throw ValidationError("lottery.outcome", "outcomes over different project sets");
    }
    total += e.weight;
    seen.push_back(&e.outcome);
  }
  if (total != 1) throw ValidationError("lottery.weight", "weights sum to " + total.str());
  std::sort(seen.begin(), seen.end(), [](const Outcome* a, const Outcome* b) { return *a < *b; });
  if (std::adjacent_find(seen.begin(), seen.end(), [](const Outcome* a, const Outcome* b) {
        return *a == *b;
      }) != seen.end()) {
    throw ValidationError("lottery.outcome", "duplicate outcome in support");
  }
}

Lottery Lottery::merged(std::vector<LotteryEntry> entries) {
  std::map<Outcome, Rational> merged;
  for (auto& e : entries) merged[e.outcome] += e.weight;
  std::vector<LotteryEntry> out;
  for (auto& [w, weight] : merged) {
    if (!weight.is_zero()) out.push_back({weight, w});
  }
  return Lottery(std::move(out));
}

FractionalOutcome Lottery::marginals() const {
  FractionalOutcome p = FractionalOutcome::zeros(universe());
  for (const auto& e : entries_) {
    for (std::size_t c : e.outcome.members()) p[c] += e.weight;
  }
  return p;
}

PaymentMatrix PaymentMatrix::with_budgets(std::size_t n, std::size_t m, const Rational& share) {
  PaymentMatrix y;
  y.spend.assign(n, std::vector<Rational>(m));
  y.remaining.assign(n, share);
  return y;
}

Rational PaymentMatrix::project_total(std::size_t project) const {
  Rational total;
  for (const auto& row : spend) total += row.at(project);
  return total;
}

Rational PaymentMatrix::voter_total(std::size_t voter) const {
  Rational total;
  for (const auto& x : spend.at(voter)) total += x;
  return total;
}

Instance::Instance(Rational budget, std::vector<ProjectSpec> projects,
                   std::vector<VoterSpec> voters)
    : budget_(std::move(budget)) {
  if (budget_.sign() < 0) throw ValidationError("budget", "negative budget");
  if (voters.empty()) throw ValidationError("voters", "at least one voter required");

  std::vector<std::size_t> order(projects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return projects[a].id < projects[b].id;
  });

  for (std::size_t c : order) {
    const auto& project = projects[c];
    const std::string field = "projects[" + project.id + "]";
    if (project.id.empty()) throw ValidationError("projects", "empty project id");
    if (!project_lookup_.emplace(project.id, project_ids_.size()).second) {
      throw ValidationError(field, "duplicate project id");
    }
    if (project.cost.sign() < 0) throw ValidationError(field + ".cost", "negative cost");
    if (project.cost > budget_) throw ValidationError(field + ".cost", "cost exceeds budget");
    project_ids_.push_back(project.id);
    costs_.push_back(project.cost);
    total_cost_ += project.cost;
  }
  if (total_cost_ < budget_) throw ValidationError("projects", "total cost below budget");

  utilities_.reserve(voters.size() * projects.size());
  for (auto& voter : voters) {
    const std::string field = "voters[" + voter.id + "]";
    if (voter.id.empty()) throw ValidationError("voters", "empty voter id");
    if (!voter_lookup_.emplace(voter.id, voter_ids_.size()).second) {
      throw ValidationError(field, "duplicate voter id");
    }
    if (voter.utilities.size() != projects.size()) {
      throw ValidationError(field + ".utilities", "expected one utility per project");
    }
    for (std::size_t c : order) {
      if (voter.utilities[c].sign() < 0) {
        throw ValidationError(field + ".utilities[" + projects[c].id + "]", "negative utility");
      }
      utilities_.push_back(voter.utilities[c]);
    }
    voter_ids_.push_back(std::move(voter.id));
  }
  share_ = budget_ / Rational(static_cast<std::int64_t>(voter_ids_.size()));
}

Rational Instance::cost(const Outcome& w) const {
  Rational total;
  for (std::size_t c : w.members()) total += costs_.at(c);
  return total;
}

Rational Instance::cost(const FractionalOutcome& p) const {
  if (p.size() != m()) throw PreconditionError("fractional outcome has wrong length");
  Rational total;
  for (std::size_t c = 0; c < m(); ++c) {
    if (!p[c].is_zero()) total += p[c] * costs_[c];
  }
  return total;
}

Rational Instance::max_cost() const {
  Rational best;
  for (const auto& c : costs_) best = max(best, c);
  return best;
}

std::vector<std::size_t> Instance::approval_set(std::size_t voter) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m(); ++c) {
    if (approves(voter, c)) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> Instance::project_index(std::string_view id) const {
  auto it = project_lookup_.find(std::string(id));
  if (it == project_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Instance::voter_index(std::string_view id) const {
  auto it = voter_lookup_.find(std::string(id));
  if (it == voter_lookup_.end()) return std::nullopt;
  return it->second;
}

bool has_binary_utilities(const Instance& instance) {
  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (const auto& u : instance.utilities(i)) {
      if (!u.is_zero() && u != 1) return false;
    }
  }
  return true;
}

bool has_cost_utilities(const Instance& instance) {
  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (std::size_t c = 0; c < instance.m(); ++c) {
      const auto& u = instance.utility(i, c);
      if (!u.is_zero() && u != instance.cost(c)) return false;
    }
  }
  return true;
}

bool has_unit_costs(const Instance& instance) {
  return std::all_of(instance.costs().begin(), instance.costs().end(),
                     [](const Rational& c) { return c == 1; });
}

Setting classify(const Instance& instance) {
  const bool binary = has_binary_utilities(instance);
  const bool unit = has_unit_costs(instance);
  if (binary && unit) return Setting::committee;
  if (binary) return Setting::binary_utilities;
  if (has_cost_utilities(instance)) return Setting::cost_utilities;
  if (unit) return Setting::unit_cost;
  return Setting::general;
}

Rational utility(const Instance& instance, std::size_t voter, const Outcome& w) {
  if (voter >= instance.n()) throw PreconditionError("voter index out of range");
  Rational total;
  for (std::size_t c : w.members()) total += instance.utility(voter, c);
  return total;
}

Rational utility(const Instance& instance, std::size_t voter, const FractionalOutcome& p) {
  if (voter >= instance.n()) throw PreconditionError("voter index out of range");
  if (p.size() != instance.m()) throw PreconditionError("fractional outcome has wrong length");
  Rational total;
  for (std::size_t c = 0; c < instance.m(); ++c) {
    if (!p[c].is_zero()) total += p[c] * instance.utility(voter, c);
  }
  return total;
}

bool is_feasible(const Instance& instance, const FractionalOutcome& p) {
  if (p.size() != instance.m()) return false;
  for (const auto& x : p.fractions) {
    if (x.sign() < 0 || x > 1) return false;
  }
  return instance.cost(p) == instance.budget();
}

void require_feasible(const Instance& instance, const FractionalOutcome& p) {
  if (p.size() != instance.m()) {
    throw PreconditionError("fractional outcome has " + std::to_string(p.size()) +
                            " entries, instance has " + std::to_string(instance.m()) +
                            " projects");
  }
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].sign() < 0 || p[c] > 1) {
      throw PreconditionError("fraction of project " + instance.project_id(c) + " is " +
                              p[c].str() + ", outside [0, 1]");
    }
  }
  const Rational spend = instance.cost(p);
  if (spend != instance.budget()) {
    throw PreconditionError("fractional outcome spends " + spend.str() + ", budget is " +
                            instance.budget().str());
  }
}

bool implements(const Lottery& lottery, const FractionalOutcome& p) {
  if (lottery.universe() != p.size()) return false;
  return lottery.marginals() == p;
}

}  // namespace pblottery
