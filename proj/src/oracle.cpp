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

#include "pblottery/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <utility>

#include "pblottery/errors.hpp"
#include "pblottery/exante.hpp"
#include "pblottery/expost.hpp"
#include "pblottery/rounding.hpp"

namespace pblottery {

namespace {

constexpr std::array<std::pair<PredicateTag, std::string_view>, 9> kTagNames{{
    {PredicateTag::all, "all"},
    {PredicateTag::within_budget, "within-budget"},
    {PredicateTag::bb1, "bb1"},
    {PredicateTag::bfx, "bfx"},
    {PredicateTag::jr_binary, "jr-binary"},
    {PredicateTag::jr_general, "jr-general"},
    {PredicateTag::ejr_binary, "ejr-binary"},
    {PredicateTag::fjr_binary, "fjr-binary"},
    {PredicateTag::ejrx_cost, "ejrx-cost"},
}};

bool admits_tag(PredicateTag tag, const Instance& instance, const Outcome& w,
                const Limits& limits) {
  switch (tag) {
    case PredicateTag::all:
      return true;
    case PredicateTag::within_budget:
      return instance.cost(w) <= instance.budget();
    case PredicateTag::bb1:
      return is_bb1(instance, w);
    case PredicateTag::bfx:
      return is_bfx(instance, w);
    case PredicateTag::jr_binary:
      return check_jr_binary(instance, w).holds;
    case PredicateTag::jr_general:
      return check_jr_general(instance, w).holds;
    case PredicateTag::ejr_binary:
      return check_ejr_binary(instance, w, limits).holds;
    case PredicateTag::fjr_binary:
      return check_fjr_binary(instance, w, limits).holds;
    case PredicateTag::ejrx_cost:
      return check_ejrx_cost(instance, w, limits).holds;
  }
  return false;
}

Rational count(std::size_t k) { return Rational(static_cast<std::int64_t>(k)); }

std::string digits(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  return std::string(width - std::min(width, s.size()), '0') + s;
}

// Rebuilds the lottery from solver weights and re-checks every claim.
FeasibilityVerdict certify(const Instance& instance, const std::vector<Outcome>& columns,
                           const std::vector<Rational>& weights,
                           const OutcomePredicate& predicate, const LinearConstraintSet& extra,
                           const std::optional<FractionalOutcome>& target, const Limits& limits) {
  std::vector<LotteryEntry> entries;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (weights[k].sign() > 0) entries.push_back({weights[k], columns[k]});
  }
  Lottery lottery = Lottery::merged(std::move(entries));
  const FractionalOutcome p = lottery.marginals();
  if (target && !implements(lottery, *target)) {
    throw InvariantError("oracle certificate does not implement the queried outcome");
  }
  if (!is_feasible(instance, p)) throw InvariantError("oracle certificate marginals are infeasible");
  if (!extra.satisfied_by(p)) throw InvariantError("oracle certificate violates a constraint row");
  for (const auto& e : lottery.entries()) {
    if (!predicate.admits(instance, e.outcome, limits)) {
      throw InvariantError("oracle certificate uses an outcome outside the predicate");
    }
  }
  const std::size_t support = lottery.entries().size();
  return {true, std::move(lottery), "lottery over " + std::to_string(support) + " outcome(s)"};
}

}  // namespace

std::string_view to_string(PredicateTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "all";
}

OutcomePredicate OutcomePredicate::parse(std::string_view text) {
  OutcomePredicate predicate;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('+', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(start, end - start);
    const auto it = std::find_if(kTagNames.begin(), kTagNames.end(),
                                 [&](const auto& entry) { return entry.second == part; });
    if (it == kTagNames.end()) {
      throw ValidationError("predicate", "unknown predicate '" + std::string(part) + "'");
    }
    if (it->first != PredicateTag::all) predicate.conjuncts.push_back(it->first);
    start = end + 1;
  }
  return predicate;
}

std::string OutcomePredicate::name() const {
  if (conjuncts.empty()) return "all";
  std::string out;
  for (PredicateTag tag : conjuncts) {
    if (!out.empty()) out += '+';
    out += to_string(tag);
  }
  return out;
}

bool OutcomePredicate::admits(const Instance& instance, const Outcome& w,
                              const Limits& limits) const {
  return std::all_of(conjuncts.begin(), conjuncts.end(),
                     [&](PredicateTag tag) { return admits_tag(tag, instance, w, limits); });
}

void LinearConstraintSet::validate(std::size_t m) const {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].coefficients.size() != m) {
      throw ValidationError("constraints", "row " + std::to_string(k) + " has " +
                                               std::to_string(rows[k].coefficients.size()) +
                                               " coefficients for " + std::to_string(m) +
                                               " projects");
    }
  }
}

bool LinearConstraintSet::satisfied_by(const FractionalOutcome& p) const {
  for (const auto& row : rows) {
    Rational lhs;
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (!row.coefficients[c].is_zero()) lhs += row.coefficients[c] * p[c];
    }
    const bool ok = row.relation == Relation::ge   ? lhs >= row.bound
                    : row.relation == Relation::le ? lhs <= row.bound
                                                   : lhs == row.bound;
    if (!ok) return false;
  }
  return true;
}

std::vector<Outcome> enumerate_outcomes(const Instance& instance,
                                        const OutcomePredicate& predicate,
                                        const Limits& limits) {
  limits.require_projects(instance.m(), "outcome enumeration");
  std::vector<Outcome> out;
  const std::uint64_t end = std::uint64_t{1} << instance.m();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    Outcome w = Outcome::from_mask(instance.m(), mask);
    if (predicate.admits(instance, w, limits)) out.push_back(std::move(w));
  }
  return out;
}

FeasibilityVerdict lottery_feasible(const Instance& instance, const FractionalOutcome& p,
                                    const OutcomePredicate& predicate,
                                    const LinearConstraintSet& extra, const Limits& limits) {
  require_feasible(instance, p);
  extra.validate(instance.m());
  if (!extra.satisfied_by(p)) return {false, std::nullopt, "p violates the extra constraints"};
  const std::vector<Outcome> outcomes = enumerate_outcomes(instance, predicate, limits);
  if (outcomes.empty()) return {false, std::nullopt, "no outcome satisfies " + predicate.name()};

  const std::size_t m = instance.m();
  std::vector<LinearConstraint> rows(m + 1);
  rows[0] = {std::vector<Rational>(outcomes.size(), Rational(1)), Relation::eq, Rational(1)};
  for (std::size_t c = 0; c < m; ++c) {
    rows[c + 1].relation = Relation::eq;
    rows[c + 1].bound = p[c];
    rows[c + 1].coefficients.resize(outcomes.size());
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      if (outcomes[k].contains(c)) rows[c + 1].coefficients[k] = 1;
    }
  }
  const auto weights = find_nonnegative_solution(outcomes.size(), rows);
  if (!weights) {
    return {false, std::nullopt,
            "no lottery over the " + std::to_string(outcomes.size()) + " outcome(s) satisfying " +
                predicate.name() + " implements p"};
  }
  return certify(instance, outcomes, *weights, predicate, extra, p, limits);
}

FeasibilityVerdict jointly_feasible(const Instance& instance, const OutcomePredicate& predicate,
                                    const LinearConstraintSet& extra, const Limits& limits) {
  extra.validate(instance.m());
  const std::vector<Outcome> outcomes = enumerate_outcomes(instance, predicate, limits);
  if (outcomes.empty()) return {false, std::nullopt, "no outcome satisfies " + predicate.name()};

  // Outcomes with equal (cost, extra-row) values are interchangeable columns.
  std::map<std::vector<Rational>, std::size_t> seen;
  std::vector<Outcome> columns;
  std::vector<std::vector<Rational>> values;
  for (const Outcome& w : outcomes) {
    const auto members = w.members();
    std::vector<Rational> column;
    column.reserve(extra.rows.size() + 1);
    column.push_back(instance.cost(w));
    for (const auto& row : extra.rows) {
      Rational v;
      for (std::size_t c : members) v += row.coefficients[c];
      column.push_back(std::move(v));
    }
    if (seen.emplace(column, columns.size()).second) {
      columns.push_back(w);
      values.push_back(std::move(column));
    }
  }

  const std::size_t k = columns.size();
  std::vector<LinearConstraint> rows(extra.rows.size() + 2);
  rows[0] = {std::vector<Rational>(k, Rational(1)), Relation::eq, Rational(1)};
  rows[1] = {std::vector<Rational>(k), Relation::eq, instance.budget()};
  for (std::size_t r = 0; r < extra.rows.size(); ++r) {
    rows[r + 2] = {std::vector<Rational>(k), extra.rows[r].relation, extra.rows[r].bound};
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < values[j].size(); ++r) rows[r + 1].coefficients[j] = values[j][r];
  }
  const auto weights = find_nonnegative_solution(k, rows);
  if (!weights) {
    return {false, std::nullopt,
            "no lottery over the " + std::to_string(outcomes.size()) + " outcome(s) satisfying " +
                predicate.name() + " meets cost(p) = B and the " +
                std::to_string(extra.rows.size()) + " extra row(s)"};
  }
  return certify(instance, columns, *weights, predicate, extra, std::nullopt, limits);
}

LinearConstraintSet ifs_constraints(const Instance& instance) {
  LinearConstraintSet set;
  const Rational inv_n = Rational(1) / count(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) {
    const auto u = instance.utilities(i);
    set.rows.push_back({std::vector<Rational>(u.begin(), u.end()), Relation::ge,
                        inv_n * optimal_fractional_utility(instance, i, instance.budget())});
  }
  return set;
}

LinearConstraintSet gfs_constraints(const Instance& instance, const Limits& limits) {
  limits.require_voters(instance.n(), "GFS row generation");
  const std::size_t n = instance.n();
  const Rational inv_n = Rational(1) / count(n);
  std::vector<Rational> entitlement(n);
  for (std::size_t i = 0; i < n; ++i) {
    entitlement[i] = inv_n * optimal_fractional_utility(instance, i, instance.budget());
  }
  const std::uint64_t groups = std::uint64_t{1} << n;
  LinearConstraintSet set;
  set.rows.resize(groups);
  set.rows[0].coefficients.assign(instance.m(), Rational());
  for (std::uint64_t mask = 1; mask < groups; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint64_t rest = mask & (mask - 1);
    LinearConstraint& row = set.rows[mask];
    row.coefficients = set.rows[rest].coefficients;
    for (std::size_t c = 0; c < instance.m(); ++c) {
      row.coefficients[c] = max(row.coefficients[c], instance.utility(low, c));
    }
    row.relation = Relation::ge;
    row.bound = set.rows[rest].bound + entitlement[low];
  }
  set.rows.erase(set.rows.begin());
  return set;
}

BfxFamily gen_bfx_family(const Rational& budget, const Rational& eps) {
  if (eps.sign() <= 0 || eps >= budget / 2) {
    throw ValidationError("eps", "requires 0 < eps < B/2, got eps = " + eps.str() +
                                     " with B = " + budget.str());
  }
  const Rational half = budget / 2 + eps;
  Instance instance(budget, {{"a", eps}, {"b", half}, {"c", half}},
                    {{"v1", {Rational(1), Rational(1), Rational(1)}}});
  const Rational r = (budget - eps) / (budget + 2 * eps);
  FractionalOutcome p{{Rational(1), r, r}};
  if (instance.cost(p) != budget) throw InvariantError("BFx family p does not spend B");
  return {std::move(instance), std::move(p)};
}

Instance gen_gfs_jr_family(std::size_t n, const Rational& budget, const Rational& eps) {
  if (n < 6) throw ValidationError("n", "requires n >= 6, got " + std::to_string(n));
  if (budget.sign() <= 0) throw ValidationError("B", "requires B > 0");
  const Rational cap = budget / 2 - 2 * budget / count(n);
  if (eps.sign() <= 0 || eps >= cap) {
    throw ValidationError("eps", "requires 0 < eps < B/2 - 2B/n = " + cap.str() + ", got " +
                                     eps.str());
  }
  const std::size_t width = std::to_string(n).size();
  const Rational personal = budget / 2 - eps;
  std::vector<ProjectSpec> projects{{"g", budget / 2}};
  for (std::size_t i = 1; i <= n; ++i) {
    for (char prefix : {'a', 'b', 'c'}) projects.push_back({prefix + digits(i, width), personal});
  }
  std::vector<VoterSpec> voters;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> u(projects.size());
    u[0] = 1;
    for (std::size_t k = 1; k <= 3; ++k) u[1 + 3 * i + (k - 1)] = 1;
    voters.push_back({"v" + digits(i + 1, width), std::move(u)});
  }
  return Instance(budget, std::move(projects), std::move(voters));
}

Instance gen_ifs_jr_family(std::size_t n, const Rational& h) {
  if (n < 4) throw ValidationError("n", "requires n >= 4, got " + std::to_string(n));
  if (h <= count(n)) {
    throw ValidationError("H", "requires H > n, got H = " + h.str() + " with n = " +
                                   std::to_string(n));
  }
  const std::size_t width = std::to_string(n).size();
  std::vector<ProjectSpec> projects{{"c", Rational(1)}};
  for (std::size_t i = 1; i <= n; ++i) {
    projects.push_back({"g" + digits(i, width) + "x", Rational(1)});
    projects.push_back({"g" + digits(i, width) + "y", Rational(1)});
  }
  std::vector<VoterSpec> voters;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> u(projects.size());
    u[0] = 1;
    u[1 + 2 * i] = h;
    u[2 + 2 * i] = h;
    voters.push_back({"v" + digits(i + 1, width), std::move(u)});
  }
  return Instance(Rational(2), std::move(projects), std::move(voters));
}

}  // namespace pblottery
