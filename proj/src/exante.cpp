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

#include "pblottery/exante.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <map>
#include <numeric>

#include "pblottery/errors.hpp"

namespace pblottery {

std::string_view to_string(ExAnteAxiom axiom) {
  switch (axiom) {
    case ExAnteAxiom::ifs:
      return "ifs";
    case ExAnteAxiom::strong_ifs:
      return "strong-ifs";
    case ExAnteAxiom::ufs:
      return "ufs";
    case ExAnteAxiom::strong_ufs:
      return "strong-ufs";
    case ExAnteAxiom::gfs:
      return "gfs";
  }
  return "ifs";
}

UnanimousPartition unanimous_partition(const Instance& instance) {
  std::map<std::vector<Rational>, std::size_t> cell_of;
  UnanimousPartition partition;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    auto row = instance.utilities(i);
    std::vector<Rational> key(row.begin(), row.end());
    auto [it, inserted] = cell_of.emplace(std::move(key), partition.cells.size());
    if (inserted) partition.cells.emplace_back();
    partition.cells[it->second].push_back(i);
  }
  return partition;
}

std::vector<std::size_t> utility_per_cost_order(const Instance& instance, std::size_t voter) {
  std::vector<std::size_t> valued;
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < instance.m(); ++c) {
    (instance.approves(voter, c) ? valued : rest).push_back(c);
  }
  std::stable_sort(valued.begin(), valued.end(), [&](std::size_t a, std::size_t b) {
    // u_a / cost_a > u_b / cost_b, cross-multiplied so zero costs rank first.
    const Rational lhs = instance.utility(voter, a) * instance.cost(b);
    const Rational rhs = instance.utility(voter, b) * instance.cost(a);
    if (lhs != rhs) return lhs > rhs;
    if (instance.cost(a) != instance.cost(b)) return instance.cost(a) < instance.cost(b);
    return a < b;
  });
  valued.insert(valued.end(), rest.begin(), rest.end());
  return valued;
}

Rational optimal_fractional_utility(const Instance& instance, std::size_t voter,
                                    const Rational& budget) {
  if (voter >= instance.n()) throw PreconditionError("voter index out of range");
  if (budget.sign() < 0 || budget > instance.budget()) {
    throw PreconditionError("budget " + budget.str() + " outside [0, " +
                            instance.budget().str() + "]");
  }
  Rational left = budget;
  Rational value;
  for (std::size_t c : utility_per_cost_order(instance, voter)) {
    const Rational& u = instance.utility(voter, c);
    if (u.is_zero()) break;
    const Rational& cost = instance.cost(c);
    if (cost <= left) {
      value += u;
      left -= cost;
    } else {
      value += u * (left / cost);
      break;
    }
  }
  return value;
}

namespace {

ExAnteReport per_voter(const Instance& instance, const FractionalOutcome& p, ExAnteAxiom axiom,
                       const Rational& scale, const Rational& budget) {
  require_feasible(instance, p);
  ExAnteReport report{axiom, true, {}};
  for (std::size_t i = 0; i < instance.n(); ++i) {
    const Rational bound = scale * optimal_fractional_utility(instance, i, budget);
    const Rational lhs = utility(instance, i, p);
    if (lhs < bound) {
      report.holds = false;
      report.witnesses.push_back({{i}, lhs, bound});
    }
  }
  return report;
}

ExAnteReport per_cell(const Instance& instance, const FractionalOutcome& p, ExAnteAxiom axiom) {
  require_feasible(instance, p);
  ExAnteReport report{axiom, true, {}};
  const Rational n(static_cast<std::int64_t>(instance.n()));
  for (const auto& cell : unanimous_partition(instance).cells) {
    const std::size_t i = cell.front();
    const Rational size(static_cast<std::int64_t>(cell.size()));
    const Rational bound =
        axiom == ExAnteAxiom::ufs
            ? size / n * optimal_fractional_utility(instance, i, instance.budget())
            : optimal_fractional_utility(instance, i, size * instance.share());
    const Rational lhs = utility(instance, i, p);
    if (lhs < bound) {
      report.holds = false;
      report.witnesses.push_back({cell, lhs, bound});
    }
  }
  return report;
}

}  // namespace

ExAnteReport check_ifs(const Instance& instance, const FractionalOutcome& p) {
  return per_voter(instance, p, ExAnteAxiom::ifs,
                   Rational(1) / Rational(static_cast<std::int64_t>(instance.n())),
                   instance.budget());
}

ExAnteReport check_strong_ifs(const Instance& instance, const FractionalOutcome& p) {
  return per_voter(instance, p, ExAnteAxiom::strong_ifs, Rational(1), instance.share());
}

ExAnteReport check_ufs(const Instance& instance, const FractionalOutcome& p) {
  return per_cell(instance, p, ExAnteAxiom::ufs);
}

ExAnteReport check_strong_ufs(const Instance& instance, const FractionalOutcome& p) {
  return per_cell(instance, p, ExAnteAxiom::strong_ufs);
}

Rational group_coverage(const Instance& instance, const FractionalOutcome& p,
                        std::span<const std::size_t> group) {
  Rational total;
  for (std::size_t c = 0; c < instance.m(); ++c) {
    if (p[c].is_zero()) continue;
    Rational best;
    for (std::size_t i : group) best = max(best, instance.utility(i, c));
    total += p[c] * best;
  }
  return total;
}

ExAnteReport check_gfs(const Instance& instance, const FractionalOutcome& p,
                       const Limits& limits) {
  limits.require_voters(instance.n(), "GFS group enumeration");
  require_feasible(instance, p);
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  const Rational inv_n = Rational(1) / Rational(static_cast<std::int64_t>(n));

  std::vector<Rational> entitlement(n);
  for (std::size_t i = 0; i < n; ++i) {
    entitlement[i] = inv_n * optimal_fractional_utility(instance, i, instance.budget());
  }

  // Row `mask` holds max_{i in mask} u_ic; built from the row without the
  // lowest member.
  const std::uint64_t groups = std::uint64_t{1} << n;
  std::vector<std::vector<Rational>> best(groups);
  std::vector<Rational> bound(groups);
  best[0].assign(m, Rational());

  ExAnteReport report{ExAnteAxiom::gfs, true, {}};
  std::optional<Rational> worst;
  std::uint64_t worst_mask = 0;
  Rational worst_lhs;
  for (std::uint64_t mask = 1; mask < groups; ++mask) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint64_t rest = mask & (mask - 1);
    best[mask] = best[rest];
    for (std::size_t c = 0; c < m; ++c) {
      const Rational& u = instance.utility(low, c);
      if (best[mask][c] < u) best[mask][c] = u;
    }
    bound[mask] = bound[rest] + entitlement[low];
    Rational lhs;
    for (std::size_t c = 0; c < m; ++c) {
      if (!p[c].is_zero() && !best[mask][c].is_zero()) lhs += p[c] * best[mask][c];
    }
    const Rational slack = lhs - bound[mask];
    if (!worst || slack < *worst) {
      worst = slack;
      worst_mask = mask;
      worst_lhs = lhs;
    }
  }
  if (worst) {
    std::vector<std::size_t> voters;
    for (std::size_t i = 0; i < n; ++i) {
      if ((worst_mask >> i) & 1U) voters.push_back(i);
    }
    report.holds = worst->sign() >= 0;
    report.witnesses.push_back({std::move(voters), worst_lhs, bound[worst_mask]});
  }
  return report;
}

}  // namespace pblottery
