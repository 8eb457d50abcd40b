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

#include "pblottery/rules.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "detail/subsets.hpp"
#include "pblottery/errors.hpp"
#include "pblottery/exante.hpp"
#include "pblottery/expost.hpp"

namespace pblottery {

namespace {

Rational as_rational(std::size_t k) { return Rational(static_cast<std::int64_t>(k)); }

std::vector<std::uint64_t> approval_masks(const Instance& instance) {
  std::vector<std::uint64_t> masks(instance.n(), 0);
  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (instance.approves(i, c)) masks[i] |= std::uint64_t{1} << c;
    }
  }
  return masks;
}

std::vector<std::size_t> by_ascending_cost(const Instance& instance,
                                           std::vector<std::size_t> projects) {
  std::stable_sort(projects.begin(), projects.end(), [&](std::size_t a, std::size_t b) {
    if (instance.cost(a) != instance.cost(b)) return instance.cost(a) < instance.cost(b);
    return a < b;
  });
  return projects;
}

// Moves up to `amount` of money into p_c for c in `order`, never past p_c = 1.
// Returns what could not be placed.
Rational pour(const Instance& instance, FractionalOutcome& p, std::span<const std::size_t> order,
              Rational amount) {
  for (std::size_t c : order) {
    if (amount.sign() <= 0) break;
    const Rational& cost = instance.cost(c);
    if (cost.is_zero()) continue;
    const Rational room = (1 - p[c]) * cost;
    if (room.sign() <= 0) continue;
    const Rational spend = min(amount, room);
    p[c] += spend / cost;
    amount -= spend;
  }
  return amount;
}

}  // namespace

FractionalOutcome fractional_random_dictator(const Instance& instance) {
  const Rational weight = Rational(1) / as_rational(instance.n());
  FractionalOutcome p = FractionalOutcome::zeros(instance.m());
  for (std::size_t i = 0; i < instance.n(); ++i) {
    Rational left = instance.budget();
    for (std::size_t c : utility_per_cost_order(instance, i)) {
      const Rational& cost = instance.cost(c);
      if (cost <= left) {
        p[c] += weight;
        left -= cost;
        continue;
      }
      // First project that does not fit: the dictator's fractional remainder.
      if (left.sign() > 0) p[c] += weight * (left / cost);
      break;
    }
  }
  return p;
}

GcrTrace greedy_cohesive_rule(const Instance& instance, const Limits& limits) {
  if (!has_binary_utilities(instance)) throw SettingError("GCR requires binary utilities");
  limits.require_projects(instance.m(), "GCR");
  const auto approvals = approval_masks(instance);

  struct Candidate {
    std::size_t beta;
    Rational cost;
    std::vector<std::size_t> voters;
    std::vector<std::size_t> projects;
  };
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.beta != b.beta) return a.beta > b.beta;
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.voters.size() != b.voters.size()) return a.voters.size() > b.voters.size();
    return std::lexicographical_compare(a.projects.begin(), a.projects.end(),
                                        b.projects.begin(), b.projects.end());
  };

  GcrTrace trace;
  trace.outcome = Outcome(instance.m());
  std::vector<bool> active(instance.n(), true);
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (!trace.outcome.contains(c)) open.push_back(c);
    }
    std::optional<Candidate> best;
    detail::for_each_subset_by_size(
        open.size(), [&](const std::vector<std::size_t>& local, std::uint64_t) {
          std::vector<std::size_t> projects;
          std::uint64_t t = 0;
          Rational cost;
          for (std::size_t k : local) {
            projects.push_back(open[k]);
            t |= std::uint64_t{1} << open[k];
            cost += instance.cost(open[k]);
          }
          for (std::size_t beta = projects.size(); beta >= 1; --beta) {
            if (best && beta < best->beta) break;
            std::vector<std::size_t> voters;
            for (std::size_t i = 0; i < instance.n(); ++i) {
              if (active[i] && std::popcount(approvals[i] & t) >= static_cast<int>(beta)) {
                voters.push_back(i);
              }
            }
            if (!affordable_by(instance, voters.size(), cost)) continue;
            Candidate candidate{beta, cost, std::move(voters), projects};
            if (!best || better(candidate, *best)) best = std::move(candidate);
            break;  // smaller beta for the same T can only rank lower
          }
          return false;
        });
    if (!best) break;
    for (std::size_t c : best->projects) trace.outcome.insert(c);
    for (std::size_t i : best->voters) active[i] = false;
    trace.steps.push_back({best->beta, std::move(best->projects), std::move(best->voters)});
  }
  return trace;
}

std::optional<Rational> minimal_affordable_rho(const Instance& instance,
                                               std::span<const Rational> remaining,
                                               std::size_t project) {
  const Rational& cost = instance.cost(project);
  if (cost.is_zero()) return Rational(0);

  struct Supporter {
    Rational breakpoint;  // rho at which this voter's payment is capped
    Rational utility;
    Rational budget;
  };
  std::vector<Supporter> supporters;
  Rational slope;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    const Rational& u = instance.utility(i, project);
    if (u.sign() <= 0) continue;
    supporters.push_back({remaining[i] / u, u, remaining[i]});
    slope += u;
  }
  std::stable_sort(supporters.begin(), supporters.end(),
                   [](const Supporter& a, const Supporter& b) { return a.breakpoint < b.breakpoint; });

  // On the segment before supporters[k] is capped the total payment is
  // capped + rho * slope.
  Rational capped;
  for (const auto& s : supporters) {
    if (slope.sign() > 0) {
      const Rational rho = (cost - capped) / slope;
      if (rho <= s.breakpoint) return rho;
    }
    capped += s.budget;
    slope -= s.utility;
  }
  return std::nullopt;
}

MesResult method_of_equal_shares(const Instance& instance) {
  MesResult result;
  result.outcome = Outcome(instance.m());
  result.payments = PaymentMatrix::with_budgets(instance.n(), instance.m(), instance.share());
  for (;;) {
    std::optional<std::size_t> pick;
    Rational pick_rho;
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (result.outcome.contains(c)) continue;
      auto rho = minimal_affordable_rho(instance, result.payments.remaining, c);
      if (!rho) continue;
      if (!pick || *rho < pick_rho) {
        pick = c;
        pick_rho = *rho;
      }
    }
    if (!pick) break;
    const std::size_t c = *pick;
    Rational paid;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      const Rational& u = instance.utility(i, c);
      if (u.sign() <= 0) continue;
      const Rational pay = min(result.payments.remaining[i], u * pick_rho);
      result.payments.spend[i][c] = pay;
      result.payments.remaining[i] -= pay;
      paid += pay;
    }
    if (paid != instance.cost(c)) {
      throw InvariantError("MES payments for " + instance.project_id(c) + " sum to " +
                           paid.str() + " instead of its cost");
    }
    result.outcome.insert(c);
    result.selection_order.push_back(c);
    result.rho_log.push_back(pick_rho);
  }
  return result;
}

GroupLadder group_ladder(const Instance& instance, std::span<const std::size_t> cell) {
  if (cell.empty()) throw PreconditionError("empty unanimous group");
  GroupLadder ladder;
  ladder.voters.assign(cell.begin(), cell.end());
  ladder.approvals = by_ascending_cost(instance, instance.approval_set(cell.front()));
  ladder.allowance = as_rational(cell.size()) * instance.share();
  for (std::size_t c : ladder.approvals) {
    if (ladder.prefix_cost + instance.cost(c) > ladder.allowance) {
      ladder.next = c;
      break;
    }
    ladder.prefix.push_back(c);
    ladder.prefix_cost += instance.cost(c);
  }
  if (ladder.next) {
    ladder.delta = (ladder.allowance - ladder.prefix_cost) / instance.cost(*ladder.next);
  }
  return ladder;
}

BwGcrPlan bw_gcr_plan(const Instance& instance, const Limits& limits) {
  BwGcrPlan plan;
  plan.gcr = greedy_cohesive_rule(instance, limits);
  const Outcome& core = plan.gcr.outcome;
  plan.fractional = FractionalOutcome::indicator(core);
  plan.budgets.assign(instance.n(), Rational());

  std::vector<std::size_t> step_of(instance.n(), plan.gcr.steps.size());
  for (std::size_t j = 0; j < plan.gcr.steps.size(); ++j) {
    for (std::size_t i : plan.gcr.steps[j].voters) step_of[i] = j;
  }

  for (const auto& cell : unanimous_partition(instance).cells) {
    GroupLadder ladder = group_ladder(instance, cell);
    for (std::size_t i : cell) {
      if (step_of[i] != step_of[cell.front()]) {
        throw InvariantError("GCR split a unanimous group across steps");
      }
    }
    std::size_t represented = 0;
    for (std::size_t c : ladder.approvals) represented += core.contains(c) ? 1 : 0;
    if (represented < ladder.prefix.size()) {
      throw InvariantError("GCR outcome gives a unanimous group fewer than |G_S| projects");
    }
    const bool funded = represented == ladder.prefix.size();
    if (funded) {
      const Rational pooled = ladder.allowance - ladder.prefix_cost;
      const Rational each = pooled / as_rational(cell.size());
      for (std::size_t i : cell) plan.budgets[i] = each;
      pour(instance, plan.fractional, ladder.approvals, pooled);

      const std::size_t j = step_of[cell.front()];
      if (j < plan.gcr.steps.size()) {
        Rational step_cost;
        for (std::size_t c : plan.gcr.steps[j].projects) step_cost += instance.cost(c);
        if (step_cost > ladder.prefix_cost) {
          throw InvariantError("GCR step costs more than G_S of a funded group it deactivated");
        }
      }
    }
    plan.ladders.push_back(std::move(ladder));
    plan.funded.push_back(funded);
  }

  Rational handed_out;
  for (const auto& b : plan.budgets) handed_out += b;
  if (handed_out > instance.budget() - instance.cost(core)) {
    throw InvariantError("group budgets exceed the budget left after W_GCR");
  }

  const Rational deficit = instance.budget() - instance.cost(plan.fractional);
  if (deficit.sign() < 0) throw InvariantError("BW-GCR overspent before the fill step");
  std::vector<std::size_t> all(instance.m());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (pour(instance, plan.fractional, all, deficit).sign() != 0) {
    throw InvariantError("BW-GCR fill step could not reach the budget");
  }
  require_feasible(instance, plan.fractional);
  return plan;
}

BwGcrResult bw_gcr(const Instance& instance, Seed seed, const Limits& limits) {
  BwGcrResult result{bw_gcr_plan(instance, limits), {}};
  result.outcome = sample_outcome(instance, result.plan.fractional, seed);
  return result;
}

BwMesPlan bw_mes_plan(const Instance& instance) {
  if (!has_binary_utilities(instance) && !has_cost_utilities(instance)) {
    throw SettingError("BW-MES requires binary or cost utilities");
  }
  BwMesPlan plan;
  plan.mes = method_of_equal_shares(instance);
  plan.payments = plan.mes.payments;
  plan.favourite.assign(instance.n(), std::nullopt);
  const Outcome& core = plan.mes.outcome;
  auto& y = plan.payments;

  std::vector<Rational> funded(instance.m());
  for (std::size_t c = 0; c < instance.m(); ++c) funded[c] = y.project_total(c);

  for (std::size_t i = 0; i < instance.n(); ++i) {
    std::optional<std::size_t> kappa;
    for (std::size_t c : instance.approval_set(i)) {
      if (core.contains(c)) continue;
      if (!kappa || instance.cost(c) < instance.cost(*kappa)) kappa = c;
    }
    if (!kappa) continue;
    plan.favourite[i] = kappa;
    const std::size_t c = *kappa;
    y.spend[i][c] += y.remaining[i];
    funded[c] += y.remaining[i];
    y.remaining[i] = Rational();
    if (funded[c] > instance.cost(c)) {
      throw InvariantError("BW-MES leftover spending pushed " + instance.project_id(c) +
                           " past full funding (" + funded[c].str() + " > " +
                           instance.cost(c).str() + ")");
    }
  }

  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (std::size_t c = 0; c < instance.m() && y.remaining[i].sign() > 0; ++c) {
      const Rational room = instance.cost(c) - funded[c];
      if (room.sign() <= 0) continue;
      const Rational spend = min(room, y.remaining[i]);
      y.spend[i][c] += spend;
      funded[c] += spend;
      y.remaining[i] -= spend;
    }
    if (y.remaining[i].sign() != 0) {
      throw InvariantError("BW-MES could not place the leftover budget of voter " +
                           instance.voter_id(i));
    }
  }

  plan.fractional = FractionalOutcome::zeros(instance.m());
  for (std::size_t c = 0; c < instance.m(); ++c) {
    if (core.contains(c)) {
      plan.fractional[c] = 1;
    } else if (!instance.cost(c).is_zero()) {
      plan.fractional[c] = funded[c] / instance.cost(c);
    }
  }
  require_feasible(instance, plan.fractional);
  return plan;
}

BwMesResult bw_mes(const Instance& instance, Seed seed) {
  BwMesResult result{bw_mes_plan(instance), {}};
  result.outcome = sample_outcome(instance, result.plan.fractional, seed);
  return result;
}

}  // namespace pblottery
