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

#include "pblottery/expost.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "detail/subsets.hpp"
#include "pblottery/errors.hpp"

namespace pblottery {

std::string_view to_string(ExPostAxiom axiom) {
  switch (axiom) {
    case ExPostAxiom::jr_binary:
      return "jr";
    case ExPostAxiom::ejr_binary:
      return "ejr";
    case ExPostAxiom::fjr_binary:
      return "fjr";
    case ExPostAxiom::jr_general:
      return "jr-general";
    case ExPostAxiom::ejrx_cost:
      return "ejrx";
  }
  return "jr";
}

bool affordable_by(const Instance& instance, std::size_t count, const Rational& cost) {
  if (count == 0) return false;
  return Rational(static_cast<std::int64_t>(count)) * instance.budget() >=
         Rational(static_cast<std::int64_t>(instance.n())) * cost;
}

namespace {

void require_binary(const Instance& instance, std::string_view what) {
  if (!has_binary_utilities(instance)) {
    throw SettingError(std::string(what) + " requires binary utilities");
  }
}

std::vector<std::uint64_t> approval_masks(const Instance& instance) {
  std::vector<std::uint64_t> masks(instance.n(), 0);
  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (instance.approves(i, c)) masks[i] |= std::uint64_t{1} << c;
    }
  }
  return masks;
}

Rational subset_cost(const Instance& instance, const std::vector<std::size_t>& members) {
  Rational total;
  for (std::size_t c : members) total += instance.cost(c);
  return total;
}

ExPostReport violated(ExPostAxiom axiom, CohesivenessWitness witness) {
  return ExPostReport{axiom, false, std::move(witness)};
}

}  // namespace

ExPostReport check_jr_binary(const Instance& instance, const Outcome& w) {
  require_binary(instance, "JR check");
  std::vector<bool> unrepresented(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) {
    unrepresented[i] = utility(instance, i, w).is_zero();
  }
  for (std::size_t j = 0; j < instance.m(); ++j) {
    std::vector<std::size_t> deprived;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      if (unrepresented[i] && instance.approves(i, j)) deprived.push_back(i);
    }
    if (affordable_by(instance, deprived.size(), instance.cost(j))) {
      return violated(ExPostAxiom::jr_binary,
                      {{j}, std::nullopt, std::nullopt, std::move(deprived),
                       "approvers of the project with no approved project in W"});
    }
  }
  return {ExPostAxiom::jr_binary, true, std::nullopt};
}

ExPostReport check_ejr_binary(const Instance& instance, const Outcome& w, const Limits& limits) {
  require_binary(instance, "EJR check");
  limits.require_projects(instance.m(), "EJR check");
  const auto approvals = approval_masks(instance);
  const std::uint64_t chosen = w.mask();
  std::optional<CohesivenessWitness> witness;
  detail::for_each_subset_by_size(
      instance.m(), [&](const std::vector<std::size_t>& members, std::uint64_t t) {
        const auto size = static_cast<int>(members.size());
        std::vector<std::size_t> deprived;
        for (std::size_t i = 0; i < instance.n(); ++i) {
          if ((approvals[i] & t) == t && std::popcount(approvals[i] & chosen) < size) {
            deprived.push_back(i);
          }
        }
        if (!affordable_by(instance, deprived.size(), subset_cost(instance, members))) {
          return false;
        }
        witness = CohesivenessWitness{members, std::nullopt, std::nullopt, std::move(deprived),
                                      "voters approving all of T with fewer than |T| "
                                      "approved projects in W"};
        return true;
      });
  if (witness) return violated(ExPostAxiom::ejr_binary, std::move(*witness));
  return {ExPostAxiom::ejr_binary, true, std::nullopt};
}

ExPostReport check_fjr_binary(const Instance& instance, const Outcome& w, const Limits& limits) {
  require_binary(instance, "FJR check");
  limits.require_projects(instance.m(), "FJR check");
  const auto approvals = approval_masks(instance);
  const std::uint64_t chosen = w.mask();
  std::optional<CohesivenessWitness> witness;
  detail::for_each_subset_by_size(
      instance.m(), [&](const std::vector<std::size_t>& members, std::uint64_t t) {
        const Rational cost = subset_cost(instance, members);
        for (std::size_t beta = 1; beta <= members.size(); ++beta) {
          const auto b = static_cast<int>(beta);
          std::vector<std::size_t> deprived;
          for (std::size_t i = 0; i < instance.n(); ++i) {
            if (std::popcount(approvals[i] & t) >= b && std::popcount(approvals[i] & chosen) < b) {
              deprived.push_back(i);
            }
          }
          if (affordable_by(instance, deprived.size(), cost)) {
            witness = CohesivenessWitness{members, beta, std::nullopt, std::move(deprived),
                                          "voters approving at least beta projects of T with "
                                          "fewer than beta approved projects in W"};
            return true;
          }
        }
        return false;
      });
  if (witness) return violated(ExPostAxiom::fjr_binary, std::move(*witness));
  return {ExPostAxiom::fjr_binary, true, std::nullopt};
}

ExPostReport check_jr_general(const Instance& instance, const Outcome& w) {
  std::vector<Rational> received(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) received[i] = utility(instance, i, w);
  for (std::size_t j = 0; j < instance.m(); ++j) {
    std::set<Rational> thresholds;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      const Rational& u = instance.utility(i, j);
      if (u.sign() > 0) thresholds.insert(min(Rational(1), u));
    }
    for (const Rational& alpha : thresholds) {
      std::vector<std::size_t> deprived;
      for (std::size_t i = 0; i < instance.n(); ++i) {
        if (instance.utility(i, j) >= alpha && received[i] < alpha) deprived.push_back(i);
      }
      if (affordable_by(instance, deprived.size(), instance.cost(j))) {
        return violated(ExPostAxiom::jr_general,
                        {{j}, std::nullopt, alpha, std::move(deprived),
                         "voters valuing the project at least alpha who receive less than "
                         "alpha from W"});
      }
    }
  }
  return {ExPostAxiom::jr_general, true, std::nullopt};
}

ExPostReport check_ejrx_cost(const Instance& instance, const Outcome& w, const Limits& limits) {
  if (!has_cost_utilities(instance)) throw SettingError("EJR-x check requires cost utilities");
  limits.require_projects(instance.m(), "EJR-x check");
  const auto approvals = approval_masks(instance);
  std::vector<Rational> received(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) received[i] = utility(instance, i, w);
  std::optional<CohesivenessWitness> witness;
  detail::for_each_subset_by_size(
      instance.m(), [&](const std::vector<std::size_t>& members, std::uint64_t t) {
        std::vector<std::size_t> missing;
        for (std::size_t c : members) {
          if (!w.contains(c)) missing.push_back(c);
        }
        if (missing.empty()) return false;
        std::vector<std::size_t> deprived;
        for (std::size_t i = 0; i < instance.n(); ++i) {
          if ((approvals[i] & t) != t) continue;
          Rational of_t;
          for (std::size_t c : members) of_t += instance.utility(i, c);
          Rational smallest_gain = instance.utility(i, missing.front());
          for (std::size_t c : missing) smallest_gain = min(smallest_gain, instance.utility(i, c));
          if (received[i] + smallest_gain <= of_t) deprived.push_back(i);
        }
        if (!affordable_by(instance, deprived.size(), subset_cost(instance, members))) {
          return false;
        }
        witness = CohesivenessWitness{members, std::nullopt, std::nullopt, std::move(deprived),
                                      "voters approving T for whom adding some missing project "
                                      "of T does not beat u(T)"};
        return true;
      });
  if (witness) return violated(ExPostAxiom::ejrx_cost, std::move(*witness));
  return {ExPostAxiom::ejrx_cost, true, std::nullopt};
}

}  // namespace pblottery
