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

#include "pblottery/rounding.hpp"

#include <optional>
#include <random>
#include <string>

#include "pblottery/errors.hpp"

namespace pblottery {

namespace {

bool fractional(const Rational& q) { return q.sign() > 0 && q < 1; }

void require_unit_box(const Instance& instance, const FractionalOutcome& p) {
  if (p.size() != instance.m()) throw PreconditionError("fractional outcome has wrong length");
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].sign() < 0 || p[c] > 1) {
      throw PreconditionError("fraction of project " + instance.project_id(c) + " outside [0, 1]");
    }
  }
}

// Runs the rounding rounds on q in place and returns the integral result.
// When `trace` is non-null every round is appended to it.
Outcome round_in_place(std::span<const Rational> costs, std::vector<Rational> q, Seed seed,
                       RoundingTrace* trace) {
  std::mt19937_64 rng(seed.value);
  const std::size_t m = q.size();
  std::size_t round = 0;
  for (;;) {
    std::optional<std::size_t> first;
    std::optional<std::size_t> second;
    std::optional<std::size_t> free_index;
    for (std::size_t c = 0; c < m; ++c) {
      if (!fractional(q[c])) continue;
      if (costs[c].is_zero()) {
        free_index = c;
        break;
      }
      if (!first) {
        first = c;
      } else if (!second) {
        second = c;
      }
    }
    if (!first && !free_index) break;

    RoundingStep step;
    step.round = round++;
    if (free_index || !second) {
      const std::size_t l = free_index ? *free_index : *first;
      step.indices = {l};
      step.alpha = 1 - q[l];
      step.beta = q[l];
      const bool up = q[l].exceeds_dyadic(rng());
      step.branch = up ? Branch::up : Branch::down;
      q[l] = up ? Rational(1) : Rational(0);
    } else {
      const std::size_t i = *first;
      const std::size_t j = *second;
      const Rational ratio = costs[i] / costs[j];
      step.indices = {i, j};
      step.alpha = min(1 - q[i], q[j] / ratio);
      step.beta = min(q[i], (1 - q[j]) / ratio);
      if (step.alpha.sign() <= 0 || step.beta.sign() <= 0) {
        throw InvariantError("rounding step with non-positive alpha or beta");
      }
      const Rational threshold = step.beta / (step.alpha + step.beta);
      const bool up = threshold.exceeds_dyadic(rng());
      step.branch = up ? Branch::up : Branch::down;
      if (up) {
        q[i] += step.alpha;
        q[j] -= ratio * step.alpha;
      } else {
        q[i] -= step.beta;
        q[j] += ratio * step.beta;
      }
    }
    if (trace) {
      step.after = q;
      trace->rounds.push_back(std::move(step));
    }
  }

  Outcome w(m);
  for (std::size_t c = 0; c < m; ++c) {
    if (q[c] == 1) w.insert(c);
  }
  return w;
}

}  // namespace

Seed derive_seed(Seed base, std::uint64_t index) {
  std::uint64_t z = base.value + index * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Seed{z ^ (z >> 31)};
}

RoundingResult dependent_round(const Instance& instance, const FractionalOutcome& p, Seed seed) {
  require_feasible(instance, p);
  RoundingResult result;
  result.trace.seed = seed;
  result.trace.initial = p.fractions;
  result.outcome = round_in_place(instance.costs(), p.fractions, seed, &result.trace);
  result.trace.result = result.outcome;
  return result;
}

Outcome sample_outcome(const Instance& instance, const FractionalOutcome& p, Seed seed) {
  require_feasible(instance, p);
  return round_in_place(instance.costs(), p.fractions, seed, nullptr);
}

bool is_bb1(const Instance& instance, const Outcome& w) {
  const Rational& budget = instance.budget();
  const Rational spent = instance.cost(w);
  std::optional<Rational> max_outside;
  std::optional<Rational> max_inside;
  for (std::size_t c = 0; c < instance.m(); ++c) {
    auto& slot = w.contains(c) ? max_inside : max_outside;
    if (!slot || *slot < instance.cost(c)) slot = instance.cost(c);
  }
  if (spent <= budget && max_outside && spent + *max_outside >= budget) return true;
  if (spent >= budget && max_inside && spent - *max_inside <= budget) return true;
  return false;
}

bool is_bfx(const Instance& instance, const Outcome& w) {
  std::optional<Rational> min_inside;
  for (std::size_t c : w.members()) {
    if (!min_inside || instance.cost(c) < *min_inside) min_inside = instance.cost(c);
  }
  if (!min_inside) return true;
  return instance.cost(w) - *min_inside <= instance.budget();
}

Rational hard_cap_budget(const Instance& instance) {
  return instance.budget() - instance.max_cost();
}

Outcome round_with_hard_cap(const Instance& instance, const FractionalOutcome& p, Seed seed) {
  require_unit_box(instance, p);
  const Rational reduced = hard_cap_budget(instance);
  const Rational spend = instance.cost(p);
  if (spend != reduced) {
    throw PreconditionError("hard-cap rounding needs cost(p) = " + reduced.str() + ", got " +
                            spend.str());
  }
  Outcome w = round_in_place(instance.costs(), p.fractions, seed, nullptr);
  if (instance.cost(w) > instance.budget()) {
    throw InvariantError("hard-cap rounding produced an outcome above the budget");
  }
  return w;
}

}  // namespace pblottery
