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
#include <string>
#include <string_view>
#include <vector>

#include "pblottery/limits.hpp"
#include "pblottery/model.hpp"
#include "pblottery/simplex.hpp"

namespace pblottery {

enum class PredicateTag {
  all,
  within_budget,
  bb1,
  bfx,
  jr_binary,
  jr_general,
  ejr_binary,
  fjr_binary,
  ejrx_cost,
};

std::string_view to_string(PredicateTag tag);

// Conjunction of tags; no tags admits every outcome. Written as the tag names
// joined by '+', e.g. "within-budget+jr-general".
struct OutcomePredicate {
  std::vector<PredicateTag> conjuncts;

  OutcomePredicate() = default;
  OutcomePredicate(PredicateTag tag) : conjuncts{tag} {}  // NOLINT(google-explicit-constructor)
  explicit OutcomePredicate(std::vector<PredicateTag> tags) : conjuncts(std::move(tags)) {}

  // Throws ValidationError on an unknown tag name.
  static OutcomePredicate parse(std::string_view text);
  std::string name() const;

  bool admits(const Instance& instance, const Outcome& w, const Limits& limits = {}) const;
};

struct LinearConstraintSet {
  std::vector<LinearConstraint> rows;

  // Throws ValidationError unless every row has m coefficients.
  void validate(std::size_t m) const;
  bool satisfied_by(const FractionalOutcome& p) const;
};

struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<Lottery> certificate;
  std::string note;
};

// Every W admitted by the predicate, in mask order (bit c is project c).
std::vector<Outcome> enumerate_outcomes(const Instance& instance,
                                        const OutcomePredicate& predicate,
                                        const Limits& limits = {});

// Fixed-p mode: is p implementable by a lottery over admitted outcomes? Rows of
// `extra` are evaluated on p directly. Throws PreconditionError when p is not
// feasible.
FeasibilityVerdict lottery_feasible(const Instance& instance, const FractionalOutcome& p,
                                    const OutcomePredicate& predicate,
                                    const LinearConstraintSet& extra = {},
                                    const Limits& limits = {});

// Free-p mode: is there a lottery over admitted outcomes whose marginals p
// satisfy cost(p) = B and every row of `extra`?
FeasibilityVerdict jointly_feasible(const Instance& instance, const OutcomePredicate& predicate,
                                    const LinearConstraintSet& extra, const Limits& limits = {});

// u_i . p >= opt_i(B) / n for every voter.
LinearConstraintSet ifs_constraints(const Instance& instance);

// sum_c p_c * max_{i in S} u_ic >= (1/n) sum_{i in S} opt_i(B) for every
// nonempty group S, in mask order.
LinearConstraintSet gfs_constraints(const Instance& instance, const Limits& limits = {});

struct BfxFamily {
  Instance instance;
  FractionalOutcome p;
};

// Costs (eps, B/2 + eps, B/2 + eps), one voter approving all three, and
// p = (1, r, r) with r = (B - eps) / (B + 2 eps). Requires 0 < eps < B/2.
BfxFamily gen_bfx_family(const Rational& budget, const Rational& eps);

// n voters, a common project "g" of cost B/2 and personal projects
// "a<i>", "b<i>", "c<i>" of cost B/2 - eps. Requires n >= 6 and
// 0 < eps < B/2 - 2B/n.
Instance gen_gfs_jr_family(std::size_t n, const Rational& budget, const Rational& eps);

// Unit costs, B = 2, a common project "c" worth 1 to everyone and two
// projects "g<i>x", "g<i>y" worth H to voter i only. Requires n >= 4, H > n.
Instance gen_ifs_jr_family(std::size_t n, const Rational& h);

}  // namespace pblottery
