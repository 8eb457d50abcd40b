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

#include <doctest.h>

#include <algorithm>
#include <functional>

#include "generators.hpp"
#include "pblottery/errors.hpp"
#include "pblottery/io.hpp"
#include "pblottery/model.hpp"
#include "pblottery/rounding.hpp"

using namespace pblottery;

namespace {

Rational r(const char* text) { return Rational::parse(text); }

Instance line_instance(std::vector<Rational> costs, Rational budget,
                       std::vector<std::vector<Rational>> utilities) {
  std::vector<ProjectSpec> projects;
  for (std::size_t c = 0; c < costs.size(); ++c) {
    projects.push_back({std::string(1, static_cast<char>('a' + c)), costs[c]});
  }
  std::vector<VoterSpec> voters;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    voters.push_back({"v" + std::to_string(i + 1), utilities[i]});
  }
  return Instance(std::move(budget), std::move(projects), std::move(voters));
}

std::string field_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const ValidationError& e) {
    return std::string(e.field()) + " | " + e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("parse_instance maps fields") {
  const Instance instance = parse_instance(R"({
    "budget": "1",
    "projects": [{"id": "c", "cost": "3/5"}, {"id": "a", "cost": "1/10"}, {"id": "b", "cost": "3/5"}],
    "voters": [{"id": "v1", "utilities": {"a": "1", "b": "1", "c": "1"}}]
  })");
  CHECK(instance.m() == 3);
  CHECK(instance.n() == 1);
  CHECK(classify(instance) == Setting::binary_utilities);
  CHECK(instance.project_id(0) == "a");
  CHECK(instance.cost(0) == r("1/10"));
  CHECK(instance.total_cost() == r("13/10"));
  CHECK(instance.share() == 1);
}

TEST_CASE("parse_instance rejects invariant violations by field") {
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "2"}],
                             "voters": [{"id": "v", "utilities": {}}]})");
        }).find("cost exceeds budget") != std::string::npos);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "1/2"}],
                             "voters": [{"id": "v", "utilities": {}}]})");
        }).find("total cost below budget") != std::string::npos);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "1"}],
                             "voters": [{"id": "v", "utilities": {"a": "-1"}}]})");
        }).find("negative") != std::string::npos);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "1"}],
                             "voters": [{"id": "v", "utilities": {"z": "1"}}]})");
        }).rfind("voters[0].utilities.z", 0) == 0);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "0.5"}],
                             "voters": []})");
        }).rfind("projects[0].cost", 0) == 0);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "1"}],
                             "voters": []})");
        }).find("at least one voter") != std::string::npos);
  CHECK(field_of([] {
          parse_instance(R"({"budget": "1", "projects": [{"id": "a", "cost": "1"},
                             {"id": "a", "cost": "1"}], "voters": [{"id": "v", "utilities": {}}]})");
        }).find("duplicate") != std::string::npos);
  CHECK(field_of([] { parse_instance("{not json"); }).rfind("document", 0) == 0);
  CHECK(field_of([] { parse_instance(R"({"projects": []})"); }) .rfind("budget", 0) == 0);
}

TEST_CASE("classify") {
  CHECK(classify(line_instance({r("1/2"), r("1/3")}, r("1/2"), {{1, 0}})) ==
        Setting::binary_utilities);
  CHECK(classify(line_instance({r("1/2"), r("1/3")}, r("1/2"), {{r("1/2"), 0}, {0, r("1/3")}})) ==
        Setting::cost_utilities);
  CHECK(classify(line_instance({1, 1}, 1, {{5, 0}})) == Setting::unit_cost);
  CHECK(classify(line_instance({1, 1}, 1, {{1, 0}})) == Setting::committee);
  CHECK(classify(line_instance({1, 2}, 2, {{r("1/2"), 3}})) == Setting::general);
}

TEST_CASE("utility is additive") {
  const Instance instance = line_instance({1, 1, 1}, 1, {{2, 0, 1}});
  CHECK(utility(instance, 0, Outcome(3, {0, 2})) == 3);
  CHECK(utility(instance, 0, FractionalOutcome{{r("1/2"), 1, r("1/2")}}) == r("3/2"));
  CHECK(utility(instance, 0, Outcome(3)) == 0);
}

TEST_CASE("implements") {
  const Lottery point({{1, Outcome(2, {0})}});
  CHECK(implements(point, FractionalOutcome{{1, 0}}));
  const Lottery half({{r("1/2"), Outcome(2, {0})}, {r("1/2"), Outcome(2, {1})}});
  CHECK(implements(half, FractionalOutcome{{r("1/2"), r("1/2")}}));
  CHECK_FALSE(implements(half, FractionalOutcome{{1, 0}}));
}

TEST_CASE("lottery validation") {
  CHECK_THROWS_AS(Lottery({{r("1/2"), Outcome(2, {0})}}), ValidationError);
  CHECK_THROWS_AS(Lottery({{r("1/2"), Outcome(2, {0})}, {r("1/2"), Outcome(2, {0})}}),
                  ValidationError);
  CHECK_THROWS_AS(Lottery({{0, Outcome(2, {0})}, {1, Outcome(2, {1})}}), ValidationError);
  CHECK_THROWS_AS(Lottery({{1, Outcome(2, {0})}, {0, Outcome(3, {1})}}), ValidationError);
  CHECK_THROWS_AS(Lottery(std::vector<LotteryEntry>{}), ValidationError);
  const Lottery merged =
      Lottery::merged({{r("1/4"), Outcome(2, {0})}, {r("1/4"), Outcome(2, {0})},
                       {r("1/2"), Outcome(2, {1})}, {0, Outcome(2)}});
  CHECK(merged.entries().size() == 2);
}

TEST_CASE("feasibility is equality") {
  const Instance instance = line_instance({1, 1}, 1, {{1, 1}});
  CHECK(is_feasible(instance, FractionalOutcome{{r("1/2"), r("1/2")}}));
  CHECK_FALSE(is_feasible(instance, FractionalOutcome{{r("1/2"), 0}}));
  CHECK_FALSE(is_feasible(instance, FractionalOutcome{{r("3/2"), r("-1/2")}}));
  CHECK_THROWS_AS(require_feasible(instance, FractionalOutcome{{r("1/2"), 0}}),
                  PreconditionError);
}

TEST_CASE("property: lotteries implementing feasible p spend B in expectation") {
  pbtest::Gen gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = pbtest::random_instance(gen, {});
    const FractionalOutcome p = pbtest::random_feasible(gen, instance);
    std::vector<LotteryEntry> draws;
    const Rational w = Rational(1, 16);
    for (std::uint64_t k = 0; k < 16; ++k) {
      draws.push_back({w, sample_outcome(instance, p, Seed{k})});
    }
    const Lottery lottery = Lottery::merged(draws);
    Rational expected_cost;
    for (const auto& e : lottery.entries()) expected_cost += e.weight * instance.cost(e.outcome);
    CHECK(expected_cost == instance.cost(lottery.marginals()));
    CHECK(implements(lottery, lottery.marginals()));

    // Permuting the support keeps the relation.
    auto entries = lottery.entries();
    gen.shuffle(entries);
    CHECK(implements(Lottery(entries), lottery.marginals()));
  }
}

TEST_CASE("property: serialization round trip") {
  pbtest::Gen gen(202);
  for (int trial = 0; trial < 200; ++trial) {
    pbtest::Shape shape;
    shape.utilities = static_cast<pbtest::Utilities>(trial % 3);
    shape.zero_costs = true;
    const Instance instance = pbtest::random_instance(gen, shape);
    const std::string text = serialize_instance(instance);
    const Instance back = parse_instance(text);
    CHECK(back == instance);
    CHECK(serialize_instance(back) == text);
  }
}

}  // TEST_SUITE
