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

#include "pblottery/io.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include "pblottery/errors.hpp"

namespace pblottery {

namespace {

const Json& member(const Json& object, const char* key, const std::string& field) {
  if (!object.is_object()) throw ValidationError(field, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ValidationError(field.empty() ? key : field + "." + key, "missing");
  }
  return *it;
}

std::string child(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

Rational rational_at(const Json& value, const std::string& field) {
  if (!value.is_string()) throw ValidationError(field, "expected a rational string");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    throw ValidationError(field, "'" + value.get<std::string>() + "' is not a rational: " +
                                     e.what());
  }
}

std::string string_at(const Json& value, const std::string& field) {
  if (!value.is_string()) throw ValidationError(field, "expected a string");
  return value.get<std::string>();
}

std::size_t project_at(const Instance& instance, const Json& value, const std::string& field) {
  const std::string id = string_at(value, field);
  const auto index = instance.project_index(id);
  if (!index) throw ValidationError(field, "unknown project '" + id + "'");
  return *index;
}

Json parse_json(std::string_view document) {
  try {
    return Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ValidationError("document", e.what());
  }
}

Json rational_or_null(const std::optional<Rational>& value) {
  return value ? Json(value->str()) : Json(nullptr);
}

}  // namespace

std::string canonical(const Json& document) { return document.dump(2) + "\n"; }

Instance parse_instance(std::string_view document) {
  return instance_from_json(parse_json(document));
}

Instance instance_from_json(const Json& document) {
  const Rational budget = rational_at(member(document, "budget", ""), "budget");
  const Json& projects = member(document, "projects", "");
  if (!projects.is_array()) throw ValidationError("projects", "expected an array");
  std::vector<ProjectSpec> specs;
  std::map<std::string, std::size_t> position;
  for (std::size_t k = 0; k < projects.size(); ++k) {
    const std::string field = "projects[" + std::to_string(k) + "]";
    ProjectSpec spec{string_at(member(projects[k], "id", field), child(field, "id")),
                     rational_at(member(projects[k], "cost", field), child(field, "cost"))};
    position.emplace(spec.id, k);
    specs.push_back(std::move(spec));
  }
  const Json& voters = member(document, "voters", "");
  if (!voters.is_array()) throw ValidationError("voters", "expected an array");
  std::vector<VoterSpec> voter_specs;
  for (std::size_t i = 0; i < voters.size(); ++i) {
    const std::string field = "voters[" + std::to_string(i) + "]";
    VoterSpec voter{string_at(member(voters[i], "id", field), child(field, "id")),
                    std::vector<Rational>(specs.size())};
    const Json& utilities = member(voters[i], "utilities", field);
    if (!utilities.is_object()) {
      throw ValidationError(child(field, "utilities"), "expected an object");
    }
    for (const auto& [id, value] : utilities.items()) {
      const std::string at = child(field, "utilities." + id);
      const auto it = position.find(id);
      if (it == position.end()) throw ValidationError(at, "unknown project '" + id + "'");
      voter.utilities[it->second] = rational_at(value, at);
    }
    voter_specs.push_back(std::move(voter));
  }
  return Instance(budget, std::move(specs), std::move(voter_specs));
}

Json instance_to_json(const Instance& instance) {
  Json projects = Json::array();
  for (std::size_t c = 0; c < instance.m(); ++c) {
    projects.push_back({{"id", instance.project_id(c)}, {"cost", instance.cost(c).str()}});
  }
  Json voters = Json::array();
  for (std::size_t i = 0; i < instance.n(); ++i) {
    Json utilities = Json::object();
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (!instance.utility(i, c).is_zero()) {
        utilities[instance.project_id(c)] = instance.utility(i, c).str();
      }
    }
    voters.push_back({{"id", instance.voter_id(i)}, {"utilities", std::move(utilities)}});
  }
  return {{"budget", instance.budget().str()},
          {"projects", std::move(projects)},
          {"voters", std::move(voters)}};
}

std::string serialize_instance(const Instance& instance) {
  return canonical(instance_to_json(instance));
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_instance(instance)) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

FractionalOutcome fractional_from_json(const Instance& instance, const Json& document) {
  const Json& values = member(document, "fractional", "");
  if (!values.is_object()) throw ValidationError("fractional", "expected an object");
  FractionalOutcome p = FractionalOutcome::zeros(instance.m());
  for (const auto& [id, value] : values.items()) {
    const std::string field = "fractional." + id;
    const auto c = instance.project_index(id);
    if (!c) throw ValidationError(field, "unknown project '" + id + "'");
    p[*c] = rational_at(value, field);
    if (p[*c].sign() < 0 || p[*c] > 1) throw ValidationError(field, "outside [0, 1]");
  }
  return p;
}

Json fractional_to_json(const Instance& instance, const FractionalOutcome& p) {
  return {{"fractional", project_map(instance, p.fractions)}};
}

Outcome outcome_from_json(const Instance& instance, const Json& document) {
  const Json& ids = member(document, "outcome", "");
  if (!ids.is_array()) throw ValidationError("outcome", "expected an array");
  Outcome w(instance.m());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const std::string field = "outcome[" + std::to_string(k) + "]";
    const std::size_t c = project_at(instance, ids[k], field);
    if (w.contains(c)) throw ValidationError(field, "duplicate project");
    w.insert(c);
  }
  return w;
}

Json outcome_to_json(const Instance& instance, const Outcome& w) {
  const auto members = w.members();
  return {{"outcome", project_list(instance, members)}};
}

Lottery lottery_from_json(const Instance& instance, const Json& document) {
  const Json& entries = member(document, "lottery", "");
  if (!entries.is_array()) throw ValidationError("lottery", "expected an array");
  std::vector<LotteryEntry> out;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string field = "lottery[" + std::to_string(k) + "]";
    const Rational weight = rational_at(member(entries[k], "weight", field), field + ".weight");
    member(entries[k], "outcome", field);
    out.push_back({weight, outcome_from_json(instance, entries[k])});
  }
  return Lottery(std::move(out));
}

Json lottery_to_json(const Instance& instance, const Lottery& lottery) {
  Json entries = Json::array();
  for (const auto& e : lottery.entries()) {
    const auto members = e.outcome.members();
    entries.push_back({{"weight", e.weight.str()}, {"outcome", project_list(instance, members)}});
  }
  return {{"lottery", std::move(entries)}};
}

LinearConstraintSet constraints_from_json(const Instance& instance, const Json& document) {
  const Json& rows = member(document, "constraints", "");
  if (!rows.is_array()) throw ValidationError("constraints", "expected an array");
  LinearConstraintSet set;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string field = "constraints[" + std::to_string(k) + "]";
    LinearConstraint row;
    row.coefficients.assign(instance.m(), Rational());
    const Json& coefficients = member(rows[k], "coefficients", field);
    if (!coefficients.is_object()) {
      throw ValidationError(field + ".coefficients", "expected an object");
    }
    for (const auto& [id, value] : coefficients.items()) {
      const std::string at = field + ".coefficients." + id;
      const auto c = instance.project_index(id);
      if (!c) throw ValidationError(at, "unknown project '" + id + "'");
      row.coefficients[*c] = rational_at(value, at);
    }
    const std::string relation = string_at(member(rows[k], "relation", field), field + ".relation");
    if (relation == ">=") {
      row.relation = Relation::ge;
    } else if (relation == "<=") {
      row.relation = Relation::le;
    } else if (relation == "=") {
      row.relation = Relation::eq;
    } else {
      throw ValidationError(field + ".relation", "expected one of >=, =, <=");
    }
    row.bound = rational_at(member(rows[k], "bound", field), field + ".bound");
    set.rows.push_back(std::move(row));
  }
  return set;
}

Json constraints_to_json(const Instance& instance, const LinearConstraintSet& set) {
  Json rows = Json::array();
  for (const auto& row : set.rows) {
    Json coefficients = Json::object();
    for (std::size_t c = 0; c < instance.m(); ++c) {
      if (!row.coefficients[c].is_zero()) {
        coefficients[instance.project_id(c)] = row.coefficients[c].str();
      }
    }
    rows.push_back({{"coefficients", std::move(coefficients)},
                    {"relation", std::string(to_string(row.relation))},
                    {"bound", row.bound.str()}});
  }
  return {{"constraints", std::move(rows)}};
}

Json project_list(const Instance& instance, std::span<const std::size_t> projects) {
  Json out = Json::array();
  for (std::size_t c : projects) out.push_back(instance.project_id(c));
  return out;
}

Json voter_list(const Instance& instance, std::span<const std::size_t> voters) {
  Json out = Json::array();
  for (std::size_t i : voters) out.push_back(instance.voter_id(i));
  return out;
}

Json project_map(const Instance& instance, std::span<const Rational> values) {
  Json out = Json::object();
  for (std::size_t c = 0; c < values.size(); ++c) out[instance.project_id(c)] = values[c].str();
  return out;
}

Json to_json(const Instance& instance, const ExAnteReport& report) {
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"voters", voter_list(instance, w.voters)},
                         {"lhs", w.lhs.str()},
                         {"bound", w.bound.str()}});
  }
  return {{"axiom", std::string(to_string(report.axiom))},
          {"holds", report.holds},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const Instance& instance, const ExPostReport& report) {
  Json witness = nullptr;
  if (report.witness) {
    const auto& w = *report.witness;
    witness = {{"projects", project_list(instance, w.projects)},
               {"voters", voter_list(instance, w.voters)},
               {"beta", w.beta ? Json(*w.beta) : Json(nullptr)},
               {"alpha", rational_or_null(w.alpha)},
               {"note", w.note}};
  }
  return {{"axiom", std::string(to_string(report.axiom))},
          {"holds", report.holds},
          {"witness", std::move(witness)}};
}

Json to_json(const Instance& instance, const RoundingTrace& trace) {
  Json rounds = Json::array();
  for (const auto& step : trace.rounds) {
    rounds.push_back({{"round", step.round},
                      {"projects", project_list(instance, step.indices)},
                      {"alpha", step.alpha.str()},
                      {"beta", step.beta.str()},
                      {"branch", step.branch == Branch::up ? "up" : "down"},
                      {"after", project_map(instance, step.after)}});
  }
  const auto result = trace.result.members();
  return {{"seed", trace.seed.value},
          {"initial", project_map(instance, trace.initial)},
          {"rounds", std::move(rounds)},
          {"result", project_list(instance, result)}};
}

Json to_json(const Instance& instance, const PaymentMatrix& payments) {
  Json spend = Json::object();
  Json remaining = Json::object();
  for (std::size_t i = 0; i < payments.spend.size(); ++i) {
    Json row = Json::object();
    for (std::size_t c = 0; c < payments.spend[i].size(); ++c) {
      if (!payments.spend[i][c].is_zero()) row[instance.project_id(c)] = payments.spend[i][c].str();
    }
    spend[instance.voter_id(i)] = std::move(row);
    remaining[instance.voter_id(i)] = payments.remaining[i].str();
  }
  return {{"spend", std::move(spend)}, {"remaining", std::move(remaining)}};
}

Json to_json(const Instance& instance, const GcrTrace& trace) {
  Json steps = Json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"beta", step.beta},
                     {"projects", project_list(instance, step.projects)},
                     {"voters", voter_list(instance, step.voters)}});
  }
  const auto outcome = trace.outcome.members();
  return {{"steps", std::move(steps)}, {"outcome", project_list(instance, outcome)}};
}

Json to_json(const Instance& instance, const MesResult& result) {
  Json selection = Json::array();
  for (std::size_t k = 0; k < result.selection_order.size(); ++k) {
    selection.push_back({{"project", instance.project_id(result.selection_order[k])},
                         {"rho", result.rho_log[k].str()}});
  }
  const auto outcome = result.outcome.members();
  return {{"outcome", project_list(instance, outcome)},
          {"selection", std::move(selection)},
          {"payments", to_json(instance, result.payments)}};
}

Json to_json(const Instance& instance, const BwGcrPlan& plan) {
  Json ladders = Json::array();
  for (std::size_t z = 0; z < plan.ladders.size(); ++z) {
    const auto& ladder = plan.ladders[z];
    ladders.push_back({{"voters", voter_list(instance, ladder.voters)},
                       {"prefix", project_list(instance, ladder.prefix)},
                       {"next", ladder.next ? Json(instance.project_id(*ladder.next))
                                            : Json(nullptr)},
                       {"delta", ladder.delta.str()},
                       {"funded", static_cast<bool>(plan.funded[z])}});
  }
  Json budgets = Json::object();
  for (std::size_t i = 0; i < plan.budgets.size(); ++i) {
    budgets[instance.voter_id(i)] = plan.budgets[i].str();
  }
  return {{"gcr", to_json(instance, plan.gcr)},
          {"ladders", std::move(ladders)},
          {"budgets", std::move(budgets)},
          {"fractional", project_map(instance, plan.fractional.fractions)}};
}

Json to_json(const Instance& instance, const BwMesPlan& plan) {
  Json favourite = Json::object();
  for (std::size_t i = 0; i < plan.favourite.size(); ++i) {
    if (plan.favourite[i]) favourite[instance.voter_id(i)] = instance.project_id(*plan.favourite[i]);
  }
  return {{"mes", to_json(instance, plan.mes)},
          {"favourite", std::move(favourite)},
          {"payments", to_json(instance, plan.payments)},
          {"fractional", project_map(instance, plan.fractional.fractions)}};
}

Json to_json(const Instance& instance, const FeasibilityVerdict& verdict) {
  Json out = {{"feasible", verdict.feasible}, {"note", verdict.note}};
  out["certificate"] =
      verdict.certificate ? lottery_to_json(instance, *verdict.certificate)["lottery"] : Json(nullptr);
  return out;
}

}  // namespace pblottery
