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

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pblottery/exante.hpp"
#include "pblottery/expost.hpp"
#include "pblottery/model.hpp"
#include "pblottery/oracle.hpp"
#include "pblottery/rounding.hpp"
#include "pblottery/rules.hpp"

namespace pblottery {

using Json = nlohmann::json;

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& document);

// Parses a JSON instance document. Throws ValidationError naming the
// offending field on malformed input or a violated instance invariant.
Instance parse_instance(std::string_view document);
Instance instance_from_json(const Json& document);
Json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& instance);

// {"fractional": {project id: rational}}; omitted projects are 0.
FractionalOutcome fractional_from_json(const Instance& instance, const Json& document);
Json fractional_to_json(const Instance& instance, const FractionalOutcome& p);

// {"outcome": [project ids]}
Outcome outcome_from_json(const Instance& instance, const Json& document);
Json outcome_to_json(const Instance& instance, const Outcome& w);

// {"lottery": [{"weight": rational, "outcome": [project ids]}]}
Lottery lottery_from_json(const Instance& instance, const Json& document);
Json lottery_to_json(const Instance& instance, const Lottery& lottery);

// {"constraints": [{"coefficients": {project id: rational}, "relation":
// ">=" | "=" | "<=", "bound": rational}]}
LinearConstraintSet constraints_from_json(const Instance& instance, const Json& document);
Json constraints_to_json(const Instance& instance, const LinearConstraintSet& set);

// Bare encodings used inside the documents above.
Json project_list(const Instance& instance, std::span<const std::size_t> projects);
Json voter_list(const Instance& instance, std::span<const std::size_t> voters);
Json project_map(const Instance& instance, std::span<const Rational> values);

Json to_json(const Instance& instance, const ExAnteReport& report);
Json to_json(const Instance& instance, const ExPostReport& report);
Json to_json(const Instance& instance, const RoundingTrace& trace);
Json to_json(const Instance& instance, const PaymentMatrix& payments);
Json to_json(const Instance& instance, const GcrTrace& trace);
Json to_json(const Instance& instance, const MesResult& result);
Json to_json(const Instance& instance, const BwGcrPlan& plan);
Json to_json(const Instance& instance, const BwMesPlan& plan);
Json to_json(const Instance& instance, const FeasibilityVerdict& verdict);

}  // namespace pblottery
