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

namespace pblottery {

enum class ExPostAxiom { jr_binary, ejr_binary, fjr_binary, jr_general, ejrx_cost };

std::string_view to_string(ExPostAxiom axiom);

// A cohesive group none of whose members is represented as required. The
// group is always the full set of deprived voters for (T[, beta | alpha]),
// which is at least as large as n * cost(T) / B.
struct CohesivenessWitness {
  std::vector<std::size_t> projects;  // T
  std::optional<std::size_t> beta;    // weak (beta, T)-cohesion
  std::optional<Rational> alpha;      // (alpha, {j})-cohesion threshold
  std::vector<std::size_t> voters;    // S
  std::string note;
};

// holds == false iff witness is present.
struct ExPostReport {
  ExPostAxiom axiom = ExPostAxiom::jr_binary;
  bool holds = true;
  std::optional<CohesivenessWitness> witness;
};

// A deprived group of `count` voters can afford `cost`: count >= 1 and
// count * B >= n * cost.
bool affordable_by(const Instance& instance, std::size_t count, const Rational& cost);

// Binary-utility checks throw SettingError on other instances; the exponential
// ones throw ScaleError beyond limits.max_projects. Witnesses are minimal by
// |T|, then lexicographic T (then beta, for FJR).
ExPostReport check_jr_binary(const Instance& instance, const Outcome& w);
ExPostReport check_ejr_binary(const Instance& instance, const Outcome& w,
                              const Limits& limits = {});
ExPostReport check_fjr_binary(const Instance& instance, const Outcome& w,
                              const Limits& limits = {});

// JR for arbitrary utilities with per-project thresholds alpha in [0, 1]. Only
// the thresholds min(1, u_ij) need testing: raising alpha to the least clipped
// utility among a deprived group keeps it cohesive and deprived.
ExPostReport check_jr_general(const Instance& instance, const Outcome& w);

// EJR up to any project under cost utilities. Throws SettingError otherwise.
ExPostReport check_ejrx_cost(const Instance& instance, const Outcome& w,
                             const Limits& limits = {});

}  // namespace pblottery
