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

#include "pblottery/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pblottery/errors.hpp"
#include "pblottery/io.hpp"

namespace pblottery {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ValidationError(path, e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Rational numeric_flag(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + text + "' is not a rational number");
  }
}

std::uint64_t integer_flag(const std::string& text, const std::string& flag) {
  const auto value = numeric_flag(text, flag).to_uint64();
  if (!value) throw UsageError(flag + ": '" + text + "' is not a non-negative integer");
  return *value;
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, separator)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}


std::optional<ExAnteAxiom> ex_ante_axiom(const std::string& name) {
  if (name == "ifs") return ExAnteAxiom::ifs;
  if (name == "strong-ifs" || name == "sifs") return ExAnteAxiom::strong_ifs;
  if (name == "ufs") return ExAnteAxiom::ufs;
  if (name == "strong-ufs" || name == "sufs") return ExAnteAxiom::strong_ufs;
  if (name == "gfs") return ExAnteAxiom::gfs;
  return std::nullopt;
}

enum class OutcomeAxiom { jr, ejr, fjr, jr_general, ejrx, bb1, bfx, within_budget };

std::optional<OutcomeAxiom> outcome_axiom(const std::string& name) {
  if (name == "jr") return OutcomeAxiom::jr;
  if (name == "ejr") return OutcomeAxiom::ejr;
  if (name == "fjr") return OutcomeAxiom::fjr;
  if (name == "jr-general") return OutcomeAxiom::jr_general;
  if (name == "ejrx") return OutcomeAxiom::ejrx;
  if (name == "bb1") return OutcomeAxiom::bb1;
  if (name == "bfx") return OutcomeAxiom::bfx;
  if (name == "within-budget") return OutcomeAxiom::within_budget;
  return std::nullopt;
}

Json check_ex_ante(const Instance& instance, const FractionalOutcome& p, ExAnteAxiom axiom,
                   const Limits& limits) {
  switch (axiom) {
    case ExAnteAxiom::ifs:
      return to_json(instance, check_ifs(instance, p));
    case ExAnteAxiom::strong_ifs:
      return to_json(instance, check_strong_ifs(instance, p));
    case ExAnteAxiom::ufs:
      return to_json(instance, check_ufs(instance, p));
    case ExAnteAxiom::strong_ufs:
      return to_json(instance, check_strong_ufs(instance, p));
    case ExAnteAxiom::gfs:
      return to_json(instance, check_gfs(instance, p, limits));
  }
  return nullptr;
}

Json check_outcome(const Instance& instance, const Outcome& w, OutcomeAxiom axiom,
                   const Limits& limits) {
  auto predicate = [](const char* name, bool holds) {
    return Json{{"axiom", name}, {"holds", holds}, {"witness", nullptr}};
  };
  switch (axiom) {
    case OutcomeAxiom::jr:
      return to_json(instance, check_jr_binary(instance, w));
    case OutcomeAxiom::ejr:
      return to_json(instance, check_ejr_binary(instance, w, limits));
    case OutcomeAxiom::fjr:
      return to_json(instance, check_fjr_binary(instance, w, limits));
    case OutcomeAxiom::jr_general:
      return to_json(instance, check_jr_general(instance, w));
    case OutcomeAxiom::ejrx:
      return to_json(instance, check_ejrx_cost(instance, w, limits));
    case OutcomeAxiom::bb1:
      return predicate("bb1", is_bb1(instance, w));
    case OutcomeAxiom::bfx:
      return predicate("bfx", is_bfx(instance, w));
    case OutcomeAxiom::within_budget:
      return predicate("within-budget", instance.cost(w) <= instance.budget());
  }
  return nullptr;
}

struct AxiomList {
  std::vector<ExAnteAxiom> ex_ante;
  std::vector<OutcomeAxiom> ex_post;
};

AxiomList parse_axioms(const std::string& text) {
  AxiomList list;
  for (const auto& name : split(text, ',')) {
    if (auto a = ex_ante_axiom(name)) {
      list.ex_ante.push_back(*a);
    } else if (auto b = outcome_axiom(name)) {
      list.ex_post.push_back(*b);
    } else {
      throw UsageError("unknown axiom '" + name + "'");
    }
  }
  return list;
}

struct Context {
  Limits limits;
  std::ostream& out;
};

void emit(const Context& context, const Json& report, const std::string& out_path) {
  if (out_path.empty()) {
    context.out << canonical(report);
  } else {
    write_file(out_path, canonical(report));
  }
}

// ---- run -------------------------------------------------------------------

struct RunOptions {
  std::string instance;
  std::string rule;
  std::string seed = "0";
  std::string samples = "1";
  std::string axioms;
  std::string out;
};

int cmd_run(const Context& context, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = parse_instance(read_file(options.instance));
  const Seed seed{integer_flag(options.seed, "--seed")};
  const std::uint64_t samples = integer_flag(options.samples, "--samples");
  const AxiomList axioms = parse_axioms(options.axioms);

  Json report = {{"instance_digest", instance_digest(instance)},
                 {"rule", options.rule},
                 {"seed", seed.value}};
  std::optional<FractionalOutcome> p;
  std::optional<Outcome> fixed;
  if (options.rule == "frd") {
    p = fractional_random_dictator(instance);
  } else if (options.rule == "gcr") {
    GcrTrace trace = greedy_cohesive_rule(instance, context.limits);
    report["record"] = to_json(instance, trace);
    fixed = trace.outcome;
  } else if (options.rule == "mes") {
    MesResult result = method_of_equal_shares(instance);
    report["record"] = to_json(instance, result);
    fixed = result.outcome;
  } else if (options.rule == "bw-gcr") {
    if (!has_binary_utilities(instance)) throw SettingError("bw-gcr requires binary utilities");
    BwGcrPlan plan = bw_gcr_plan(instance, context.limits);
    report["record"] = to_json(instance, plan);
    p = plan.fractional;
  } else if (options.rule == "bw-mes") {
    BwMesPlan plan = bw_mes_plan(instance);
    report["record"] = to_json(instance, plan);
    p = plan.fractional;
  } else {
    throw UsageError("unknown rule '" + options.rule + "'");
  }
  if (!axioms.ex_ante.empty() && !p) {
    throw UsageError("rule " + options.rule + " has no fractional outcome for ex-ante axioms");
  }

  std::vector<Outcome> outcomes;
  if (p) {
    report["fractional"] = project_map(instance, p->fractions);
    report["cost_equals_budget"] = instance.cost(*p) == instance.budget();
    if (samples == 0) throw UsageError("--samples must be at least 1");
    Json drawn = Json::array();
    std::vector<Rational> hits(instance.m());
    for (std::uint64_t k = 0; k < samples; ++k) {
      const Seed derived = derive_seed(seed, k);
      Outcome w = sample_outcome(instance, *p, derived);
      for (std::size_t c : w.members()) hits[c] += 1;
      const auto members = w.members();
      drawn.push_back({{"seed", derived.value}, {"outcome", project_list(instance, members)}});
      outcomes.push_back(std::move(w));
    }
    report["samples"] = std::move(drawn);
    if (samples > 1) {
      const Rational total(static_cast<std::int64_t>(samples));
      for (auto& h : hits) h /= total;
      report["empirical_marginals"] = project_map(instance, hits);
    }
  } else {
    const auto members = fixed->members();
    report["outcome"] = project_list(instance, members);
    outcomes.push_back(*fixed);
  }

  bool holds = true;
  Json checks = Json::array();
  for (ExAnteAxiom axiom : axioms.ex_ante) {
    Json r = check_ex_ante(instance, *p, axiom, context.limits);
    holds = holds && r["holds"].get<bool>();
    checks.push_back(std::move(r));
  }
  for (OutcomeAxiom axiom : axioms.ex_post) {
    Json summary;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      Json r = check_outcome(instance, outcomes[k], axiom, context.limits);
      if (summary.is_null()) summary = {{"axiom", r["axiom"]}, {"first_failure", nullptr}};
      if (!r["holds"].get<bool>()) {
        if (failures == 0) summary["first_failure"] = {{"sample", k}, {"report", r}};
        ++failures;
      }
    }
    summary["checked"] = outcomes.size();
    summary["failures"] = failures;
    summary["holds"] = failures == 0;
    holds = holds && failures == 0;
    checks.push_back(std::move(summary));
  }
  report["axioms"] = std::move(checks);
  report["holds"] = holds;
  report["timing_ms"] = elapsed_ms(start);
  emit(context, report, options.out);
  return holds ? kExitOk : kExitFailed;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string instance;
  std::string target;
  std::string axioms;
  std::string out;
};

int cmd_verify(const Context& context, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = parse_instance(read_file(options.instance));
  const Json target = read_json(options.target);
  const AxiomList axioms = parse_axioms(options.axioms);
  if (axioms.ex_ante.empty() && axioms.ex_post.empty()) throw UsageError("no axioms requested");

  Json report = {{"instance_digest", instance_digest(instance)}};
  Json checks = Json::array();
  bool holds = true;
  if (target.contains("fractional")) {
    if (!axioms.ex_post.empty()) throw UsageError("outcome axioms need an outcome target");
    const FractionalOutcome p = fractional_from_json(instance, target);
    report["fractional"] = project_map(instance, p.fractions);
    for (ExAnteAxiom axiom : axioms.ex_ante) {
      Json r = check_ex_ante(instance, p, axiom, context.limits);
      holds = holds && r["holds"].get<bool>();
      checks.push_back(std::move(r));
    }
  } else if (target.contains("outcome")) {
    if (!axioms.ex_ante.empty()) throw UsageError("ex-ante axioms need a fractional target");
    const Outcome w = outcome_from_json(instance, target);
    const auto members = w.members();
    report["outcome"] = project_list(instance, members);
    for (OutcomeAxiom axiom : axioms.ex_post) {
      Json r = check_outcome(instance, w, axiom, context.limits);
      holds = holds && r["holds"].get<bool>();
      checks.push_back(std::move(r));
    }
  } else {
    throw ValidationError(options.target, "expected a \"fractional\" or \"outcome\" document");
  }
  report["axioms"] = std::move(checks);
  report["holds"] = holds;
  report["timing_ms"] = elapsed_ms(start);
  emit(context, report, options.out);
  return holds ? kExitOk : kExitFailed;
}

// ---- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::string instance;
  std::string mode;
  std::string predicate = "all";
  std::string constraints;
  std::string builtin;
  std::string fractional;
  std::string out;
};

int cmd_oracle(const Context& context, const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = parse_instance(read_file(options.instance));
  const OutcomePredicate predicate = OutcomePredicate::parse(options.predicate);
  if (!options.constraints.empty() && !options.builtin.empty()) {
    throw UsageError("--constraints and --builtin are exclusive");
  }
  LinearConstraintSet extra;
  if (!options.constraints.empty()) {
    extra = constraints_from_json(instance, read_json(options.constraints));
  } else if (options.builtin == "ifs") {
    extra = ifs_constraints(instance);
  } else if (options.builtin == "gfs") {
    extra = gfs_constraints(instance, context.limits);
  } else if (!options.builtin.empty()) {
    throw UsageError("unknown builtin '" + options.builtin + "'");
  }

  FeasibilityVerdict verdict;
  if (options.mode == "implementable") {
    if (options.fractional.empty()) throw UsageError("implementable mode needs --fractional");
    const FractionalOutcome p = fractional_from_json(instance, read_json(options.fractional));
    verdict = lottery_feasible(instance, p, predicate, extra, context.limits);
  } else if (options.mode == "joint") {
    verdict = jointly_feasible(instance, predicate, extra, context.limits);
  } else {
    throw UsageError("unknown mode '" + options.mode + "'");
  }
  Json report = to_json(instance, verdict);
  report["instance_digest"] = instance_digest(instance);
  report["mode"] = options.mode;
  report["predicate"] = predicate.name();
  report["extra_rows"] = extra.rows.size();
  report["timing_ms"] = elapsed_ms(start);
  emit(context, report, options.out);
  return verdict.feasible ? kExitOk : kExitFailed;
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string family;
  std::string n;
  std::string budget = "1";
  std::string eps;
  std::string h;
  std::string out;
  std::string p_out;
};

std::string required(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError(flag + " is required");
  return value;
}

int cmd_gen(const Context& context, const GenOptions& options) {
  if (options.family == "bfx") {
    const BfxFamily family = gen_bfx_family(numeric_flag(options.budget, "--B"),
                                            numeric_flag(required(options.eps, "--eps"), "--eps"));
    const std::string p_text = canonical(fractional_to_json(family.instance, family.p));
    std::string p_out = options.p_out;
    if (p_out.empty() && !options.out.empty()) {
      const auto dot = options.out.rfind(".json");
      p_out = (dot == std::string::npos ? options.out : options.out.substr(0, dot)) + ".p.json";
    }
    emit(context, instance_to_json(family.instance), options.out);
    if (p_out.empty()) {
      context.out << p_text;
    } else {
      write_file(p_out, p_text);
    }
    return kExitOk;
  }
  std::optional<Instance> instance;
  if (options.family == "gfs-jr") {
    instance = gen_gfs_jr_family(integer_flag(required(options.n, "--n"), "--n"),
                                 numeric_flag(options.budget, "--B"),
                                 numeric_flag(required(options.eps, "--eps"), "--eps"));
  } else if (options.family == "ifs-jr") {
    instance = gen_ifs_jr_family(integer_flag(required(options.n, "--n"), "--n"),
                                 numeric_flag(required(options.h, "--H"), "--H"));
  } else {
    throw UsageError("unknown family '" + options.family + "'");
  }
  emit(context, instance_to_json(*instance), options.out);
  return kExitOk;
}

}  // namespace

Limits parse_limits(std::string_view text, Limits base) {
  auto integer = [](const std::string& value) {
    const auto parsed = [&]() -> std::optional<std::uint64_t> {
      try {
        return Rational::parse(value).to_uint64();
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }();
    if (!parsed || *parsed == 0) {
      throw ValidationError("limits", "'" + value + "' is not a positive integer");
    }
    return static_cast<std::size_t>(*parsed);
  };
  const std::string spec(text);
  if (spec.find('=') == std::string::npos) {
    base.max_projects = base.max_voters = integer(spec);
    return base;
  }
  for (const auto& part : split(spec, ',')) {
    const auto eq = part.find('=');
    const std::string key = part.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : part.substr(eq + 1);
    if (key == "projects") {
      base.max_projects = integer(value);
    } else if (key == "voters") {
      base.max_voters = integer(value);
    } else {
      throw ValidationError("limits", "unknown key '" + key + "'");
    }
  }
  return base;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair lotteries for participatory budgeting", "pblottery"};
  app.require_subcommand(1);
  std::string limit_text;
  app.add_option("--limit-exp", limit_text,
                 "exhaustive-check caps: P, or projects=P,voters=V");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "run a rule and sample outcomes");
  run_cmd->add_option("--instance", run.instance, "instance JSON")->required();
  run_cmd->add_option("--rule", run.rule, "frd | gcr | mes | bw-gcr | bw-mes")->required();
  run_cmd->add_option("--seed", run.seed, "base seed");
  run_cmd->add_option("--samples", run.samples, "number of sampled outcomes");
  run_cmd->add_option("--axioms", run.axioms, "comma-separated axioms to check");
  run_cmd->add_option("--out", run.out, "write the report here");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check axioms on an outcome");
  verify_cmd->add_option("--instance", verify.instance, "instance JSON")->required();
  verify_cmd->add_option("--target", verify.target, "fractional or outcome JSON")->required();
  verify_cmd->add_option("--axioms", verify.axioms, "comma-separated axioms")->required();
  verify_cmd->add_option("--out", verify.out, "write the report here");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact lottery feasibility");
  oracle_cmd->add_option("--instance", oracle.instance, "instance JSON")->required();
  oracle_cmd->add_option("--mode", oracle.mode, "implementable | joint")->required();
  oracle_cmd->add_option("--predicate", oracle.predicate, "outcome predicate, tags joined by +");
  oracle_cmd->add_option("--constraints", oracle.constraints, "constraints JSON");
  oracle_cmd->add_option("--builtin", oracle.builtin, "ifs | gfs");
  oracle_cmd->add_option("--fractional", oracle.fractional, "fractional JSON");
  oracle_cmd->add_option("--out", oracle.out, "write the verdict here");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a counterexample instance");
  gen_cmd->add_option("family", gen.family, "bfx | gfs-jr | ifs-jr")->required();
  gen_cmd->add_option("--n", gen.n, "number of voters");
  gen_cmd->add_option("--B", gen.budget, "budget");
  gen_cmd->add_option("--eps", gen.eps, "epsilon");
  gen_cmd->add_option("--H", gen.h, "personal utility");
  gen_cmd->add_option("--out", gen.out, "instance file");
  gen_cmd->add_option("--p-out", gen.p_out, "fractional outcome file (bfx)");

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Limits limits;
    if (const char* env = std::getenv("PB_BOBW_LIMIT"); env != nullptr && *env != '\0') {
      limits = parse_limits(env, limits);
    }
    if (!limit_text.empty()) limits = parse_limits(limit_text, limits);
    const Context context{limits, out};
    if (run_cmd->parsed()) return cmd_run(context, run);
    if (verify_cmd->parsed()) return cmd_verify(context, verify);
    if (oracle_cmd->parsed()) return cmd_oracle(context, oracle);
    return cmd_gen(context, gen);
  } catch (const InvariantError& e) {
    err << "invariant breached: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace pblottery
