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

// Acceptance sweep. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. An optional argument selects criteria,
// e.g. `acceptance 1,7`.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "pblottery/exante.hpp"
#include "pblottery/expost.hpp"
#include "pblottery/oracle.hpp"
#include "pblottery/rounding.hpp"
#include "pblottery/rules.hpp"

using namespace pblottery;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures; a criterion passes with no failures.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ << (failures_ > 1 ? "; " : "") << what;
  }
  std::size_t failures() const { return failures_; }
  Verdict verdict(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " failure(s): " + first_.str()};
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream first_;
};

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

Instance small_instance(pbtest::Gen& gen, std::size_t max_n, std::size_t max_m,
                        pbtest::Utilities utilities) {
  pbtest::Shape shape;
  shape.max_n = max_n;
  shape.max_m = max_m;
  shape.utilities = utilities;
  return pbtest::random_instance(gen, shape);
}

// ---- criteria 1-3: one shared rounding sweep ------------------------------

struct RoundingSweep {
  double max_deviation = 0;
  std::size_t samples = 0;
  std::size_t bb1_failures = 0;
  std::size_t traces = 0;
  std::size_t rounds_checked = 0;
  std::size_t conservation_failures = 0;
  double seconds = 0;
};

const RoundingSweep& rounding_sweep() {
  static const RoundingSweep sweep = [] {
    RoundingSweep out;
    constexpr std::size_t kInstances = 50;
    constexpr std::uint64_t kSeeds = 100000;
    pbtest::Gen gen(20260101);
    const auto start = Clock::now();
    for (std::size_t k = 0; k < kInstances; ++k) {
      const Instance instance = small_instance(gen, 6, 6, pbtest::Utilities::general);
      const FractionalOutcome p = pbtest::random_feasible(gen, instance);
      const auto costs = instance.costs();
      std::vector<std::uint64_t> hits(instance.m());
      for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const auto result = dependent_round(instance, p, derive_seed(Seed{k}, s));
        for (std::size_t c : result.outcome.members()) ++hits[c];
        if (!is_bb1(instance, result.outcome)) ++out.bb1_failures;
        ++out.samples;

        ++out.traces;
        const std::vector<Rational>* before = &result.trace.initial;
        for (const auto& step : result.trace.rounds) {
          if (step.indices.size() == 2) {
            Rational lhs;
            Rational rhs;
            for (std::size_t c = 0; c < costs.size(); ++c) {
              lhs += costs[c] * (*before)[c];
              rhs += costs[c] * step.after[c];
            }
            ++out.rounds_checked;
            if (lhs != rhs) ++out.conservation_failures;
          }
          before = &step.after;
        }
      }
      for (std::size_t c = 0; c < instance.m(); ++c) {
        const double empirical = static_cast<double>(hits[c]) / kSeeds;
        out.max_deviation = std::max(out.max_deviation, std::abs(empirical - p[c].to_double()));
      }
    }
    out.seconds = seconds_since(start);
    return out;
  }();
  return sweep;
}

Verdict criterion_marginals() {
  const RoundingSweep& sweep = rounding_sweep();
  const bool ok = sweep.max_deviation <= 0.01 && sweep.seconds < 60;
  return {ok, "50 instances x 100000 seeds, max |p_hat - p| = " + fixed(sweep.max_deviation, 5) +
                  " (<= 0.01), " + fixed(sweep.seconds, 1) + " s (< 60 s, includes traces)"};
}

Verdict criterion_bb1() {
  const RoundingSweep& sweep = rounding_sweep();
  return {sweep.bb1_failures == 0, std::to_string(sweep.samples) + " sampled outcomes, " +
                                       std::to_string(sweep.bb1_failures) + " not BB1"};
}

Verdict criterion_conservation() {
  const RoundingSweep& sweep = rounding_sweep();
  return {sweep.conservation_failures == 0,
          std::to_string(sweep.traces) + " traces, " + std::to_string(sweep.rounds_checked) +
              " paired rounds, " + std::to_string(sweep.conservation_failures) +
              " with cost drift"};
}

// ---- criterion 4 ------------------------------------------------------------

Verdict criterion_bfx() {
  // The proposition's argument needs cost({a,b}) < B, i.e. eps < B/4.
  const std::array<Rational, 5> budgets{Rational(1), Rational(2), Rational(7, 3), Rational(10),
                                        Rational(1, 3)};
  const std::array<Rational, 5> fractions{Rational(1, 1000), Rational(1, 20), Rational(1, 10),
                                          Rational(1, 6), Rational(6, 25)};
  Tally tally;
  const auto start = Clock::now();
  for (const auto& b : budgets) {
    for (const auto& f : fractions) {
      const Rational eps = b * f;
      const BfxFamily family = gen_bfx_family(b, eps);
      const std::string at = "(B=" + b.str() + ", eps=" + eps.str() + ")";
      tally.expect(family.instance.cost(family.p) == b, "cost(p) != B at " + at);
      const auto bfx = lottery_feasible(family.instance, family.p, PredicateTag::bfx);
      tally.expect(!bfx.feasible, "bfx feasible at " + at);
      const auto bb1 = lottery_feasible(family.instance, family.p, PredicateTag::bb1);
      bool sound = bb1.feasible && bb1.certificate && implements(*bb1.certificate, family.p);
      if (sound) {
        for (const auto& e : bb1.certificate->entries()) {
          sound = sound && is_bb1(family.instance, e.outcome);
        }
      }
      tally.expect(sound, "bb1 not implementable at " + at);
    }
  }
  const double secs = seconds_since(start);
  tally.expect(secs < 5, "took " + fixed(secs, 2) + " s");
  return tally.verdict("5x5 grid B in {1,2,7/3,10,1/3}, eps/B in {1/1000,1/20,1/10,1/6,6/25}: "
                       "bfx infeasible, bb1 certified, " + fixed(secs, 2) + " s");
}

// ---- criterion 5 ------------------------------------------------------------

Verdict criterion_hard_cap() {
  pbtest::Gen gen(5);
  std::size_t over = 0;
  std::size_t drawn = 0;
  for (int k = 0; k < 20; ++k) {
    const Instance instance = small_instance(gen, 6, 6, pbtest::Utilities::general);
    const FractionalOutcome p =
        pbtest::random_with_cost(gen, instance, hard_cap_budget(instance));
    for (std::uint64_t s = 0; s < 10000; ++s) {
      const Outcome w = round_with_hard_cap(instance, p, derive_seed(Seed{500U + k}, s));
      if (instance.cost(w) > instance.budget()) ++over;
      ++drawn;
    }
  }
  return {over == 0, std::to_string(drawn) + " outcomes, " + std::to_string(over) + " above B"};
}

// ---- criterion 6 ------------------------------------------------------------

Verdict criterion_frd() {
  pbtest::Gen gen(6);
  Tally tally;
  const auto start = Clock::now();
  Limits limits;
  limits.max_voters = 8;
  for (int k = 0; k < 100; ++k) {
    const Instance instance =
        small_instance(gen, 8, 8, static_cast<pbtest::Utilities>(k % 3));
    const FractionalOutcome p = fractional_random_dictator(instance);
    tally.expect(instance.cost(p) == instance.budget(), "cost != B on instance " + std::to_string(k));
    tally.expect(check_gfs(instance, p, limits).holds, "GFS fails on instance " + std::to_string(k));
  }
  const double secs = seconds_since(start);
  tally.expect(secs < 120, "took " + fixed(secs, 1) + " s");
  return tally.verdict("100 instances (n, m <= 8): cost(p) = B and GFS over all groups, " +
                       fixed(secs, 2) + " s");
}

// ---- criterion 7 ------------------------------------------------------------

Verdict criterion_gfs_jr() {
  const auto start = Clock::now();
  const Instance family = gen_gfs_jr_family(6, 1, Rational(1, 12));
  const std::size_t g = *family.project_index("g");
  Tally tally;

  const auto feasible = enumerate_outcomes(family, OutcomePredicate::parse("within-budget+jr-binary"));
  const bool all_fund_g =
      std::all_of(feasible.begin(), feasible.end(), [&](const Outcome& w) { return w.contains(g); });
  tally.expect(!feasible.empty() && all_fund_g, "a feasible JR outcome misses g*");

  // No lottery over JR outcomes (budget ignored) spends B without funding g*.
  LinearConstraint no_g{std::vector<Rational>(family.m()), Relation::eq, 0};
  no_g.coefficients[g] = 1;
  const auto claim = jointly_feasible(family, PredicateTag::jr_binary, {{no_g}});
  tally.expect(!claim.feasible, "JR lottery avoiding g* exists");

  const LinearConstraintSet gfs = gfs_constraints(family);
  tally.expect(gfs.rows.size() == 63, "expected 63 GFS rows");
  const auto joint = jointly_feasible(family, PredicateTag::jr_binary, gfs);
  tally.expect(!joint.feasible, "GFS and JR jointly feasible");

  const double secs = seconds_since(start);
  tally.expect(secs < 120, "took " + fixed(secs, 1) + " s");
  return tally.verdict("(a) " + std::to_string(feasible.size()) +
                       " feasible JR outcomes all contain g*, no JR lottery with p_g* = 0; "
                       "(b) 63 GFS rows with conv(JR outcomes) infeasible, " +
                       fixed(secs, 1) + " s");
}

// ---- criteria 8, 9, 11 --------------------------------------------------------

Verdict criterion_bw_gcr() {
  pbtest::Gen gen(8);
  Tally tally;
  std::size_t steps_checked = 0;
  for (int k = 0; k < 50; ++k) {
    const Instance instance = small_instance(gen, 5, 6, pbtest::Utilities::binary);
    const std::string at = " on instance " + std::to_string(k);
    const BwGcrPlan plan = bw_gcr_plan(instance);
    tally.expect(check_strong_ufs(instance, plan.fractional).holds, "Strong UFS fails" + at);
    Rational pooled;
    for (const auto& b : plan.budgets) pooled += b;
    tally.expect(pooled <= instance.budget() - instance.cost(plan.gcr.outcome),
                 "budget bound fails" + at);
    const auto cells = unanimous_partition(instance).cells;
    for (const auto& step : plan.gcr.steps) {
      Rational step_cost;
      for (std::size_t c : step.projects) step_cost += instance.cost(c);
      for (std::size_t z = 0; z < cells.size(); ++z) {
        if (!plan.funded[z]) continue;
        if (!std::binary_search(step.voters.begin(), step.voters.end(), cells[z].front())) continue;
        ++steps_checked;
        tally.expect(step_cost <= plan.ladders[z].prefix_cost, "cost(T_j) > cost(G)" + at);
      }
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Outcome w = sample_outcome(instance, plan.fractional, derive_seed(Seed{800U + k}, s));
      tally.expect(is_bb1(instance, w), "sample not BB1" + at);
      tally.expect(check_fjr_binary(instance, w).holds, "sample not FJR" + at);
    }
  }
  return tally.verdict("50 binary instances: Strong UFS, budget bound, " +
                       std::to_string(steps_checked) +
                       " step/cell cost comparisons, 5000 samples BB1 and FJR");
}

// Least-squares polynomial fit; returns R^2.
double polynomial_r2(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const int k = degree + 1;
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0));
  for (std::size_t s = 0; s < x.size(); ++s) {
    std::vector<double> powers(k, 1);
    for (int d = 1; d < k; ++d) powers[d] = powers[d - 1] * x[s];
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] += powers[r] * powers[c];
      a[r][k] += powers[r] * y[s];
    }
  }
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (int c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double residual = 0;
  double total = 0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    double fit = 0;
    double power = 1;
    for (int d = 0; d < k; ++d) {
      fit += a[d][k] / a[d][d] * power;
      power *= x[s];
    }
    residual += (y[s] - fit) * (y[s] - fit);
    total += (y[s] - mean) * (y[s] - mean);
  }
  return total == 0 ? 1 : 1 - residual / total;
}

Verdict criterion_bw_mes() {
  pbtest::Gen gen(9);
  Tally tally;
  std::size_t cells_checked = 0;
  for (int k = 0; k < 50; ++k) {
    const Instance instance = small_instance(gen, 5, 6, pbtest::Utilities::binary);
    const std::string at = " on instance " + std::to_string(k);
    const BwMesPlan plan = bw_mes_plan(instance);
    tally.expect(check_strong_ufs(instance, plan.fractional).holds, "Strong UFS fails" + at);
    for (const auto& cell : unanimous_partition(instance).cells) {
      const GroupLadder ladder = group_ladder(instance, cell);
      std::size_t covered = 0;
      Rational paid;
      for (std::size_t c : ladder.approvals) {
        if (!plan.mes.outcome.contains(c)) continue;
        ++covered;
        paid += plan.mes.payments.spend[cell.front()][c];
      }
      if (covered != ladder.prefix.size()) continue;
      ++cells_checked;
      tally.expect(Rational(static_cast<std::int64_t>(cell.size())) * paid <= ladder.prefix_cost,
                   "payment comparison fails" + at);
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Outcome w = sample_outcome(instance, plan.fractional, derive_seed(Seed{900U + k}, s));
      tally.expect(is_bb1(instance, w), "sample not BB1" + at);
      tally.expect(check_ejr_binary(instance, w).holds, "sample not EJR" + at);
    }
  }

  // Timing smoke test of the deterministic part.
  std::vector<double> sizes;
  std::vector<double> times;
  for (std::size_t target = 20; target <= 200; target += 15) {
    const auto n = static_cast<std::size_t>(std::lround(std::sqrt(target / 2.0)));
    const std::size_t m = target / n;
    pbtest::Shape shape;
    shape.min_n = shape.max_n = n;
    shape.min_m = shape.max_m = m;
    shape.utilities = pbtest::Utilities::binary;
    std::vector<Instance> batch;
    for (int rep = 0; rep < 10; ++rep) batch.push_back(pbtest::random_instance(gen, shape));
    const auto start = Clock::now();
    int runs = 0;
    do {
      for (const auto& instance : batch) (void)bw_mes_plan(instance);
      ++runs;
    } while (seconds_since(start) < 0.1);
    const double per_plan = seconds_since(start) / (runs * static_cast<double>(batch.size()));
    sizes.push_back(static_cast<double>(n * m));
    times.push_back(per_plan * 1e3);
  }
  const double r2 = polynomial_r2(sizes, times, 3);
  tally.expect(r2 >= 0.9, "cubic fit R^2 = " + fixed(r2, 3));
  return tally.verdict("50 binary instances: Strong UFS, " + std::to_string(cells_checked) +
                       " payment comparisons, 5000 samples BB1 and EJR; timing over n*m in [" +
                       fixed(sizes.front(), 0) + ", " + fixed(sizes.back(), 0) +
                       "] cubic fit R^2 = " + fixed(r2, 3) + " (max " + fixed(times.back(), 2) +
                       " ms)");
}

Verdict criterion_cost_utilities() {
  pbtest::Gen gen(11);
  Tally tally;
  for (int k = 0; k < 50; ++k) {
    const Instance instance = small_instance(gen, 5, 6, pbtest::Utilities::cost);
    const std::string at = " on instance " + std::to_string(k);
    const BwMesPlan plan = bw_mes_plan(instance);
    tally.expect(check_gfs(instance, plan.fractional).holds, "GFS fails" + at);
    tally.expect(check_strong_ufs(instance, plan.fractional).holds, "Strong UFS fails" + at);
    const Rational n(static_cast<std::int64_t>(instance.n()));
    for (std::size_t i = 0; i < instance.n(); ++i) {
      Rational spent;
      Rational approved;
      for (std::size_t c : instance.approval_set(i)) {
        spent += plan.payments.spend[i][c];
        approved += instance.cost(c);
      }
      tally.expect(n * spent >= min(instance.budget(), approved), "spend bound fails" + at);
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Outcome w = sample_outcome(instance, plan.fractional, derive_seed(Seed{1100U + k}, s));
      tally.expect(is_bb1(instance, w), "sample not BB1" + at);
      tally.expect(check_ejrx_cost(instance, w).holds, "sample not EJR-x" + at);
    }
  }
  return tally.verdict(
      "50 cost-utility instances: GFS, Strong UFS, per-voter spend bound, 5000 samples EJR-x and BB1");
}

// ---- criterion 10 -------------------------------------------------------------

Verdict criterion_ifs_jr() {
  const auto start = Clock::now();
  const Instance family = gen_ifs_jr_family(4, 5);
  const Rational n(4);
  const Rational h(5);
  Tally tally;

  const LinearConstraintSet ifs = ifs_constraints(family);
  const auto joint = jointly_feasible(family, PredicateTag::jr_general, ifs);
  tally.expect(!joint.feasible, "IFS and JR jointly feasible");

  // A lottery spending exactly B over outcomes within budget is supported on
  // outcomes of cost B, so the identity is checked outcome by outcome.
  const auto outcomes = enumerate_outcomes(family, OutcomePredicate::parse("within-budget+jr-general"));
  std::size_t exact = 0;
  for (const auto& w : outcomes) {
    if (family.cost(w) != family.budget()) continue;
    ++exact;
    Rational total;
    for (std::size_t i = 0; i < family.n(); ++i) total += utility(family, i, w);
    tally.expect(total == n + h, "sum of utilities " + total.str() + " != n + H");
  }
  tally.expect(exact > 0, "no JR outcome spends B");
  const Rational average = (n + h) / n;
  const Rational bound = optimal_fractional_utility(family, 0, family.budget()) / n;
  tally.expect(average == 1 + h / n, "average utility is not 1 + H/n");
  tally.expect(bound == 2 * h / n, "IFS bound is not 2H/n");
  tally.expect(average < bound, "1 + H/n >= 2H/n");

  const double secs = seconds_since(start);
  tally.expect(secs < 60, "took " + fixed(secs, 1) + " s");
  return tally.verdict("joint IFS + JR infeasible; sum u_i = n + H = 9 on all " +
                       std::to_string(exact) + " JR outcomes of cost B; 1 + H/n = " +
                       average.str() + " < 2H/n = " + bound.str() + ", " + fixed(secs, 2) + " s");
}

// ---- criterion 12 -------------------------------------------------------------

Verdict criterion_hierarchy() {
  pbtest::Gen gen(12);
  Tally tally;
  std::size_t outcomes_checked = 0;
  for (int k = 0; k < 200; ++k) {
    const bool binary = k % 2 == 0;
    const Instance instance = small_instance(
        gen, 5, 6, binary ? pbtest::Utilities::binary : pbtest::Utilities::general);
    const FractionalOutcome p =
        k % 5 == 0 ? fractional_random_dictator(instance) : pbtest::random_feasible(gen, instance);
    const std::string at = " on pair " + std::to_string(k);
    const bool ifs = check_ifs(instance, p).holds;
    const bool sifs = check_strong_ifs(instance, p).holds;
    const bool ufs = check_ufs(instance, p).holds;
    const bool sufs = check_strong_ufs(instance, p).holds;
    tally.expect(!sufs || ufs, "Strong UFS without UFS" + at);
    tally.expect(!ufs || ifs, "UFS without IFS" + at);
    tally.expect(!sifs || ifs, "Strong IFS without IFS" + at);
    tally.expect(!sufs || sifs, "Strong UFS without Strong IFS" + at);
    if (!binary) continue;
    std::vector<Outcome> targets;
    for (std::uint64_t s = 0; s < 8; ++s) targets.push_back(sample_outcome(instance, p, Seed{s}));
    targets.push_back(greedy_cohesive_rule(instance).outcome);
    targets.push_back(method_of_equal_shares(instance).outcome);
    for (const auto& w : targets) {
      ++outcomes_checked;
      const bool jr = check_jr_binary(instance, w).holds;
      const bool ejr = check_ejr_binary(instance, w).holds;
      const bool fjr = check_fjr_binary(instance, w).holds;
      tally.expect(!fjr || ejr, "FJR without EJR" + at);
      tally.expect(!ejr || jr, "EJR without JR" + at);
      tally.expect(check_jr_general(instance, w).holds == jr, "general JR differs" + at);
    }
  }
  return tally.verdict("200 (instance, p) pairs, ex-ante implications; " +
                       std::to_string(outcomes_checked) +
                       " binary outcomes for FJR => EJR => JR and general JR == JR");
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "marginal preservation", criterion_marginals},
      {2, "ex-post BB1", criterion_bb1},
      {3, "conservation invariant", criterion_conservation},
      {4, "BFx impossibility", criterion_bfx},
      {5, "hard-cap rounding", criterion_hard_cap},
      {6, "FRD feasibility and GFS", criterion_frd},
      {7, "GFS + JR impossibility", criterion_gfs_jr},
      {8, "BW-GCR", criterion_bw_gcr},
      {9, "BW-MES", criterion_bw_mes},
      {10, "IFS + JR impossibility", criterion_ifs_jr},
      {11, "cost utilities", criterion_cost_utilities},
      {12, "axiom hierarchy", criterion_hierarchy},
  };
  std::set<int> selected;
  if (argc > 1) {
    std::stringstream list(argv[1]);
    std::string item;
    while (std::getline(list, item, ',')) selected.insert(std::stoi(item));
  }
  int failed = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() && !selected.count(criterion.id)) continue;
    Verdict verdict;
    try {
      verdict = criterion.run();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    if (!verdict.pass) ++failed;
    std::printf("%s [%2d] %s: %s\n", verdict.pass ? "PASS" : "FAIL", criterion.id, criterion.title,
                verdict.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
