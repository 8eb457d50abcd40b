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

#include "pblottery/simplex.hpp"

#include <string>

#include "pblottery/errors.hpp"

namespace pblottery {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::ge:
      return ">=";
    case Relation::eq:
      return "=";
    case Relation::le:
      return "<=";
  }
  return ">=";
}

namespace {

// Dense tableau. Columns: structural variables, then one slack or surplus per
// inequality row, then one artificial per row that has no slack basis.
class Tableau {
 public:
  Tableau(std::size_t variables, std::span<const LinearConstraint> rows) : variables_(variables) {
    const std::size_t r = rows.size();
    std::vector<Relation> relation(r);
    std::vector<bool> flip(r, false);
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (std::size_t k = 0; k < r; ++k) {
      relation[k] = rows[k].relation;
      if (rows[k].bound.sign() < 0) {
        flip[k] = true;
        if (relation[k] == Relation::ge) {
          relation[k] = Relation::le;
        } else if (relation[k] == Relation::le) {
          relation[k] = Relation::ge;
        }
      }
      if (relation[k] != Relation::eq) ++slacks;
      if (relation[k] != Relation::le) ++artificials;
    }
    first_artificial_ = variables + slacks;
    columns_ = first_artificial_ + artificials;
    cells_.assign(r * (columns_ + 1), Rational());
    basis_.assign(r, 0);

    std::size_t slack = variables;
    std::size_t artificial = first_artificial_;
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t v = 0; v < variables; ++v) {
        const Rational& a = rows[k].coefficients[v];
        if (!a.is_zero()) at(k, v) = flip[k] ? -a : a;
      }
      rhs(k) = flip[k] ? -rows[k].bound : rows[k].bound;
      if (relation[k] == Relation::le) {
        at(k, slack) = 1;
        basis_[k] = slack++;
      } else {
        if (relation[k] == Relation::ge) at(k, slack++) = -1;
        at(k, artificial) = 1;
        basis_[k] = artificial++;
      }
    }

    // Phase-one objective: minimise the sum of artificials. The reduced cost
    // of column j is -(sum over artificial rows of a_kj).
    objective_.assign(columns_ + 1, Rational());
    for (std::size_t k = 0; k < r; ++k) {
      if (basis_[k] < first_artificial_) continue;
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (j >= first_artificial_ && j < columns_) continue;
        const Rational& a = at(k, j);
        if (!a.is_zero()) objective_[j] -= a;
      }
    }
  }

  // Returns false when the phase-one optimum is positive.
  bool solve() {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (objective_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) break;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational& a = at(k, *entering);
        if (a.sign() <= 0) continue;
        const Rational ratio = rhs(k) / a;
        if (!leaving || ratio < best || (ratio == best && basis_[k] < basis_[*leaving])) {
          leaving = k;
          best = ratio;
        }
      }
      // The phase-one objective is bounded below by zero.
      if (!leaving) throw InvariantError("phase-one simplex reported an unbounded ray");
      pivot(*leaving, *entering);
    }
    return objective_[columns_].is_zero();
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(variables_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (basis_[k] < variables_) x[basis_[k]] = rhs(k);
    }
    return x;
  }

 private:
  Rational& at(std::size_t row, std::size_t column) { return cells_[row * (columns_ + 1) + column]; }
  const Rational& at(std::size_t row, std::size_t column) const {
    return cells_[row * (columns_ + 1) + column];
  }
  Rational& rhs(std::size_t row) { return at(row, columns_); }
  const Rational& rhs(std::size_t row) const { return at(row, columns_); }

  void pivot(std::size_t row, std::size_t column) {
    const Rational inverse = Rational(1) / at(row, column);
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j <= columns_; ++j) {
      Rational& a = at(row, j);
      if (a.is_zero()) continue;
      a *= inverse;
      support.push_back(j);
    }
    auto eliminate = [&](Rational* line) {
      const Rational factor = line[column];
      if (factor.is_zero()) return;
      for (std::size_t j : support) line[j] -= factor * at(row, j);
    };
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k != row) eliminate(&at(k, 0));
    }
    eliminate(objective_.data());
    basis_[row] = column;
  }

  std::size_t variables_;
  std::size_t first_artificial_ = 0;
  std::size_t columns_ = 0;
  std::vector<Rational> cells_;  // row-major, rhs in the last column
  std::vector<Rational> objective_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> find_nonnegative_solution(
    std::size_t variables, std::span<const LinearConstraint> rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].coefficients.size() != variables) {
      throw ValidationError("constraints", "row " + std::to_string(k) + " has " +
                                               std::to_string(rows[k].coefficients.size()) +
                                               " coefficients, expected " +
                                               std::to_string(variables));
    }
  }
  Tableau tableau(variables, rows);
  if (!tableau.solve()) return std::nullopt;
  return tableau.solution();
}

}  // namespace pblottery
