#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remedium/constraints.hpp"

namespace remedium {

// Finite integer domain stored as sorted, disjoint, inclusive intervals.
class Domain {
 public:
  Domain() = default;
  static Domain interval(Value lo, Value hi);
  static Domain points(std::vector<Value> values);

  bool empty() const { return intervals_.empty(); }
  std::uint64_t size() const;
  bool contains(Value v) const;
  Value min() const { return intervals_.front().first; }

  Domain intersect(const Domain& other) const;
  Domain unite(const Domain& other) const;
  Domain without(Value v) const;
  Domain clip(std::optional<Value> lo, std::optional<Value> hi) const;

  std::vector<Value> values() const;
  const std::vector<std::pair<Value, Value>>& intervals() const { return intervals_; }

  template <typename Fn>
  bool for_each(Fn&& fn) const {
    for (auto [lo, hi] : intervals_)
      for (Value v = lo;; ++v) {
        if (!fn(v)) return false;
        if (v == hi) break;
      }
    return true;
  }

 private:
  std::vector<std::pair<Value, Value>> intervals_;
};

enum class SolveStatus { Sat, Unsat, Unknown };

std::string_view to_string(SolveStatus s);

struct SolveVerdict {
  SolveStatus status = SolveStatus::Unknown;
  Assignment model;  // full assignment when Sat
  std::int64_t units_spent = 0;
};

// Declared domain of every variable mentioned by the formula, taken from its
// top-level unary atoms. Throws ConstraintError for a variable with no
// in-range/in-set declaration.
std::map<std::string, Domain> declared_domains(const Formula& f);

// Ordered backtracking enumeration with forward range pruning. Unary
// top-level atoms narrow domains up front; every other atom is checked as soon
// as its variables are bound. One unit is one evaluation of the formula on a
// candidate assignment (each search node, the empty root included). Variables
// are ordered by domain size, ties broken by a seed-keyed hash; values ascend.
// A budget of zero returns Unknown without looking at the formula.
SolveVerdict solve(const Formula& f, std::int64_t budget_units, std::uint64_t seed = 0);
SolveVerdict solve(const std::vector<ConstraintAtom>& atoms, std::int64_t budget_units,
                   std::uint64_t seed = 0);

struct ModelEnumeration {
  std::vector<Assignment> models;
  bool complete = false;  // false if the budget or `limit` cut the search short
  std::int64_t units_spent = 0;
};

// Every model in enumeration order, up to `limit`.
ModelEnumeration enumerate_models(const Formula& f, std::int64_t budget_units, std::size_t limit,
                                  std::uint64_t seed = 0);

// Existential projection of `atoms` onto `observables`: the returned DNF holds
// on an observable assignment iff it extends to a model. Throws
// ConstraintError("DegenerateProjection") when `observables` is empty and
// ProjectionBudgetError when the per-tuple solves exhaust `budget_units`.
Dnf project_observables(const Formula& f, const std::vector<std::string>& observables,
                        std::int64_t budget_units = 2'000'000);
Dnf project_observables(const std::vector<ConstraintAtom>& atoms,
                        const std::vector<std::string>& observables,
                        std::int64_t budget_units = 2'000'000);

class ProjectionBudgetError : public ConstraintError {
 public:
  using ConstraintError::ConstraintError;
};

// Builds a compact DNF over `vars` from an explicit tuple set. Atoms whose
// value set covers the variable's full domain are dropped.
Dnf compress_tuples(const std::vector<std::string>& vars, const std::vector<std::vector<Value>>& tuples,
                    const std::map<std::string, Domain>& domains);

}  // namespace remedium
