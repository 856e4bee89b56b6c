#include "remedium/solver.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace remedium {

Domain Domain::interval(Value lo, Value hi) {
  Domain d;
  if (lo <= hi) d.intervals_.emplace_back(lo, hi);
  return d;
}

Domain Domain::points(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Domain d;
  for (Value v : values) {
    if (!d.intervals_.empty() && d.intervals_.back().second + 1 == v) {
      d.intervals_.back().second = v;
    } else {
      d.intervals_.emplace_back(v, v);
    }
  }
  return d;
}

std::uint64_t Domain::size() const {
  std::uint64_t n = 0;
  for (auto [lo, hi] : intervals_) {
    std::uint64_t w = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (w == std::numeric_limits<std::uint64_t>::max() || n + w + 1 < n) return std::numeric_limits<std::uint64_t>::max();
    n += w + 1;
  }
  return n;
}

bool Domain::contains(Value v) const {
  for (auto [lo, hi] : intervals_)
    if (v >= lo && v <= hi) return true;
  return false;
}

Domain Domain::intersect(const Domain& other) const {
  Domain out;
  std::size_t i = 0, j = 0;
  while (i < intervals_.size() && j < other.intervals_.size()) {
    Value lo = std::max(intervals_[i].first, other.intervals_[j].first);
    Value hi = std::min(intervals_[i].second, other.intervals_[j].second);
    if (lo <= hi) out.intervals_.emplace_back(lo, hi);
    if (intervals_[i].second < other.intervals_[j].second) ++i;
    else ++j;
  }
  return out;
}

Domain Domain::unite(const Domain& other) const {
  std::vector<std::pair<Value, Value>> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  std::sort(all.begin(), all.end());
  Domain out;
  for (auto [lo, hi] : all) {
    if (!out.intervals_.empty() && lo <= out.intervals_.back().second + 1 &&
        out.intervals_.back().second != std::numeric_limits<Value>::max()) {
      out.intervals_.back().second = std::max(out.intervals_.back().second, hi);
    } else if (!out.intervals_.empty() && out.intervals_.back().second == std::numeric_limits<Value>::max()) {
      continue;
    } else {
      out.intervals_.emplace_back(lo, hi);
    }
  }
  return out;
}

Domain Domain::without(Value v) const {
  Domain out;
  for (auto [lo, hi] : intervals_) {
    if (v < lo || v > hi) {
      out.intervals_.emplace_back(lo, hi);
      continue;
    }
    if (lo < v) out.intervals_.emplace_back(lo, v - 1);
    if (v < hi) out.intervals_.emplace_back(v + 1, hi);
  }
  return out;
}

Domain Domain::clip(std::optional<Value> lo, std::optional<Value> hi) const {
  return intersect(interval(lo.value_or(std::numeric_limits<Value>::min()),
                            hi.value_or(std::numeric_limits<Value>::max())));
}

std::vector<Value> Domain::values() const {
  std::vector<Value> out;
  for_each([&](Value v) {
    out.push_back(v);
    return true;
  });
  return out;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool is_unary(const ConstraintAtom& a) { return a.operand.kind != Operand::Kind::VarRef; }

Domain narrow(const Domain& d, const ConstraintAtom& a) {
  const Operand& o = a.operand;
  switch (a.relation) {
    case Relation::InRange: return d.clip(o.lo, o.hi);
    case Relation::InSet: return d.intersect(Domain::points(o.set));
    case Relation::FsmPrecedes:
      if (!o.resolved)
        throw ConstraintError("fsm-precedes atom on '" + a.var + "' was not resolved against a channel FSM");
      return d.intersect(Domain::points(o.set));
    case Relation::Eq: return d.clip(o.literal, o.literal);
    case Relation::Neq: return d.without(o.literal);
    case Relation::Le: return d.clip(std::nullopt, o.literal);
    case Relation::Lt: return d.clip(std::nullopt, o.literal - 1);
    case Relation::Ge: return d.clip(o.literal, std::nullopt);
    case Relation::Gt: return d.clip(o.literal + 1, std::nullopt);
  }
  return d;
}

struct Problem {
  std::vector<std::string> order;
  std::map<std::string, Domain> domains;
  bool trivially_unsat = false;
};

std::uint64_t mix(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Problem prepare(const Formula& f, std::uint64_t seed) {
  Problem p;
  std::vector<const ConstraintAtom*> conj;
  collect_conjuncts(f, conj);
  std::set<std::string> declared;
  for (const auto* a : conj) {
    if (a->relation == Relation::InRange || a->relation == Relation::InSet ||
        a->relation == Relation::FsmPrecedes) {
      declared.insert(a->var);
    }
  }
  std::vector<std::string> vars;
  collect_variables(f, vars);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (const auto& v : vars) {
    if (!declared.count(v)) throw ConstraintError("variable '" + v + "' has no declared finite domain");
    p.domains[v] = Domain::interval(std::numeric_limits<Value>::min(), std::numeric_limits<Value>::max());
  }
  for (const auto* a : conj) {
    if (!is_unary(*a)) continue;
    p.domains[a->var] = narrow(p.domains[a->var], *a);
  }
  for (const auto& [name, d] : p.domains)
    if (d.empty()) p.trivially_unsat = true;
  p.order = vars;
  std::stable_sort(p.order.begin(), p.order.end(), [&](const std::string& a, const std::string& b) {
    auto sa = p.domains[a].size(), sb = p.domains[b].size();
    if (sa != sb) return sa < sb;
    return mix(seed, a) < mix(seed, b);
  });
  return p;
}

// Depth-first search. `on_model` returns false to stop. Returns false when the
// budget ran out.
class Search {
 public:
  Search(const Formula& f, const Problem& p, std::int64_t budget) : f_(f), p_(p), budget_(budget) {}

  template <typename OnModel>
  bool run(OnModel&& on_model) {
    stopped_ = false;
    return descend(0, on_model);
  }

  std::int64_t units() const { return units_; }
  bool stopped() const { return stopped_; }

 private:
  template <typename OnModel>
  bool descend(std::size_t depth, OnModel& on_model) {
    if (depth == p_.order.size()) {
      // Only reached for formulas with no variables; the root unit covers it.
      auto v = evaluate(f_, assignment_);
      if (v && *v && !on_model(assignment_)) stopped_ = true;
      return true;
    }
    const std::string& var = p_.order[depth];
    bool ok = true;
    p_.domains.at(var).for_each([&](Value value) {
      if (units_ >= budget_) {
        ok = false;
        return false;
      }
      ++units_;
      assignment_[var] = value;
      auto v = evaluate(f_, assignment_);
      if (v.has_value() && !*v) return true;
      if (depth + 1 == p_.order.size()) {
        if (v.value_or(false) && !on_model(assignment_)) stopped_ = true;
        return !stopped_;
      }
      if (!descend(depth + 1, on_model)) {
        ok = false;
        return false;
      }
      return !stopped_;
    });
    assignment_.erase(var);
    return ok;
  }

  const Formula& f_;
  const Problem& p_;
  std::int64_t budget_;
  std::int64_t units_ = 1;  // the root node, charged by the caller
  bool stopped_ = false;
  Assignment assignment_;
};

}  // namespace

std::map<std::string, Domain> declared_domains(const Formula& f) { return prepare(f, 0).domains; }

SolveVerdict solve(const Formula& f, std::int64_t budget_units, std::uint64_t seed) {
  SolveVerdict out;
  if (budget_units <= 0) return out;
  Problem p = prepare(f, seed);
  out.units_spent = 1;
  if (p.trivially_unsat) {
    out.status = SolveStatus::Unsat;
    return out;
  }
  Search search(f, p, budget_units);
  bool finished = search.run([&](const Assignment& a) {
    out.model = a;
    return false;
  });
  out.units_spent = search.units();
  if (search.stopped()) out.status = SolveStatus::Sat;
  else if (finished) out.status = SolveStatus::Unsat;
  else out.status = SolveStatus::Unknown;
  return out;
}

SolveVerdict solve(const std::vector<ConstraintAtom>& atoms, std::int64_t budget_units, std::uint64_t seed) {
  return solve(Formula::conjunction(atoms), budget_units, seed);
}

ModelEnumeration enumerate_models(const Formula& f, std::int64_t budget_units, std::size_t limit,
                                  std::uint64_t seed) {
  ModelEnumeration out;
  if (budget_units <= 0) return out;
  Problem p = prepare(f, seed);
  out.units_spent = 1;
  if (p.trivially_unsat) {
    out.complete = true;
    return out;
  }
  Search search(f, p, budget_units);
  bool finished = search.run([&](const Assignment& a) {
    out.models.push_back(a);
    return out.models.size() < limit;
  });
  out.units_spent = search.units();
  out.complete = finished && !search.stopped();
  return out;
}

namespace {

using Cell = std::vector<Domain>;  // one value set per projected variable

// Atoms describing `values` for `var`; empty when they cover the universe.
// Several atoms mean alternatives (one cube each).
std::vector<std::optional<ConstraintAtom>> describe(const std::string& var, const Domain& values,
                                                    const Domain& universe) {
  if (universe.intersect(values).size() == universe.size()) return {std::nullopt};
  const auto& iv = values.intervals();
  if (iv.size() == 1) {
    auto [lo, hi] = iv.front();
    return {lo == hi ? make_atom(var, Relation::Eq, lo) : make_range(var, lo, hi)};
  }
  bool points = values.size() <= 64;
  for (auto [lo, hi] : iv) points = points && lo == hi;
  if (points) return {make_set(var, values.values())};
  std::vector<std::optional<ConstraintAtom>> out;
  for (auto [lo, hi] : iv) out.push_back(lo == hi ? make_atom(var, Relation::Eq, lo) : make_range(var, lo, hi));
  return out;
}

// Decision-diagram style: split on the first variable, merge the value sets
// whose residual cells coincide, recurse.
Dnf compress_cells(const std::vector<std::string>& vars, const std::vector<Cell>& cells,
                   const std::map<std::string, Domain>& universe, std::size_t depth) {
  if (cells.empty()) return {};
  if (depth == vars.size()) return {Cube{}};
  // Residual signature -> union of this variable's values.
  std::map<std::vector<std::vector<std::pair<Value, Value>>>, std::pair<Domain, std::vector<Cell>>> groups;
  std::map<std::vector<std::pair<Value, Value>>, std::vector<Cell>> by_head;
  for (const auto& c : cells) by_head[c[depth].intervals()].push_back(c);
  for (auto& [head, rows] : by_head) {
    std::vector<std::vector<std::vector<std::pair<Value, Value>>>> residual;
    for (const auto& r : rows) {
      residual.emplace_back();
      for (std::size_t k = depth + 1; k < vars.size(); ++k) residual.back().push_back(r[k].intervals());
    }
    std::sort(residual.begin(), residual.end());
    std::vector<std::vector<std::pair<Value, Value>>> sig;
    for (auto& row : residual) {
      sig.insert(sig.end(), row.begin(), row.end());
      sig.push_back({});  // row separator
    }
    auto& g = groups[sig];
    for (auto [lo, hi] : head) g.first = g.first.unite(Domain::interval(lo, hi));
    if (g.second.empty()) g.second = rows;
  }
  std::vector<std::pair<Domain, const std::vector<Cell>*>> ordered;
  for (auto& [sig, grp] : groups) ordered.emplace_back(grp.first, &grp.second);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first.intervals() < b.first.intervals(); });
  Dnf out;
  const std::string& var = vars[depth];
  for (auto& [values, rows] : ordered) {
    Dnf tail = compress_cells(vars, *rows, universe, depth + 1);
    for (const auto& head : describe(var, values, universe.at(var)))
      for (const auto& cube : tail) {
        Cube c = cube;
        if (head) c.insert(c.begin(), *head);
        out.push_back(std::move(c));
      }
  }
  return out;
}

// Splits a variable's domain into intervals on which every atom mentioning
// it has a constant truth value. Variables that take part in a variable
// reference are split into single values.
std::vector<Domain> regions(const std::string& var, const Domain& dom, const std::vector<const ConstraintAtom*>& atoms) {
  std::vector<Value> cuts;
  bool pointwise = false;
  for (const auto* a : atoms) {
    bool subject = a->var == var;
    bool referenced = a->operand.kind == Operand::Kind::VarRef && a->operand.var == var;
    if (referenced || (subject && a->operand.kind == Operand::Kind::VarRef)) pointwise = true;
    if (!subject) continue;
    const Operand& o = a->operand;
    switch (a->relation) {
      case Relation::Eq:
      case Relation::Neq:
      case Relation::Le:
      case Relation::Gt:
        cuts.push_back(o.literal);
        cuts.push_back(o.literal + 1);
        break;
      case Relation::Lt:
      case Relation::Ge: cuts.push_back(o.literal); break;
      case Relation::InRange:
        cuts.push_back(o.lo);
        cuts.push_back(o.hi + 1);
        break;
      case Relation::InSet:
      case Relation::FsmPrecedes:
        for (Value v : o.set) {
          cuts.push_back(v);
          cuts.push_back(v + 1);
        }
        break;
    }
  }
  std::vector<Domain> out;
  if (pointwise) {
    dom.for_each([&](Value v) {
      out.push_back(Domain::interval(v, v));
      return true;
    });
    return out;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (auto [lo, hi] : dom.intervals()) {
    Value start = lo;
    for (Value c : cuts) {
      if (c <= start || c > hi) continue;
      out.push_back(Domain::interval(start, c - 1));
      start = c;
    }
    out.push_back(Domain::interval(start, hi));
  }
  return out;
}

void collect_all_atoms(const Formula& f, std::vector<const ConstraintAtom*>& out) {
  if (f.kind == Formula::Kind::Atom) {
    out.push_back(&f.atom);
    return;
  }
  for (const auto& c : f.children) collect_all_atoms(c, out);
}

}  // namespace

Dnf compress_tuples(const std::vector<std::string>& vars, const std::vector<std::vector<Value>>& tuples,
                    const std::map<std::string, Domain>& domains) {
  std::vector<Cell> cells;
  for (const auto& t : tuples) {
    Cell c;
    for (Value v : t) c.push_back(Domain::interval(v, v));
    cells.push_back(std::move(c));
  }
  return compress_cells(vars, cells, domains, 0);
}

Dnf project_observables(const Formula& f, const std::vector<std::string>& observables,
                        std::int64_t budget_units) {
  if (observables.empty()) throw ConstraintError("DegenerateProjection: no observable variables");
  auto domains = declared_domains(f);
  std::vector<std::string> obs;
  for (const auto& v : observables)
    if (domains.count(v) && std::find(obs.begin(), obs.end(), v) == obs.end()) obs.push_back(v);
  if (obs.empty()) throw ConstraintError("DegenerateProjection: observables do not occur in the constraints");
  for (const auto& [name, d] : domains)
    if (d.empty()) return {};
  // Atoms may only be dropped when they cover the declared universe, not the
  // domain already narrowed by constraint atoms.
  std::map<std::string, Domain> universe;
  std::vector<const ConstraintAtom*> conj;
  collect_conjuncts(f, conj);
  for (const auto& v : obs)
    universe[v] = Domain::interval(std::numeric_limits<Value>::min(), std::numeric_limits<Value>::max());
  for (const auto* a : conj)
    if (a->origin == AtomOrigin::Domain && universe.count(a->var)) universe[a->var] = narrow(universe[a->var], *a);

  std::vector<const ConstraintAtom*> every;
  collect_all_atoms(f, every);
  std::vector<std::vector<Domain>> parts;
  for (const auto& v : obs) parts.push_back(regions(v, domains.at(v), every));

  std::vector<Cell> cells;
  Cell current(obs.size());
  std::int64_t spent = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    if (depth == obs.size()) {
      std::vector<Formula> pinned{f};
      for (std::size_t i = 0; i < obs.size(); ++i)
        pinned.push_back(Formula::of(make_atom(obs[i], Relation::Eq, current[i].min())));
      auto verdict = solve(Formula::all(std::move(pinned)), budget_units - spent);
      spent += std::max<std::int64_t>(verdict.units_spent, 1);
      if (verdict.status == SolveStatus::Unknown || spent > budget_units)
        throw ProjectionBudgetError("projection exhausted its budget");
      if (verdict.status == SolveStatus::Sat) cells.push_back(current);
      return;
    }
    for (const auto& r : parts[depth]) {
      current[depth] = r;
      walk(depth + 1);
    }
  };
  walk(0);
  return compress_cells(obs, cells, universe, 0);
}

Dnf project_observables(const std::vector<ConstraintAtom>& atoms, const std::vector<std::string>& observables,
                        std::int64_t budget_units) {
  return project_observables(Formula::conjunction(atoms), observables, budget_units);
}

}  // namespace remedium
