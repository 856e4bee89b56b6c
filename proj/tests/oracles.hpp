#pragma once

// Brute-force reference implementations shared by the test binaries. None of
// these call into the library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "remedium/constraints.hpp"

namespace oracle {

using remedium::Assignment;
using remedium::Value;

struct Box {
  std::vector<std::string> vars;
  std::vector<std::pair<Value, Value>> bounds;
};

// Calls fn on every assignment of the box in lexicographic order.
inline void for_each_assignment(const Box& box, const std::function<void(const Assignment&)>& fn) {
  Assignment a;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == box.vars.size()) {
      fn(a);
      return;
    }
    for (Value v = box.bounds[i].first; v <= box.bounds[i].second; ++v) {
      a[box.vars[i]] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

// Independent evaluator: compares directly, no tri-state logic.
inline bool holds(const remedium::ConstraintAtom& at, const Assignment& a) {
  using remedium::Relation;
  Value x = a.at(at.var);
  const auto& o = at.operand;
  switch (at.relation) {
    case Relation::InRange: return o.lo <= x && x <= o.hi;
    case Relation::InSet:
    case Relation::FsmPrecedes:
      for (Value v : o.set)
        if (v == x) return true;
      return false;
    default: break;
  }
  Value y = o.kind == remedium::Operand::Kind::VarRef ? a.at(o.var) + o.literal : o.literal;
  switch (at.relation) {
    case Relation::Eq: return x == y;
    case Relation::Neq: return x != y;
    case Relation::Le: return x <= y;
    case Relation::Ge: return x >= y;
    case Relation::Lt: return x < y;
    case Relation::Gt: return x > y;
    default: return false;
  }
}

inline bool holds(const remedium::Formula& f, const Assignment& a) {
  using K = remedium::Formula::Kind;
  if (f.kind == K::Atom) return holds(f.atom, a);
  if (f.kind == K::And) {
    for (const auto& c : f.children)
      if (!holds(c, a)) return false;
    return true;
  }
  for (const auto& c : f.children)
    if (holds(c, a)) return true;
  return false;
}

inline std::vector<Assignment> all_models(const remedium::Formula& f, const Box& box) {
  std::vector<Assignment> out;
  for_each_assignment(box, [&](const Assignment& a) {
    if (holds(f, a)) out.push_back(a);
  });
  return out;
}

// Directed reachability closure by repeated relaxation over an adjacency
// matrix (Warshall).
inline std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (auto [a, b] : edges) r[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

// Plain reduced fraction, kept separate from the library's Ratio.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline Frac frac(std::int64_t n, std::int64_t d) {
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

inline Frac add(Frac a, Frac b) { return frac(a.num * b.den + b.num * a.den, a.den * b.den); }

// Betweenness by explicit enumeration of all simple shortest paths, divided
// by n(n-1).
inline Frac betweenness(std::size_t n, const std::vector<std::pair<int, int>>& edges, int v) {
  if (n <= 1) return {};
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges)
    if (a != b && std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) adj[a].push_back(b);
  Frac total;
  for (int s = 0; s < static_cast<int>(n); ++s)
    for (int t = 0; t < static_cast<int>(n); ++t) {
      if (s == t || s == v || t == v) continue;
      // enumerate every simple path, keep those of minimum length
      std::size_t best = SIZE_MAX;
      std::vector<std::vector<int>> shortest;
      std::vector<int> path{s};
      std::vector<bool> seen(n, false);
      seen[s] = true;
      std::function<void(int)> dfs = [&](int u) {
        if (u == t) {
          if (path.size() < best) {
            best = path.size();
            shortest.clear();
          }
          if (path.size() == best) shortest.push_back(path);
          return;
        }
        for (int w : adj[u]) {
          if (seen[w]) continue;
          seen[w] = true;
          path.push_back(w);
          dfs(w);
          path.pop_back();
          seen[w] = false;
        }
      };
      dfs(s);
      if (shortest.empty()) continue;
      std::int64_t through = 0;
      for (const auto& p : shortest)
        for (int x : p)
          if (x == v) ++through;
      total = add(total, frac(through, static_cast<std::int64_t>(shortest.size())));
    }
  return frac(total.num, total.den * static_cast<std::int64_t>(n * (n - 1)));
}

}  // namespace oracle

namespace oracle {

struct RandomProblem {
  remedium::Formula formula;
  Box box;
};

// Random constraint set over 1..4 variables with domain product <= 1e5. The
// formula always declares every variable's range at top level.
inline RandomProblem random_problem(std::mt19937_64& rng) {
  using namespace remedium;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomProblem p;
  int nvars = pick(1, 4);
  std::uint64_t product = 1;
  std::vector<Formula> parts;
  for (int i = 0; i < nvars; ++i) {
    std::string name = "v" + std::to_string(i);
    Value lo = pick(-20, 20);
    std::uint64_t cap = 100000 / product;
    Value width = std::min<Value>(pick(0, 30), static_cast<Value>(cap) - 1);
    Value hi = lo + std::max<Value>(width, 0);
    product *= static_cast<std::uint64_t>(hi - lo + 1);
    p.box.vars.push_back(name);
    p.box.bounds.emplace_back(lo, hi);
    parts.push_back(Formula::of(make_range(name, lo, hi, Family::Path, AtomOrigin::Domain)));
  }
  const Relation cmp[] = {Relation::Eq, Relation::Neq, Relation::Le, Relation::Ge, Relation::Lt, Relation::Gt};
  auto random_atom = [&]() {
    std::string var = p.box.vars[pick(0, nvars - 1)];
    int kind = pick(0, 9);
    if (kind < 5) return make_atom(var, cmp[pick(0, 5)], pick(-25, 45));
    if (kind < 8) {
      std::string other = p.box.vars[pick(0, nvars - 1)];
      return make_ref_atom(var, cmp[pick(0, 5)], other, pick(-5, 5));
    }
    if (kind == 8) {
      Value lo = pick(-25, 40);
      return make_range(var, lo, lo + pick(0, 15));
    }
    std::vector<Value> vals;
    for (int k = pick(1, 5); k > 0; --k) vals.push_back(pick(-25, 45));
    return make_set(var, vals);
  };
  std::function<Formula(int)> random_formula = [&](int depth) -> Formula {
    int shape = depth <= 0 ? 0 : pick(0, 4);
    if (shape <= 2) {
      auto a = random_atom();
      return pick(0, 4) == 0 ? negate(a) : Formula::of(a);
    }
    std::vector<Formula> kids;
    for (int k = pick(1, 3); k > 0; --k) kids.push_back(random_formula(depth - 1));
    return shape == 3 ? Formula::all(kids) : Formula::any(kids);
  };
  for (int k = pick(1, 5); k > 0; --k) parts.push_back(random_formula(2));
  p.formula = Formula::all(parts);
  return p;
}

}  // namespace oracle
