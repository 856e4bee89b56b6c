#include "remedium/constraints.hpp"

#include <algorithm>
#include <sstream>

namespace remedium {

namespace {

constexpr std::pair<Relation, std::string_view> kRelationNames[] = {
    {Relation::Eq, "eq"},           {Relation::Neq, "neq"},       {Relation::Le, "le"},
    {Relation::Ge, "ge"},           {Relation::Lt, "lt"},         {Relation::Gt, "gt"},
    {Relation::InRange, "in-range"}, {Relation::InSet, "in-set"}, {Relation::FsmPrecedes, "fsm-precedes"},
};

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::Path, "path"},       {Family::Env, "env"},
    {Family::Io, "io"},           {Family::Proto, "proto"},
    {Family::Runtime, "runtime"}, {Family::Component, "component"},
    {Family::Time, "time"},
};

bool compare(Relation r, Value lhs, Value rhs) {
  switch (r) {
    case Relation::Eq: return lhs == rhs;
    case Relation::Neq: return lhs != rhs;
    case Relation::Le: return lhs <= rhs;
    case Relation::Ge: return lhs >= rhs;
    case Relation::Lt: return lhs < rhs;
    case Relation::Gt: return lhs > rhs;
    default: break;
  }
  throw ConstraintError("relation is not a comparison");
}

Relation complement(Relation r) {
  switch (r) {
    case Relation::Eq: return Relation::Neq;
    case Relation::Neq: return Relation::Eq;
    case Relation::Le: return Relation::Gt;
    case Relation::Ge: return Relation::Lt;
    case Relation::Lt: return Relation::Ge;
    case Relation::Gt: return Relation::Le;
    default: break;
  }
  throw ConstraintError("relation has no single-atom complement");
}

std::string operand_sexpr(const Operand& o) {
  std::ostringstream out;
  switch (o.kind) {
    case Operand::Kind::Literal: out << o.literal; break;
    case Operand::Kind::VarRef:
      if (o.literal == 0) {
        out << o.var;
      } else {
        out << "(+ " << o.var << ' ' << o.literal << ')';
      }
      break;
    case Operand::Kind::Range: out << o.lo << ' ' << o.hi; break;
    case Operand::Kind::Set:
      out << '{';
      for (std::size_t i = 0; i < o.set.size(); ++i) out << (i ? " " : "") << o.set[i];
      out << '}';
      break;
    case Operand::Kind::State: out << "state:" << o.state; break;
  }
  return out.str();
}

}  // namespace

std::string_view to_string(Relation r) {
  for (auto [rel, name] : kRelationNames)
    if (rel == r) return name;
  return "?";
}

std::string_view to_string(Family f) {
  for (auto [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "?";
}

std::string_view to_string(AtomOrigin o) {
  switch (o) {
    case AtomOrigin::Path: return "path";
    case AtomOrigin::Prior: return "prior";
    case AtomOrigin::Domain: return "domain";
  }
  return "?";
}

Relation relation_from_string(std::string_view s) {
  for (auto [rel, name] : kRelationNames)
    if (name == s) return rel;
  throw ConstraintError("unknown relation '" + std::string(s) + "'");
}

Family family_from_string(std::string_view s) {
  for (auto [fam, name] : kFamilyNames)
    if (name == s) return fam;
  throw ConstraintError("unknown constraint family '" + std::string(s) + "'");
}

Operand Operand::lit(Value v) {
  Operand o;
  o.kind = Kind::Literal;
  o.literal = v;
  return o;
}

Operand Operand::ref(std::string name, Value offset) {
  Operand o;
  o.kind = Kind::VarRef;
  o.var = std::move(name);
  o.literal = offset;
  return o;
}

Operand Operand::range(Value lo, Value hi) {
  Operand o;
  o.kind = Kind::Range;
  o.lo = lo;
  o.hi = hi;
  return o;
}

Operand Operand::of_set(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Operand o;
  o.kind = Kind::Set;
  o.set = std::move(values);
  return o;
}

Operand Operand::fsm_state(Value state) {
  Operand o;
  o.kind = Kind::State;
  o.state = state;
  return o;
}

ConstraintAtom make_atom(std::string var, Relation r, Value v, Family f) {
  return {std::move(var), r, Operand::lit(v), f, f == Family::Path ? AtomOrigin::Path : AtomOrigin::Prior};
}

ConstraintAtom make_ref_atom(std::string var, Relation r, std::string other, Value offset, Family f) {
  return {std::move(var), r, Operand::ref(std::move(other), offset), f,
          f == Family::Path ? AtomOrigin::Path : AtomOrigin::Prior};
}

ConstraintAtom make_range(std::string var, Value lo, Value hi, Family f, AtomOrigin o) {
  return {std::move(var), Relation::InRange, Operand::range(lo, hi), f, o};
}

ConstraintAtom make_set(std::string var, std::vector<Value> values, Family f) {
  return {std::move(var), Relation::InSet, Operand::of_set(std::move(values)), f,
          f == Family::Path ? AtomOrigin::Path : AtomOrigin::Prior};
}

std::optional<bool> evaluate(const ConstraintAtom& atom, const Assignment& a) {
  auto it = a.find(atom.var);
  if (it == a.end()) return std::nullopt;
  const Value x = it->second;
  const Operand& o = atom.operand;
  switch (atom.relation) {
    case Relation::InRange: return x >= o.lo && x <= o.hi;
    case Relation::InSet:
    case Relation::FsmPrecedes:
      if (atom.relation == Relation::FsmPrecedes && (o.kind != Operand::Kind::State || !o.resolved))
        throw ConstraintError("fsm-precedes atom on '" + atom.var + "' was not resolved against a channel FSM");
      return std::binary_search(o.set.begin(), o.set.end(), x);
    default: break;
  }
  Value rhs = o.literal;
  if (o.kind == Operand::Kind::VarRef) {
    auto jt = a.find(o.var);
    if (jt == a.end()) return std::nullopt;
    rhs = jt->second + o.literal;
  } else if (o.kind != Operand::Kind::Literal) {
    throw ConstraintError("comparison atom on '" + atom.var + "' needs a literal or variable operand");
  }
  return compare(atom.relation, x, rhs);
}

std::vector<std::string> variables_of(const ConstraintAtom& atom) {
  std::vector<std::string> out{atom.var};
  if (atom.operand.kind == Operand::Kind::VarRef) out.push_back(atom.operand.var);
  return out;
}

Formula Formula::of(ConstraintAtom a) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(a);
  return f;
}

Formula Formula::all(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(parts);
  return f;
}

Formula Formula::any(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

Formula Formula::conjunction(const std::vector<ConstraintAtom>& atoms) {
  std::vector<Formula> parts;
  parts.reserve(atoms.size());
  for (const auto& a : atoms) parts.push_back(of(a));
  return all(std::move(parts));
}

std::optional<bool> evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind) {
    case Formula::Kind::Atom: return evaluate(f.atom, a);
    case Formula::Kind::And: {
      bool unknown = false;
      for (const auto& c : f.children) {
        auto v = evaluate(c, a);
        if (!v) unknown = true;
        else if (!*v) return false;
      }
      if (unknown) return std::nullopt;
      return true;
    }
    case Formula::Kind::Or: {
      bool unknown = false;
      for (const auto& c : f.children) {
        auto v = evaluate(c, a);
        if (!v) unknown = true;
        else if (*v) return true;
      }
      if (unknown) return std::nullopt;
      return false;
    }
  }
  return std::nullopt;
}

Formula negate(const ConstraintAtom& atom) {
  const Operand& o = atom.operand;
  auto with = [&](Relation r, Operand op) {
    ConstraintAtom n = atom;
    n.relation = r;
    n.operand = std::move(op);
    return Formula::of(std::move(n));
  };
  switch (atom.relation) {
    case Relation::InRange:
      return Formula::any({with(Relation::Lt, Operand::lit(o.lo)), with(Relation::Gt, Operand::lit(o.hi))});
    case Relation::InSet:
    case Relation::FsmPrecedes: {
      std::vector<Formula> parts;
      for (Value v : o.set) parts.push_back(with(Relation::Neq, Operand::lit(v)));
      return Formula::all(std::move(parts));
    }
    default: break;
  }
  ConstraintAtom n = atom;
  n.relation = complement(atom.relation);
  return Formula::of(std::move(n));
}

Formula negate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: return negate(f.atom);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children.size());
      for (const auto& c : f.children) parts.push_back(negate(c));
      return f.kind == Formula::Kind::And ? Formula::any(std::move(parts)) : Formula::all(std::move(parts));
    }
  }
  return f;
}

void collect_variables(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::Atom) {
    for (auto& v : variables_of(f.atom)) out.push_back(std::move(v));
    return;
  }
  for (const auto& c : f.children) collect_variables(c, out);
}

void collect_conjuncts(const Formula& f, std::vector<const ConstraintAtom*>& out) {
  if (f.kind == Formula::Kind::Atom) {
    out.push_back(&f.atom);
  } else if (f.kind == Formula::Kind::And) {
    for (const auto& c : f.children) collect_conjuncts(c, out);
  } else if (f.children.size() == 1) {
    collect_conjuncts(f.children.front(), out);
  }
}

std::size_t atom_count(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) return 1;
  std::size_t n = 0;
  for (const auto& c : f.children) n += atom_count(c);
  return n;
}

std::string to_sexpr(const ConstraintAtom& atom) {
  std::ostringstream out;
  out << '(' << to_string(atom.relation) << ' ' << atom.var << ' ' << operand_sexpr(atom.operand) << ')';
  return out.str();
}

std::string to_sexpr(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) return to_sexpr(f.atom);
  std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
  for (const auto& c : f.children) out += ' ' + to_sexpr(c);
  return out + ')';
}

Formula to_formula(const Dnf& dnf) {
  std::vector<Formula> cubes;
  cubes.reserve(dnf.size());
  for (const auto& cube : dnf) cubes.push_back(Formula::conjunction(cube));
  return Formula::any(std::move(cubes));
}

bool dnf_holds(const Dnf& dnf, const Assignment& a) {
  for (const auto& cube : dnf) {
    bool all = true;
    for (const auto& atom : cube) {
      auto v = evaluate(atom, a);
      if (!v || !*v) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::string to_sexpr(const Dnf& dnf) { return to_sexpr(to_formula(dnf)); }

}  // namespace remedium
