#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace remedium {

using Value = std::int64_t;
using Assignment = std::map<std::string, Value>;

enum class Relation { Eq, Neq, Le, Ge, Lt, Gt, InRange, InSet, FsmPrecedes };

// Constraint families. `Path` holds branch conditions and assignments along a
// walk; the other six are the operational-state families.
enum class Family { Path, Env, Io, Proto, Runtime, Component, Time };

// Where an atom came from. Domain declarations are never relaxed.
enum class AtomOrigin { Path, Prior, Domain };

inline constexpr Family kStateFamilies[] = {Family::Env,     Family::Io,        Family::Proto,
                                            Family::Runtime, Family::Component, Family::Time};

std::string_view to_string(Relation r);
std::string_view to_string(Family f);
std::string_view to_string(AtomOrigin o);
Relation relation_from_string(std::string_view s);
Family family_from_string(std::string_view s);

struct Operand {
  enum class Kind { Literal, VarRef, Range, Set, State };
  Kind kind = Kind::Literal;
  Value literal = 0;     // Literal value, or offset for VarRef
  std::string var;       // VarRef target
  Value lo = 0, hi = 0;  // Range, inclusive
  std::vector<Value> set;  // Set; for State, the resolved admissible states
  Value state = 0;       // State: the FSM state that must precede
  bool resolved = false; // State: `set` holds the admissible states

  static Operand lit(Value v);
  static Operand ref(std::string name, Value offset = 0);
  static Operand range(Value lo, Value hi);
  static Operand of_set(std::vector<Value> values);
  static Operand fsm_state(Value state);

  bool operator==(const Operand&) const = default;
};

struct ConstraintAtom {
  std::string var;
  Relation relation = Relation::Eq;
  Operand operand;
  Family family = Family::Path;
  AtomOrigin origin = AtomOrigin::Path;

  bool operator==(const ConstraintAtom&) const = default;
};

// Convenience builders used throughout the pipeline and tests.
ConstraintAtom make_atom(std::string var, Relation r, Value v, Family f = Family::Path);
ConstraintAtom make_ref_atom(std::string var, Relation r, std::string other, Value offset = 0,
                             Family f = Family::Path);
ConstraintAtom make_range(std::string var, Value lo, Value hi, Family f = Family::Path,
                          AtomOrigin o = AtomOrigin::Path);
ConstraintAtom make_set(std::string var, std::vector<Value> values, Family f = Family::Path);

// Evaluates an atom on an assignment. Returns nullopt if a referenced variable
// is unassigned. FsmPrecedes must already carry its resolved state set.
std::optional<bool> evaluate(const ConstraintAtom& atom, const Assignment& a);

// Variables an atom mentions (the subject and any VarRef target).
std::vector<std::string> variables_of(const ConstraintAtom& atom);

// Boolean structure over atoms. Negation is pushed into the atoms.
struct Formula {
  enum class Kind { Atom, And, Or };
  Kind kind = Kind::And;
  ConstraintAtom atom;
  std::vector<Formula> children;

  static Formula of(ConstraintAtom a);
  static Formula all(std::vector<Formula> parts);
  static Formula any(std::vector<Formula> parts);
  static Formula truth() { return all({}); }
  static Formula falsity() { return any({}); }
  static Formula conjunction(const std::vector<ConstraintAtom>& atoms);
};

// Three-valued evaluation under a partial assignment.
std::optional<bool> evaluate(const Formula& f, const Assignment& a);
Formula negate(const ConstraintAtom& atom);
Formula negate(const Formula& f);
void collect_variables(const Formula& f, std::vector<std::string>& out);
// Top-level conjunctive atoms (descending through nested Ands only).
void collect_conjuncts(const Formula& f, std::vector<const ConstraintAtom*>& out);
std::size_t atom_count(const Formula& f);

// s-expression dump, e.g. (and (gt x 3) (in-range len 0 255)).
std::string to_sexpr(const ConstraintAtom& atom);
std::string to_sexpr(const Formula& f);

// A conjunction of atoms over observable variables; a DNF is a list of cubes.
using Cube = std::vector<ConstraintAtom>;
using Dnf = std::vector<Cube>;

Formula to_formula(const Dnf& dnf);
bool dnf_holds(const Dnf& dnf, const Assignment& a);
std::string to_sexpr(const Dnf& dnf);

class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace remedium
