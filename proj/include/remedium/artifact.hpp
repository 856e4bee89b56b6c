#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remedium/constraints.hpp"

namespace remedium {

enum class Availability { PolicyOnly, BinaryRewritable, SourceAvailable };

enum class VarOrigin { Channel, Env, Io, Proto, Runtime, Component, Time, Local };

enum class VarKind { Int, Bool, Enum };

enum class SinkKind { OobWrite, OobRead, IntegerOverflow, NullDeref, UnsafeStateOp, LengthMismatch };

std::string_view to_string(Availability a);
std::string_view to_string(VarOrigin o);
std::string_view to_string(VarKind k);
std::string_view to_string(SinkKind k);
Availability availability_from_string(std::string_view s);
VarOrigin var_origin_from_string(std::string_view s);
VarKind var_kind_from_string(std::string_view s);
SinkKind sink_kind_from_string(std::string_view s);

// Constraint family an operational-state variable belongs to. Channel fields
// and locals have none and map to Family::Path.
Family family_of(VarOrigin o);

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Int;
  Value lo = 0;
  Value hi = 0;
  VarOrigin origin = VarOrigin::Env;
  Value init = 0;  // locals only
};

struct FsmTransition {
  Value from = 0;
  Value to = 0;
  Value on = 0;  // message type value
};

struct ChannelFsm {
  std::vector<std::string> states;
  Value initial = 0;
  std::vector<FsmTransition> transitions;

  std::optional<Value> step(Value state, Value type) const;
  std::set<Value> reachable_from(Value state) const;
};

struct ChannelSpec {
  std::string name;
  std::vector<std::string> fields;
  std::string type_field;  // may be empty
  std::string state_var;   // may be empty; holds the FSM state at the read
  std::optional<ChannelFsm> fsm;
  Dnf policy;  // Tier-1 gate: a message matching any cube is dropped
};

struct Expr {
  enum class Kind { Const, Var, Clamp };
  Kind kind = Kind::Const;
  Value k = 0;  // Const value, or offset added to Var
  std::string var;
  Value lo = 0, hi = 0;  // Clamp bounds

  static Expr constant(Value v);
  static Expr var_plus(std::string v, Value offset = 0);
  static Expr clamp(std::string v, Value lo, Value hi);
  bool operator==(const Expr&) const = default;
};

struct Instr {
  enum class Op { Assign, Branch, ReadChannel, Sink, Guard };
  Op op = Op::Assign;
  std::string dest;     // Assign
  Expr expr;            // Assign
  Cube cond;            // Branch (conjunction; empty is always true)
  std::string target;   // Branch target block, empty halts
  std::string channel;  // ReadChannel
  SinkKind sink_kind = SinkKind::OobWrite;
  Cube trigger;         // Sink fires when this holds (empty: always)
  Dnf guard;            // Guard predicate
  std::string handler;  // Guard handler block

  static Instr assign(std::string dest, Expr e);
  static Instr branch(Cube cond, std::string target);
  static Instr read(std::string channel);
  static Instr sink(SinkKind kind, Cube trigger);
  static Instr guard_of(Dnf pred, std::string handler);
  bool operator==(const Instr&) const = default;
};

std::string_view to_string(Instr::Op op);

inline const std::set<std::string> kEntryTags = {"exported",          "network-handler",        "protocol-handler",
                                                 "firmware-service-entry", "task-root",        "startup-routine",
                                                 "scan-root"};

struct Block {
  std::string id;
  std::vector<Instr> instrs;
  std::set<std::string> tags;
  std::vector<std::string> labels;
  std::string inherits;  // inserted blocks: the block whose entity membership they take

  bool is_entry() const;
  bool has_sink() const;
};

struct Edge {
  std::string from;
  std::string to;
  std::optional<Cube> cond;
};

struct ToyArtifact {
  std::string id;
  std::vector<Block> blocks;
  std::vector<Edge> edges;
  Availability availability = Availability::BinaryRewritable;
  std::vector<ChannelSpec> channels;
  std::vector<VarDecl> vars;
  std::set<std::string> observables;
  std::int64_t scan_slack = 1'000'000;  // guard evaluation units allowed per scan cycle
  std::vector<ConstraintAtom> domain_invariants;

  const Block* block(const std::string& id) const;
  Block* block(const std::string& id);
  std::size_t block_index(const std::string& id) const;  // npos if missing
  const VarDecl* var(const std::string& name) const;
  const ChannelSpec* channel(const std::string& name) const;
  ChannelSpec* channel(const std::string& name);
  // Branch/guard targets followed by edge targets, in first-occurrence order.
  std::vector<std::string> successors(const std::string& id) const;
  std::vector<std::string> predecessors(const std::string& id) const;
};

inline const std::set<std::string> kRiskRelations = {"data-flow", "control-dep",          "shared-mem",
                                                     "ipc",       "protocol-interaction", "cross-component-call"};

struct Entity {
  std::string id;
  std::string label;
  double rho = 0.0;
};

struct GraphRelation {
  std::string src;
  std::string dst;
  std::string type;
  bool risk = true;
};

struct Ssckg {
  std::vector<Entity> entities;
  std::vector<GraphRelation> relations;
  std::map<std::string, std::set<std::string>> phi;

  const Entity* entity(const std::string& id) const;
  // Entities whose preimage contains the block.
  std::vector<std::string> entities_of_block(const std::string& block) const;
};

// The 27-token abstract action vocabulary (mirrors data/action_labels.txt).
const std::vector<std::string>& action_labels();
bool is_action_label(const std::string& s);

std::set<std::string> entry_entities(const Ssckg& g, const ToyArtifact& b);
std::set<std::string> reachable_entities(const Ssckg& g, const ToyArtifact& b);

struct Violation {
  std::string code;  // e.g. DanglingPhi, RiskOutOfRange
  std::string where;
  std::string message;
};

std::vector<Violation> validate_case(const ToyArtifact& b, const Ssckg& g);

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variables an instruction reads.
std::vector<std::string> reads_of(const Instr& ins);

}  // namespace remedium
