#include "remedium/artifact.hpp"

#include <algorithm>
#include <deque>

namespace remedium {

namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E e) {
  for (auto& [k, v] : table)
    if (k == e) return v;
  return "?";
}

template <typename E, std::size_t N>
E parse(const std::pair<E, std::string_view> (&table)[N], std::string_view s, const char* what) {
  for (auto& [k, v] : table)
    if (v == s) return k;
  throw ValidationError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::pair<Availability, std::string_view> kAvailability[] = {
    {Availability::PolicyOnly, "policy-only"},
    {Availability::BinaryRewritable, "binary-rewritable"},
    {Availability::SourceAvailable, "source-available"},
};

constexpr std::pair<VarOrigin, std::string_view> kOrigins[] = {
    {VarOrigin::Channel, "channel"}, {VarOrigin::Env, "env"},         {VarOrigin::Io, "io"},
    {VarOrigin::Proto, "proto"},     {VarOrigin::Runtime, "runtime"}, {VarOrigin::Component, "component"},
    {VarOrigin::Time, "time"},       {VarOrigin::Local, "local"},
};

constexpr std::pair<VarKind, std::string_view> kKinds[] = {
    {VarKind::Int, "int"}, {VarKind::Bool, "bool"}, {VarKind::Enum, "enum"}};

constexpr std::pair<SinkKind, std::string_view> kSinks[] = {
    {SinkKind::OobWrite, "oob-write"},           {SinkKind::OobRead, "oob-read"},
    {SinkKind::IntegerOverflow, "integer-overflow"}, {SinkKind::NullDeref, "null-deref"},
    {SinkKind::UnsafeStateOp, "unsafe-state-op"}, {SinkKind::LengthMismatch, "length-mismatch"},
};

const std::vector<std::string> kActionLabels = {
    "recv-frame",     "parse-header",  "parse-field",   "decode-function-code", "lookup-register", "read-register",
    "write-register", "write-coil",    "copy-buffer",   "compute-length",       "validate-length", "alloc-buffer",
    "free-buffer",    "deref-pointer", "update-state",  "check-state",          "dispatch-handler", "send-response",
    "read-config",    "write-config",  "read-sensor",   "write-actuator",       "scan-cycle",      "log-event",
    "auth-check",     "ipc-send",      "ipc-recv",
};

}  // namespace

std::string_view to_string(Availability a) { return name_of(kAvailability, a); }
std::string_view to_string(VarOrigin o) { return name_of(kOrigins, o); }
std::string_view to_string(VarKind k) { return name_of(kKinds, k); }
std::string_view to_string(SinkKind k) { return name_of(kSinks, k); }
Availability availability_from_string(std::string_view s) { return parse(kAvailability, s, "availability class"); }
VarOrigin var_origin_from_string(std::string_view s) { return parse(kOrigins, s, "variable origin"); }
VarKind var_kind_from_string(std::string_view s) { return parse(kKinds, s, "variable kind"); }
SinkKind sink_kind_from_string(std::string_view s) { return parse(kSinks, s, "sink kind"); }

std::string_view to_string(Instr::Op op) {
  switch (op) {
    case Instr::Op::Assign: return "assign";
    case Instr::Op::Branch: return "branch";
    case Instr::Op::ReadChannel: return "read";
    case Instr::Op::Sink: return "sink";
    case Instr::Op::Guard: return "guard";
  }
  return "?";
}

Family family_of(VarOrigin o) {
  switch (o) {
    case VarOrigin::Env: return Family::Env;
    case VarOrigin::Io: return Family::Io;
    case VarOrigin::Proto: return Family::Proto;
    case VarOrigin::Runtime: return Family::Runtime;
    case VarOrigin::Component: return Family::Component;
    case VarOrigin::Time: return Family::Time;
    default: return Family::Path;
  }
}

const std::vector<std::string>& action_labels() { return kActionLabels; }

bool is_action_label(const std::string& s) {
  return std::find(kActionLabels.begin(), kActionLabels.end(), s) != kActionLabels.end();
}

std::optional<Value> ChannelFsm::step(Value state, Value type) const {
  for (const auto& t : transitions)
    if (t.from == state && t.on == type) return t.to;
  return std::nullopt;
}

std::set<Value> ChannelFsm::reachable_from(Value state) const {
  std::set<Value> seen{state};
  std::deque<Value> work{state};
  while (!work.empty()) {
    Value s = work.front();
    work.pop_front();
    for (const auto& t : transitions)
      if (t.from == s && seen.insert(t.to).second) work.push_back(t.to);
  }
  return seen;
}

Expr Expr::constant(Value v) {
  Expr e;
  e.kind = Kind::Const;
  e.k = v;
  return e;
}

Expr Expr::var_plus(std::string v, Value offset) {
  Expr e;
  e.kind = Kind::Var;
  e.var = std::move(v);
  e.k = offset;
  return e;
}

Expr Expr::clamp(std::string v, Value lo, Value hi) {
  Expr e;
  e.kind = Kind::Clamp;
  e.var = std::move(v);
  e.lo = lo;
  e.hi = hi;
  return e;
}

Instr Instr::assign(std::string dest, Expr e) {
  Instr i;
  i.op = Op::Assign;
  i.dest = std::move(dest);
  i.expr = std::move(e);
  return i;
}

Instr Instr::branch(Cube cond, std::string target) {
  Instr i;
  i.op = Op::Branch;
  i.cond = std::move(cond);
  i.target = std::move(target);
  return i;
}

Instr Instr::read(std::string channel) {
  Instr i;
  i.op = Op::ReadChannel;
  i.channel = std::move(channel);
  return i;
}

Instr Instr::sink(SinkKind kind, Cube trigger) {
  Instr i;
  i.op = Op::Sink;
  i.sink_kind = kind;
  i.trigger = std::move(trigger);
  return i;
}

Instr Instr::guard_of(Dnf pred, std::string handler) {
  Instr i;
  i.op = Op::Guard;
  i.guard = std::move(pred);
  i.handler = std::move(handler);
  return i;
}

bool Block::is_entry() const {
  for (const auto& t : tags)
    if (kEntryTags.count(t)) return true;
  return false;
}

bool Block::has_sink() const {
  return std::any_of(instrs.begin(), instrs.end(), [](const Instr& i) { return i.op == Instr::Op::Sink; });
}

const Block* ToyArtifact::block(const std::string& bid) const {
  for (const auto& b : blocks)
    if (b.id == bid) return &b;
  return nullptr;
}

Block* ToyArtifact::block(const std::string& bid) {
  for (auto& b : blocks)
    if (b.id == bid) return &b;
  return nullptr;
}

std::size_t ToyArtifact::block_index(const std::string& bid) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].id == bid) return i;
  return std::string::npos;
}

const VarDecl* ToyArtifact::var(const std::string& name) const {
  for (const auto& v : vars)
    if (v.name == name) return &v;
  return nullptr;
}

const ChannelSpec* ToyArtifact::channel(const std::string& name) const {
  for (const auto& c : channels)
    if (c.name == name) return &c;
  return nullptr;
}

ChannelSpec* ToyArtifact::channel(const std::string& name) {
  for (auto& c : channels)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ToyArtifact::successors(const std::string& bid) const {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  if (const Block* b = block(bid)) {
    for (const auto& ins : b->instrs) {
      if (ins.op == Instr::Op::Branch) add(ins.target);
      if (ins.op == Instr::Op::Guard) add(ins.handler);
    }
  }
  for (const auto& e : edges)
    if (e.from == bid) add(e.to);
  return out;
}

std::vector<std::string> ToyArtifact::predecessors(const std::string& bid) const {
  std::vector<std::string> out;
  for (const auto& b : blocks) {
    auto succ = successors(b.id);
    if (std::find(succ.begin(), succ.end(), bid) != succ.end()) out.push_back(b.id);
  }
  return out;
}

const Entity* Ssckg::entity(const std::string& eid) const {
  for (const auto& e : entities)
    if (e.id == eid) return &e;
  return nullptr;
}

std::vector<std::string> Ssckg::entities_of_block(const std::string& blk) const {
  std::vector<std::string> out;
  for (const auto& [eid, blocks] : phi)
    if (blocks.count(blk)) out.push_back(eid);
  return out;
}

std::set<std::string> entry_entities(const Ssckg& g, const ToyArtifact& b) {
  std::set<std::string> out;
  for (const auto& [eid, blocks] : g.phi) {
    if (!g.entity(eid)) continue;
    for (const auto& bid : blocks) {
      const Block* blk = b.block(bid);
      if (!blk) throw ValidationError("phi of entity '" + eid + "' references missing block '" + bid + "'");
      if (blk->is_entry()) {
        out.insert(eid);
        break;
      }
    }
  }
  return out;
}

std::set<std::string> reachable_entities(const Ssckg& g, const ToyArtifact& b) {
  std::set<std::string> seen = entry_entities(g, b);
  std::deque<std::string> work(seen.begin(), seen.end());
  while (!work.empty()) {
    std::string e = work.front();
    work.pop_front();
    for (const auto& r : g.relations)
      if (r.risk && r.src == e && g.entity(r.dst) && seen.insert(r.dst).second) work.push_back(r.dst);
  }
  return seen;
}

std::vector<std::string> reads_of(const Instr& ins) {
  std::vector<std::string> out;
  auto from_cube = [&](const Cube& c) {
    for (const auto& a : c)
      for (auto& v : variables_of(a)) out.push_back(std::move(v));
  };
  switch (ins.op) {
    case Instr::Op::Assign:
      if (ins.expr.kind != Expr::Kind::Const) out.push_back(ins.expr.var);
      break;
    case Instr::Op::Branch: from_cube(ins.cond); break;
    case Instr::Op::Sink: from_cube(ins.trigger); break;
    case Instr::Op::Guard:
      for (const auto& c : ins.guard) from_cube(c);
      break;
    case Instr::Op::ReadChannel: break;
  }
  return out;
}

std::vector<Violation> validate_case(const ToyArtifact& b, const Ssckg& g) {
  std::vector<Violation> out;
  auto flag = [&](std::string code, std::string where, std::string msg) {
    out.push_back({std::move(code), std::move(where), std::move(msg)});
  };

  std::set<std::string> var_names;
  for (const auto& v : b.vars) {
    if (!var_names.insert(v.name).second) flag("DuplicateVariable", v.name, "variable declared twice");
    if (v.lo > v.hi) flag("EmptyDomain", v.name, "lo exceeds hi");
    if (v.kind == VarKind::Bool && (v.lo != 0 || v.hi != 1)) flag("BadDomain", v.name, "bool must range over [0,1]");
    if (v.origin == VarOrigin::Local && (v.init < v.lo || v.init > v.hi))
      flag("BadDomain", v.name, "local init outside its domain");
  }
  auto check_var = [&](const std::string& name, const std::string& where) {
    if (!var_names.count(name)) flag("UndeclaredVariable", where, "'" + name + "' is not declared");
  };

  for (const auto& ch : b.channels) {
    for (const auto& f : ch.fields) {
      check_var(f, "channel " + ch.name);
      const VarDecl* d = b.var(f);
      if (d && d->origin != VarOrigin::Channel) flag("BadChannelField", ch.name, "'" + f + "' is not a channel variable");
    }
    if (!ch.type_field.empty() && std::find(ch.fields.begin(), ch.fields.end(), ch.type_field) == ch.fields.end())
      flag("BadChannelField", ch.name, "type field '" + ch.type_field + "' is not a field");
    if (!ch.state_var.empty()) {
      check_var(ch.state_var, "channel " + ch.name);
      if (!ch.fsm) flag("MissingFsm", ch.name, "state variable without an FSM");
    }
    if (ch.fsm) {
      Value n = static_cast<Value>(ch.fsm->states.size());
      auto in = [&](Value s) { return s >= 0 && s < n; };
      if (!in(ch.fsm->initial)) flag("BadFsm", ch.name, "initial state out of range");
      for (const auto& t : ch.fsm->transitions)
        if (!in(t.from) || !in(t.to)) flag("BadFsm", ch.name, "transition endpoint out of range");
      if (ch.type_field.empty()) flag("BadFsm", ch.name, "FSM without a type field");
      if (const VarDecl* d = b.var(ch.state_var); d && (d->lo != 0 || d->hi != n - 1))
        flag("BadFsm", ch.name, "state variable domain must be [0, #states-1]");
    }
  }

  for (const auto& o : b.observables) check_var(o, "observables");

  std::set<std::string> ids;
  bool any_entry = false;
  for (const auto& blk : b.blocks) {
    if (!ids.insert(blk.id).second) flag("DuplicateBlock", blk.id, "block id is not unique");
    any_entry = any_entry || blk.is_entry();
    for (const auto& t : blk.tags)
      if (!kEntryTags.count(t)) flag("UnknownTag", blk.id, "tag '" + t + "'");
    for (const auto& l : blk.labels)
      if (!is_action_label(l)) flag("UnknownLabel", blk.id, "label '" + l + "'");
  }
  if (!any_entry) flag("NoEntry", b.id, "no block carries an entry tag");

  std::map<std::string, std::set<std::string>> edge_targets;
  for (const auto& e : b.edges) {
    if (!ids.count(e.from)) flag("DanglingEdge", e.from + "->" + e.to, "source block missing");
    if (!ids.count(e.to)) flag("DanglingEdge", e.from + "->" + e.to, "target block missing");
    edge_targets[e.from].insert(e.to);
    if (e.cond)
      for (const auto& a : *e.cond)
        for (const auto& v : variables_of(a)) check_var(v, "edge " + e.from + "->" + e.to);
  }

  for (const auto& blk : b.blocks) {
    for (const auto& ins : blk.instrs) {
      for (const auto& v : reads_of(ins)) check_var(v, blk.id);
      switch (ins.op) {
        case Instr::Op::Assign: check_var(ins.dest, blk.id); break;
        case Instr::Op::ReadChannel:
          if (!b.channel(ins.channel)) flag("UnknownChannel", blk.id, "channel '" + ins.channel + "'");
          break;
        case Instr::Op::Branch:
          if (!ins.target.empty() && !ids.count(ins.target))
            flag("DanglingBranch", blk.id, "branch target '" + ins.target + "' missing");
          if (edge_targets[blk.id].count(ins.target))
            flag("AmbiguousBranch", blk.id, "branch target '" + ins.target + "' is also an edge target");
          break;
        case Instr::Op::Guard:
          if (!ids.count(ins.handler)) flag("DanglingBranch", blk.id, "guard handler '" + ins.handler + "' missing");
          if (edge_targets[blk.id].count(ins.handler))
            flag("AmbiguousBranch", blk.id, "guard handler '" + ins.handler + "' is also an edge target");
          for (const auto& v : reads_of(ins))
            if (!b.observables.count(v)) flag("UnobservableGuard", blk.id, "guard reads '" + v + "'");
          break;
        case Instr::Op::Sink: break;
      }
    }
  }

  std::set<std::string> eids;
  for (const auto& e : g.entities) {
    if (!eids.insert(e.id).second) flag("DuplicateEntity", e.id, "entity id is not unique");
    if (!(e.rho >= 0.0 && e.rho <= 1.0)) flag("RiskOutOfRange", e.id, "rho = " + std::to_string(e.rho));
    if (!is_action_label(e.label)) flag("UnknownLabel", e.id, "label '" + e.label + "'");
    if (!g.phi.count(e.id)) flag("PhiNotTotal", e.id, "entity has no phi entry");
  }
  for (const auto& [eid, blocks] : g.phi) {
    if (!eids.count(eid)) flag("DanglingPhi", eid, "phi names an unknown entity");
    for (const auto& bid : blocks)
      if (!ids.count(bid)) flag("DanglingPhi", eid, "phi references missing block '" + bid + "'");
  }
  for (const auto& r : g.relations) {
    std::string where = r.src + "->" + r.dst;
    if (!eids.count(r.src) || !eids.count(r.dst)) flag("DanglingRelation", where, "endpoint entity missing");
    if (r.risk && !kRiskRelations.count(r.type))
      flag("UnknownRelationType", where, "'" + r.type + "' is not a risk-relevant relation type");
  }
  return out;
}

}  // namespace remedium
