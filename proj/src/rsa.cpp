#include "remedium/rsa.hpp"

#include <algorithm>
#include <sstream>

#include "remedium/cva.hpp"
#include "remedium/solver.hpp"

namespace remedium {

std::string_view to_string(DeltaKind k) {
  switch (k) {
    case DeltaKind::Reachability: return "reachability";
    case DeltaKind::Replay: return "replay";
    case DeltaKind::Coverage: return "coverage";
    case DeltaKind::SideEffect: return "side_effect";
  }
  return "?";
}

DeltaKind delta_kind_from_string(std::string_view s) {
  for (DeltaKind k : {DeltaKind::Reachability, DeltaKind::Replay, DeltaKind::Coverage, DeltaKind::SideEffect})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown rejection kind '" + std::string(s) + "'");
}

Delta make_delta(DeltaKind kind, std::string check, std::string message, int tier) {
  Delta d;
  d.kind = kind;
  d.check = std::move(check);
  d.message = std::move(message);
  d.tier = tier;
  return d;
}

std::string Remedy::describe() const {
  std::ostringstream out;
  out << "tier " << tier;
  if (advisory) out << " advisory";
  switch (tier) {
    case 1: out << " gate on " << channel << ": " << to_sexpr(gate); break;
    case 2: out << " guard before " << insertion_block << ": " << to_sexpr(psi); break;
    default: out << " " << template_id << " at " << target_block; break;
  }
  return out.str();
}

namespace {

Dnf to_dnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: return {{f.atom}};
    case Formula::Kind::Or: {
      Dnf out;
      for (const auto& c : f.children) {
        Dnf d = to_dnf(c);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case Formula::Kind::And: {
      Dnf out{{}};
      for (const auto& c : f.children) {
        Dnf d = to_dnf(c);
        Dnf next;
        for (const auto& l : out)
          for (const auto& r : d) {
            Cube cube = l;
            cube.insert(cube.end(), r.begin(), r.end());
            next.push_back(std::move(cube));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

ConstraintAtom rename_atom(ConstraintAtom a, const std::map<std::string, std::string>& base_of) {
  if (auto it = base_of.find(a.var); it != base_of.end()) a.var = it->second;
  if (a.operand.kind == Operand::Kind::VarRef)
    if (auto it = base_of.find(a.operand.var); it != base_of.end()) a.operand.var = it->second;
  return a;
}

Dnf rename_dnf(const Dnf& d, const std::map<std::string, std::string>& base_of) {
  Dnf out;
  for (const auto& cube : d) {
    Cube c;
    for (const auto& a : cube) c.push_back(rename_atom(a, base_of));
    out.push_back(std::move(c));
  }
  return out;
}

// Drops cubes with no solution inside the declared domains.
Dnf prune(const Dnf& d, const ToyArtifact& b) {
  Dnf out;
  for (const auto& cube : d) {
    std::set<std::string> vars;
    for (const auto& a : cube)
      for (const auto& v : variables_of(a)) vars.insert(v);
    std::vector<ConstraintAtom> atoms;
    for (const auto& v : vars)
      if (const VarDecl* decl = b.var(v)) atoms.push_back(domain_atom(*decl, v));
    atoms.insert(atoms.end(), cube.begin(), cube.end());
    if (solve(atoms, 2'000'000).status != SolveStatus::Unsat) out.push_back(cube);
  }
  return out;
}

// psi ∧ ¬m, as a DNF.
Dnf and_not(const Dnf& psi, const Cube& m, const ToyArtifact& b) {
  if (m.empty()) return {};
  Dnf neg = to_dnf(negate(to_formula({m})));
  Dnf out;
  for (const auto& c : psi)
    for (const auto& n : neg) {
      Cube cube = c;
      cube.insert(cube.end(), n.begin(), n.end());
      out.push_back(std::move(cube));
    }
  return prune(out, b);
}

std::set<std::string> dnf_vars(const Dnf& d) {
  std::set<std::string> out;
  for (const auto& c : d)
    for (const auto& a : c)
      for (const auto& v : variables_of(a)) out.insert(v);
  return out;
}

std::string unique_block_id(const ToyArtifact& b, std::string id) {
  while (b.block(id)) id += "'";
  return id;
}

const Instr* path_sink(const Witness& w, const ToyArtifact& b) {
  const Block* blk = b.block(w.path.at(w.encoding.sink_block_index));
  if (!blk) return nullptr;
  for (const auto& ins : blk->instrs)
    if (ins.op == Instr::Op::Sink) return &ins;
  return nullptr;
}

}  // namespace

const ReadRecord* gate_read(const Witness& w) {
  const ReadRecord* out = nullptr;
  for (const auto& r : w.encoding.reads)
    if (r.walk_index <= w.encoding.sink_block_index) out = &r;
  return out;
}

Remedy synth_tier1(const Candidate& c, const Witness& w, const ToyArtifact& b, const std::vector<Delta>& deltas,
                   bool enforcement) {
  (void)c;
  if (!enforcement) throw TierInfeasible("no enforcement point");
  const ReadRecord* rd = gate_read(w);
  if (!rd) throw TierInfeasible("witness path reads no channel");
  const ChannelSpec* ch = b.channel(rd->channel);
  if (!ch) throw TierInfeasible("channel '" + rd->channel + "' is gone");

  std::vector<Cube> forbidden;
  for (const auto& d : deltas)
    for (const auto& cube : d.must_not_block) forbidden.push_back(cube);
  bool with_state = false;
  for (const auto& cube : forbidden)
    for (const auto& a : cube)
      if (!ch->state_var.empty() && (a.var == ch->state_var)) with_state = true;

  std::vector<std::string> obs;
  std::map<std::string, std::string> base_of;
  for (const auto& [field, version] : rd->field_versions) {
    obs.push_back(version);
    base_of[version] = field;
  }
  if (with_state) {
    const std::string& v = w.encoding.versions_at.at(rd->walk_index).at(ch->state_var);
    obs.push_back(v);
    base_of[v] = ch->state_var;
  }
  Dnf gate;
  try {
    gate = rename_dnf(project_observables(w.constraint, obs), base_of);
  } catch (const ConstraintError& e) {
    throw TierInfeasible(std::string("projection failed: ") + e.what());
  }
  for (const auto& m : forbidden) gate = and_not(gate, m, b);
  if (gate.empty()) throw TierInfeasible("nothing left to gate");

  Remedy r;
  r.tier = 1;
  r.channel = ch->name;
  r.gate = std::move(gate);
  return r;
}

Remedy synth_tier1_advisory(const Candidate& c, const ToyArtifact& b, bool enforcement) {
  if (!enforcement) throw TierInfeasible("no enforcement point");
  std::vector<ConstraintAtom> prior;
  for (const auto& a : c.s_prior.all_atoms()) prior.push_back(resolve_fsm(a, b));
  std::set<std::string> mentioned;
  for (const auto& a : prior)
    for (const auto& v : variables_of(a)) mentioned.insert(v);
  for (const auto& ch : b.channels) {
    std::vector<std::string> obs;
    for (const auto& f : ch.fields)
      if (mentioned.count(f)) obs.push_back(f);
    if (obs.empty()) continue;
    std::vector<ConstraintAtom> atoms;
    for (const auto& v : mentioned) {
      const VarDecl* d = b.var(v);
      if (!d) throw TierInfeasible("prior names undeclared variable '" + v + "'");
      atoms.push_back(domain_atom(*d, v));
    }
    atoms.insert(atoms.end(), prior.begin(), prior.end());
    Dnf gate;
    try {
      gate = project_observables(atoms, obs);
    } catch (const ConstraintError& e) {
      throw TierInfeasible(std::string("projection failed: ") + e.what());
    }
    if (gate.empty()) throw TierInfeasible("prior admits no message");
    Remedy r;
    r.tier = 1;
    r.advisory = true;
    r.channel = ch.name;
    r.gate = std::move(gate);
    return r;
  }
  throw TierInfeasible("prior constrains no channel field");
}

std::map<std::string, std::string> observable_at(const Witness& w, const ToyArtifact& b, std::size_t i) {
  std::map<std::string, std::string> out;
  const auto& versions = w.encoding.versions_at.at(i);
  for (const auto& name : b.observables) {
    const VarDecl* d = b.var(name);
    if (!d) continue;
    if (d->origin == VarOrigin::Channel) {
      bool read = std::any_of(w.encoding.reads.begin(), w.encoding.reads.end(), [&](const ReadRecord& r) {
        return r.walk_index < i && r.field_versions.count(name);
      });
      if (!read) continue;
    }
    if (auto it = versions.find(name); it != versions.end()) out[name] = it->second;
  }
  return out;
}

namespace {

std::optional<Dnf> psi_at(const Witness& w, const ToyArtifact& b, std::size_t i) {
  auto obs = observable_at(w, b, i);
  if (obs.empty()) return std::nullopt;
  std::vector<std::string> names;
  std::map<std::string, std::string> base_of;
  for (const auto& [var, version] : obs) {
    names.push_back(version);
    base_of[version] = var;
  }
  try {
    Dnf d = rename_dnf(project_observables(w.constraint, names), base_of);
    if (d.empty()) return std::nullopt;
    return d;
  } catch (const ConstraintError&) {
    return std::nullopt;
  }
}

Remedy tier2_at(const Witness& w, const ToyArtifact& b, std::size_t i, Dnf psi) {
  Remedy r;
  r.tier = 2;
  r.insertion_block = w.path.at(i);
  r.psi = std::move(psi);
  r.guard_block = unique_block_id(b, "guard@" + r.insertion_block);
  r.handler_block = unique_block_id(b, "handler@" + r.insertion_block);
  if (r.handler_block == r.guard_block) r.handler_block += "'";
  const std::string& sink = w.path.at(w.encoding.sink_block_index);
  for (const auto& e : b.edges)
    if (e.from == sink) r.handler_edges.push_back({r.handler_block, e.to, e.cond});
  return r;
}

bool quiet_on(const ToyArtifact& b, const Remedy& r, const std::vector<BenignTrace>& traces) {
  ToyArtifact bp = apply_remedy(b, r);
  for (const auto& t : traces) {
    RunTrace rt = run(bp, t.entry.empty() ? default_entry(bp) : t.entry, t.input);
    for (const auto& f : rt.guard_firings)
      if (f.block == r.guard_block) return false;
  }
  return true;
}

}  // namespace

Remedy synth_tier2(const Candidate& c, const Witness& w, const ToyArtifact& b, const std::vector<Delta>& deltas) {
  (void)c;
  if (b.availability == Availability::PolicyOnly) throw TierInfeasible("artifact is not rewritable");
  const std::size_t sink = w.encoding.sink_block_index;
  if (sink == 0) throw TierInfeasible("sink sits in the walk's first block");

  // Variables the vulnerable condition needs, taken at the sink block.
  auto at_sink = psi_at(w, b, sink);
  if (!at_sink) throw TierInfeasible("no observable condition separates the witness class");
  std::set<std::string> needed = dnf_vars(*at_sink);

  std::size_t min_index = 1;
  std::vector<BenignTrace> keep_quiet;
  std::vector<Assignment> guard_states;
  for (const auto& d : deltas) {
    if (!d.insertion_block.empty() && (d.kind != DeltaKind::SideEffect || d.check != "overblocking")) {
      for (std::size_t i = 1; i <= sink; ++i)
        if (w.path[i] == d.insertion_block) min_index = std::max(min_index, i + 1);
    }
    keep_quiet.insert(keep_quiet.end(), d.keep_quiet.begin(), d.keep_quiet.end());
    guard_states.insert(guard_states.end(), d.guard_states.begin(), d.guard_states.end());
  }

  std::optional<std::size_t> first_valid;
  for (std::size_t i = min_index; i <= sink; ++i) {
    auto obs = observable_at(w, b, i);
    bool covers = std::all_of(needed.begin(), needed.end(), [&](const std::string& v) { return obs.count(v) > 0; });
    if (!covers) continue;
    auto psi = psi_at(w, b, i);
    if (!psi) continue;
    if (!first_valid) first_valid = i;
    Remedy r = tier2_at(w, b, i, *psi);
    if (keep_quiet.empty() || quiet_on(b, r, keep_quiet)) return r;
  }
  if (!first_valid) throw TierInfeasible("no insertion point observes the guard variables");

  // No point keeps the named traces quiet: carve their states out instead.
  std::size_t i = *first_valid;
  Dnf psi = *psi_at(w, b, i);
  auto obs = observable_at(w, b, i);
  for (const auto& s : guard_states) {
    Cube m;
    for (const auto& [var, v] : s)
      if (obs.count(var)) m.push_back(make_atom(var, Relation::Eq, v));
    psi = and_not(psi, m, b);
  }
  if (psi.empty()) throw TierInfeasible("guard predicate empty after excluding benign states");
  return tier2_at(w, b, i, std::move(psi));
}

const std::vector<std::string>& templates_for(SinkKind k) {
  static const std::map<SinkKind, std::vector<std::string>> lib = {
      {SinkKind::OobWrite, {"bounds-check-insert", "input-clamp", "length-recompute", "state-precondition"}},
      {SinkKind::OobRead, {"bounds-check-insert", "input-clamp", "length-recompute"}},
      {SinkKind::IntegerOverflow, {"input-clamp", "bounds-check-insert"}},
      {SinkKind::NullDeref, {"null-guard", "bounds-check-insert"}},
      {SinkKind::UnsafeStateOp, {"state-precondition", "bounds-check-insert"}},
      {SinkKind::LengthMismatch, {"length-recompute", "bounds-check-insert", "input-clamp"}},
  };
  return lib.at(k);
}

std::vector<Remedy> synth_tier3(const Candidate& c, const Witness& w, const ToyArtifact& b, const Ssckg& g,
                                const std::vector<Delta>& deltas, int k_candidates) {
  if (b.availability != Availability::SourceAvailable) throw TierInfeasible("no source available");
  const std::string target = w.path.at(w.encoding.sink_block_index);
  const Instr* sink = path_sink(w, b);
  if (!sink) throw TierInfeasible("sink block '" + target + "' has no sink");

  std::set<std::string> keep;
  for (const auto& d : deltas) keep.insert(d.must_remain.begin(), d.must_remain.end());
  std::set<std::string> rejected;
  for (const auto& d : deltas)
    if (!d.template_id.empty()) rejected.insert(d.template_id);

  std::vector<std::string> must_remain;
  for (const auto& e : reachable_entities(g, b))
    if (!w.vuln_entities.count(e)) must_remain.push_back(e);
  (void)c;

  std::vector<Remedy> out;
  for (const auto& tid : templates_for(sink->sink_kind)) {
    if (static_cast<int>(out.size()) >= k_candidates) break;
    if (rejected.count(tid)) continue;
    Remedy r;
    r.tier = 3;
    r.template_id = tid;
    r.target_block = target;
    r.must_remain = must_remain;
    if (tid == "bounds-check-insert") {
      if (sink->trigger.empty()) continue;
      r.psi = {sink->trigger};
      r.params["bound"] = to_sexpr(r.psi);
    } else if (tid == "input-clamp") {
      if (sink->trigger.size() != 1) continue;
      const ConstraintAtom& a = sink->trigger.front();
      const VarDecl* d = b.var(a.var);
      if (!d || a.operand.kind != Operand::Kind::Literal) continue;
      Value lo = d->lo, hi = d->hi, k = a.operand.literal;
      switch (a.relation) {
        case Relation::Gt: hi = k; break;
        case Relation::Ge: hi = k - 1; break;
        case Relation::Lt: lo = k; break;
        case Relation::Le: lo = k + 1; break;
        default: continue;
      }
      if (lo > hi) continue;
      r.params["var"] = a.var;
      r.params["lo"] = std::to_string(lo);
      r.params["hi"] = std::to_string(hi);
    } else if (tid == "null-guard") {
      auto it = std::find_if(sink->trigger.begin(), sink->trigger.end(), [](const ConstraintAtom& a) {
        return a.relation == Relation::Eq && a.operand.kind == Operand::Kind::Literal && a.operand.literal == 0;
      });
      if (it == sink->trigger.end()) continue;
      r.psi = {{*it}};
      r.params["var"] = it->var;
    } else if (tid == "state-precondition") {
      std::string q;
      for (const auto& v : b.vars)
        if ((v.origin == VarOrigin::Proto || v.origin == VarOrigin::Runtime) && w.state.count(v.name)) {
          q = v.name;
          break;
        }
      if (q.empty()) continue;
      const auto& versions = w.encoding.versions_at.at(w.encoding.sink_block_index);
      Dnf states;
      try {
        states = rename_dnf(project_observables(w.constraint, {versions.at(q)}), {{versions.at(q), q}});
      } catch (const ConstraintError&) {
        continue;
      }
      if (states.empty() || states.front().empty()) continue;
      r.params["var"] = q;
      r.psi = states;
      r.params["unsafe"] = to_sexpr(states);
    } else if (tid == "length-recompute") {
      bool deletes_kept = false;
      for (const auto& e : keep) {
        auto it = g.phi.find(e);
        if (it != g.phi.end() && it->second.count(target)) deletes_kept = true;
      }
      if (deletes_kept) continue;
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) throw TierInfeasible("no template applies to sink kind " + std::string(to_string(sink->sink_kind)));
  return out;
}

}  // namespace remedium
