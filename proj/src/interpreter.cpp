#include "remedium/interpreter.hpp"

#include <algorithm>

namespace remedium {

namespace {

bool cube_holds(const Cube& c, const Assignment& a) {
  for (const auto& atom : c) {
    auto v = evaluate(atom, a);
    if (!v || !*v) return false;
  }
  return true;
}

struct ChannelState {
  std::size_t next = 0;
  Value fsm = 0;
};

}  // namespace

std::string default_entry(const ToyArtifact& b) {
  for (const auto& blk : b.blocks)
    if (blk.is_entry()) return blk.id;
  return b.blocks.empty() ? std::string() : b.blocks.front().id;
}

bool policy_blocks(const ChannelSpec& ch, const Message& m, Value fsm_state) {
  if (ch.policy.empty()) return false;
  Assignment a(m.begin(), m.end());
  if (!ch.state_var.empty()) a[ch.state_var] = fsm_state;
  return dnf_holds(ch.policy, a);
}

RunTrace run(const ToyArtifact& b, const std::string& start, const RunInput& input, std::size_t step_bound) {
  RunTrace t;
  Assignment vars;
  for (const auto& v : b.vars) vars[v.name] = v.origin == VarOrigin::Local ? v.init : v.lo;
  std::map<std::string, ChannelState> chans;
  for (const auto& ch : b.channels) {
    ChannelState cs;
    if (ch.fsm) cs.fsm = ch.fsm->initial;
    if (!ch.state_var.empty()) {
      auto it = input.state.find(ch.state_var);
      if (it != input.state.end()) cs.fsm = it->second;
    }
    chans[ch.name] = cs;
  }
  for (const auto& [k, v] : input.state) {
    if (!b.var(k)) {
      t.fault = true;
      t.fault_reason = "input names undeclared variable '" + k + "'";
      return t;
    }
    vars[k] = v;
  }
  for (const auto& [name, msgs] : input.channels) {
    if (!b.channel(name)) {
      t.fault = true;
      t.fault_reason = "input names unknown channel '" + name + "'";
      return t;
    }
  }

  auto set_var = [&](const std::string& name, Value v) {
    const VarDecl* d = b.var(name);
    if (!d || v < d->lo || v > d->hi) {
      t.fault = true;
      t.fault_reason = "value " + std::to_string(v) + " outside the domain of '" + name + "'";
      return false;
    }
    vars[name] = v;
    return true;
  };

  std::size_t steps = 0;
  std::string pc = start;
  while (!pc.empty()) {
    const Block* blk = b.block(pc);
    if (!blk) {
      t.fault = true;
      t.fault_reason = "jump to missing block '" + pc + "'";
      break;
    }
    t.blocks.push_back(pc);
    std::string jump;
    bool jumped = false;
    bool halted = false;
    for (const auto& ins : blk->instrs) {
      if (++steps > step_bound) {
        t.step_bound_hit = true;
        t.final_state = vars;
        return t;
      }
      switch (ins.op) {
        case Instr::Op::Assign: {
          Value src = ins.expr.kind == Expr::Kind::Const ? 0 : vars.at(ins.expr.var);
          Value v = 0;
          switch (ins.expr.kind) {
            case Expr::Kind::Const: v = ins.expr.k; break;
            case Expr::Kind::Var: v = src + ins.expr.k; break;
            case Expr::Kind::Clamp: v = std::clamp(src, ins.expr.lo, ins.expr.hi); break;
          }
          if (!set_var(ins.dest, v)) halted = true;
          break;
        }
        case Instr::Op::ReadChannel: {
          const ChannelSpec& ch = *b.channel(ins.channel);
          ChannelState& cs = chans[ch.name];
          auto it = input.channels.find(ch.name);
          const std::vector<Message> empty;
          const auto& queue = it == input.channels.end() ? empty : it->second;
          bool got = false;
          while (cs.next < queue.size()) {
            const Message& m = queue[cs.next];
            std::size_t idx = cs.next++;
            Value type = ch.type_field.empty() || !m.count(ch.type_field) ? 0 : m.at(ch.type_field);
            if (policy_blocks(ch, m, cs.fsm)) {
              t.dropped.push_back({ch.name, idx, cs.fsm, type});
              continue;
            }
            for (const auto& f : ch.fields) {
              auto fv = m.find(f);
              if (fv != m.end() && !set_var(f, fv->second)) halted = true;
            }
            if (!ch.state_var.empty()) vars[ch.state_var] = cs.fsm;
            if (ch.fsm) {
              if (auto to = ch.fsm->step(cs.fsm, type)) {
                cs.fsm = *to;
              } else {
                t.fsm_violations.push_back(ch.name + "@" + std::to_string(idx));
              }
            }
            got = true;
            break;
          }
          if (!got) halted = true;  // input exhausted
          break;
        }
        case Instr::Op::Branch:
          if (cube_holds(ins.cond, vars)) {
            jump = ins.target;
            jumped = true;
          }
          break;
        case Instr::Op::Guard:
          if (dnf_holds(ins.guard, vars)) {
            GuardFiring gf{pc, {}};
            for (const auto& o : b.observables) gf.snapshot[o] = vars.at(o);
            t.guard_firings.push_back(std::move(gf));
            jump = ins.handler;
            jumped = true;
          }
          break;
        case Instr::Op::Sink:
          if (cube_holds(ins.trigger, vars)) t.sinks_triggered.push_back(pc);
          break;
      }
      if (jumped || halted) break;
    }
    if (halted) break;
    if (jumped) {
      pc = jump;
      continue;
    }
    if (++steps > step_bound) {
      t.step_bound_hit = true;
      break;
    }
    pc.clear();
    for (const auto& e : b.edges) {
      if (e.from != blk->id) continue;
      if (!e.cond || cube_holds(*e.cond, vars)) {
        pc = e.to;
        break;
      }
    }
  }
  t.final_state = vars;
  return t;
}

}  // namespace remedium
