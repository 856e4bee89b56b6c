#include "remedium/cva.hpp"

#include <algorithm>

#include "remedium/solver.hpp"

namespace remedium {

std::string_view to_string(ReplayStatus s) {
  switch (s) {
    case ReplayStatus::Confirmed: return "confirmed";
    case ReplayStatus::Unavailable: return "unavailable";
    case ReplayStatus::Failed: return "failed";
    case ReplayStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

ReplayStatus replay_status_from_string(std::string_view s) {
  for (ReplayStatus r :
       {ReplayStatus::Confirmed, ReplayStatus::Unavailable, ReplayStatus::Failed, ReplayStatus::NotApplicable})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown replay status '" + std::string(s) + "'");
}

namespace {

void retarget(ToyArtifact& b, const std::string& from, const std::string& to, const std::string& except) {
  for (auto& blk : b.blocks) {
    if (blk.id == except) continue;
    for (auto& ins : blk.instrs) {
      if (ins.op == Instr::Op::Branch && ins.target == from) ins.target = to;
      if (ins.op == Instr::Op::Guard && ins.handler == from) ins.handler = to;
    }
  }
  for (auto& e : b.edges)
    if (e.to == from && e.from != except) e.to = to;
}

std::size_t sink_pos(const Block& blk) {
  for (std::size_t i = 0; i < blk.instrs.size(); ++i)
    if (blk.instrs[i].op == Instr::Op::Sink) return i;
  return blk.instrs.size();
}

void apply_tier2(ToyArtifact& b, const Remedy& r) {
  std::size_t at = b.block_index(r.insertion_block);
  if (at == std::string::npos) throw ApplyError("insertion point '" + r.insertion_block + "' vanished");
  if (r.guard_block.empty() || r.handler_block.empty()) throw ApplyError("guard patch names no blocks");
  if (b.block(r.guard_block) || b.block(r.handler_block)) throw ApplyError("guard block ids already in use");
  retarget(b, r.insertion_block, r.guard_block, "");
  Block guard{r.guard_block, {Instr::guard_of(r.psi, r.handler_block)}, {}, {}, r.insertion_block};
  Block handler{r.handler_block, {}, {}, {}, r.insertion_block};
  b.blocks.insert(b.blocks.begin() + static_cast<std::ptrdiff_t>(at), {std::move(guard), std::move(handler)});
  b.edges.push_back({r.guard_block, r.insertion_block, std::nullopt});
  for (const auto& e : r.handler_edges) b.edges.push_back({r.handler_block, e.to, e.cond});
}

void excise(ToyArtifact& b, const std::string& id) {
  std::string next;
  for (const auto& e : b.edges)
    if (e.from == id && !e.cond) {
      next = e.to;
      break;
    }
  if (next == id) next.clear();
  b.blocks.erase(b.blocks.begin() + static_cast<std::ptrdiff_t>(b.block_index(id)));
  std::vector<Edge> edges;
  for (auto e : b.edges) {
    if (e.from == id) continue;
    if (e.to == id) {
      if (next.empty()) continue;
      e.to = next;
    }
    edges.push_back(std::move(e));
  }
  b.edges = std::move(edges);
  retarget(b, id, next, "");
}

void apply_tier3(ToyArtifact& b, const Remedy& r) {
  Block* blk = b.block(r.target_block);
  if (!blk) throw ApplyError("target block '" + r.target_block + "' vanished");
  const std::string& t = r.template_id;
  if (t == "length-recompute") {
    excise(b, r.target_block);
    return;
  }
  std::vector<Instr> added;
  std::size_t pos = sink_pos(*blk);
  if (t == "bounds-check-insert" || t == "null-guard" || t == "state-precondition") {
    if (r.psi.empty()) throw ApplyError("template " + t + " has no condition");
    for (const auto& cube : r.psi) added.push_back(Instr::branch(cube, ""));
    if (t == "state-precondition") pos = 0;
  } else if (t == "input-clamp") {
    auto need = [&](const char* k) {
      auto it = r.params.find(k);
      if (it == r.params.end()) throw ApplyError(std::string("input-clamp lacks parameter ") + k);
      return it->second;
    };
    added.push_back(Instr::assign(need("var"), Expr::clamp(need("var"), std::stoll(need("lo")), std::stoll(need("hi")))));
  } else {
    throw ApplyError("unknown template '" + t + "'");
  }
  blk->instrs.insert(blk->instrs.begin() + static_cast<std::ptrdiff_t>(pos), added.begin(), added.end());
}

}  // namespace

ToyArtifact apply_remedy(const ToyArtifact& b, const Remedy& r) {
  ToyArtifact out = b;
  switch (r.tier) {
    case 1: {
      ChannelSpec* ch = out.channel(r.channel);
      if (!ch) throw ApplyError("channel '" + r.channel + "' does not exist");
      ch->policy.insert(ch->policy.end(), r.gate.begin(), r.gate.end());
      break;
    }
    case 2: apply_tier2(out, r); break;
    case 3: apply_tier3(out, r); break;
    default: throw ApplyError("tier " + std::to_string(r.tier) + " is not a remedy tier");
  }
  return out;
}

Ssckg rebuild_ssckg(const ToyArtifact& b_prime, const Ssckg& g) {
  Ssckg out = g;
  std::set<std::string> gone;
  for (auto& [e, blocks] : out.phi) {
    const auto& before = g.phi.at(e);
    std::set<std::string> kept;
    for (const auto& id : blocks)
      if (b_prime.block(id)) kept.insert(id);
    for (const auto& blk : b_prime.blocks)
      if (!blk.inherits.empty() && before.count(blk.inherits)) kept.insert(blk.id);
    if (!before.empty() && kept.empty()) gone.insert(e);
    blocks = std::move(kept);
  }
  if (gone.empty()) return out;
  for (const auto& e : gone) out.phi.erase(e);
  std::erase_if(out.entities, [&](const Entity& e) { return gone.count(e.id) > 0; });
  std::erase_if(out.relations,
                [&](const GraphRelation& r) { return gone.count(r.src) > 0 || gone.count(r.dst) > 0; });
  return out;
}

Bcp bcp(const Ssckg& g, const ToyArtifact& b, const Ssckg& g_prime, const ToyArtifact& b_prime,
        const std::set<std::string>& vuln) {
  auto before = reachable_entities(g, b);
  auto after = reachable_entities(g_prime, b_prime);
  std::int64_t den = 0, num = 0;
  for (const auto& e : before) {
    if (vuln.count(e)) continue;
    ++den;
    if (after.count(e)) ++num;
  }
  Bcp out;
  out.exact = den == 0 ? Ratio::of(1, 1) : Ratio::of(num, den);
  out.value = out.exact.value();
  return out;
}

ReplayOutcome replay(const ToyArtifact& b_prime, const Witness& w, bool harness) {
  return replay(b_prime, w, w.path.empty() ? std::string() : w.path.at(w.encoding.sink_block_index), harness);
}

ReplayOutcome replay(const ToyArtifact& b_prime, const Witness& w, const std::string& sink_block, bool harness) {
  ReplayOutcome out;
  if (!harness) {
    out.status = ReplayStatus::Unavailable;
    out.reason = "no replay harness";
    return out;
  }
  for (const auto& [k, v] : w.state)
    if (!b_prime.var(k)) {
      out.status = ReplayStatus::Failed;
      out.reason = "witness variable '" + k + "' is undeclared";
      return out;
    }
  RunTrace t = run(b_prime, w.start_block, w.as_input());
  out.trace = t.blocks;
  out.sink_reached = std::find(t.sinks_triggered.begin(), t.sinks_triggered.end(), sink_block) != t.sinks_triggered.end();
  if (t.fault) {
    out.status = ReplayStatus::Failed;
    out.reason = t.fault_reason;
  } else if (t.step_bound_hit) {
    out.status = ReplayStatus::Failed;
    out.reason = "step bound hit";
  } else if (out.sink_reached) {
    out.status = ReplayStatus::Failed;
    out.reason = "sink reached";
  } else {
    out.status = ReplayStatus::Confirmed;
  }
  return out;
}

GateReplay gate_replay(const ToyArtifact& b_prime, const BenignTrace& t) {
  GateReplay out;
  for (const auto& ch : b_prime.channels) {
    auto it = t.input.channels.find(ch.name);
    if (it == t.input.channels.end()) continue;
    Value q = ch.fsm ? ch.fsm->initial : 0;
    if (!ch.state_var.empty())
      if (auto s = t.input.state.find(ch.state_var); s != t.input.state.end()) q = s->second;
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      const Message& m = it->second[i];
      Value type = ch.type_field.empty() || !m.count(ch.type_field) ? 0 : m.at(ch.type_field);
      if (policy_blocks(ch, m, q)) {
        out.dropped.push_back({ch.name, i, q, type});
        continue;
      }
      if (!ch.fsm) continue;
      if (auto to = ch.fsm->step(q, type))
        q = *to;
      else
        out.conforms = false;
    }
  }
  return out;
}

namespace {

std::string entry_of(const ToyArtifact& b, const BenignTrace& t) { return t.entry.empty() ? default_entry(b) : t.entry; }

Cube transition_cube(const ChannelSpec& ch, const DroppedMessage& d, const Message& m) {
  Cube c;
  if (!ch.state_var.empty()) c.push_back(make_atom(ch.state_var, Relation::Eq, d.fsm_state));
  if (!ch.type_field.empty()) c.push_back(make_atom(ch.type_field, Relation::Eq, d.type));
  if (c.empty())
    for (const auto& [f, v] : m) c.push_back(make_atom(f, Relation::Eq, v));
  return c;
}

void tier1_checks(const ToyArtifact& b_prime, const Remedy& r, const CheckContext& ctx, SideEffectReport& rep) {
  const auto& traces = *ctx.benign;
  const ChannelSpec* ch = b_prime.channel(r.channel);
  std::size_t blocked = 0;
  std::vector<std::size_t> nonconforming;
  Delta fb = make_delta(DeltaKind::SideEffect, "false-blocking", "", 1);
  Delta pc = make_delta(DeltaKind::SideEffect, "protocol-conformance", "", 1);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    GateReplay gr = gate_replay(b_prime, traces[i]);
    bool hit = false;
    for (const auto& d : gr.dropped) {
      if (d.channel != r.channel || !ch) continue;
      hit = true;
      const Message& m = traces[i].input.channels.at(d.channel).at(d.index);
      Cube cube = transition_cube(*ch, d, m);
      if (std::find(fb.must_not_block.begin(), fb.must_not_block.end(), cube) == fb.must_not_block.end())
        fb.must_not_block.push_back(cube);
    }
    if (hit) ++blocked;
    if (!gr.conforms) {
      nonconforming.push_back(i);
      for (const auto& d : gr.dropped)
        if (ch && d.channel == r.channel) {
          Cube cube = transition_cube(*ch, d, traces[i].input.channels.at(d.channel).at(d.index));
          if (std::find(pc.must_not_block.begin(), pc.must_not_block.end(), cube) == pc.must_not_block.end())
            pc.must_not_block.push_back(cube);
        }
    }
  }
  double rate = traces.empty() ? 0.0 : static_cast<double>(blocked) / static_cast<double>(traces.size());
  CheckResult fbr{rate <= ctx.cfg->tau_block, rate,
                  std::to_string(blocked) + " of " + std::to_string(traces.size()) + " benign traces blocked"};
  CheckResult conf{nonconforming.empty(), static_cast<double>(nonconforming.size()),
                   std::to_string(nonconforming.size()) + " benign traces leave the channel FSM"};
  rep.checks["false-blocking"] = fbr;
  rep.checks["protocol-conformance"] = conf;
  if (!fbr.pass) {
    fb.message = fbr.detail;
    rep.delta = fb;
  } else if (!conf.pass) {
    pc.message = conf.detail;
    rep.delta = pc;
  }
}

void tier2_checks(const ToyArtifact& b, const ToyArtifact& b_prime, const Remedy& r, const CheckContext& ctx,
                  SideEffectReport& rep) {
  const auto& traces = *ctx.benign;
  Delta over = make_delta(DeltaKind::SideEffect, "overblocking", "", 2);
  over.insertion_block = r.insertion_block;
  for (const auto& t : traces) {
    RunTrace rt = run(b_prime, entry_of(b_prime, t), t.input);
    for (const auto& f : rt.guard_firings)
      if (f.block == r.guard_block) {
        over.keep_quiet.push_back(t);
        over.guard_states.push_back(f.snapshot);
        break;
      }
  }
  double over_rate = traces.empty() ? 0.0 : static_cast<double>(over.keep_quiet.size()) / static_cast<double>(traces.size());
  rep.checks["overblocking"] = {over.keep_quiet.empty(), over_rate,
                                std::to_string(over.keep_quiet.size()) + " benign traces fire the guard"};

  std::size_t bypass = 0, tried = 0;
  if (ctx.witness) {
    const Witness& w = *ctx.witness;
    const std::string sink = w.path.at(w.encoding.sink_block_index);
    auto models = enumerate_models(w.constraint, ctx.cfg->t_total, static_cast<std::size_t>(ctx.cfg->underblock_samples),
                                   ctx.cfg->seed);
    for (const auto& m : models.models) {
      Witness x = make_witness(w.encoding, m, w.constraint, b, *ctx.g);
      RunTrace rt = run(b_prime, x.start_block, x.as_input());
      ++tried;
      if (std::find(rt.sinks_triggered.begin(), rt.sinks_triggered.end(), sink) != rt.sinks_triggered.end()) ++bypass;
    }
  }
  rep.checks["underblocking"] = {bypass == 0, static_cast<double>(bypass),
                                 std::to_string(bypass) + " of " + std::to_string(tried) + " witness-class inputs reach the sink"};

  std::int64_t cost = 0;
  for (const auto& cube : r.psi) cost += static_cast<std::int64_t>(cube.size());
  rep.checks["timing"] = {cost <= b.scan_slack, static_cast<double>(cost),
                          "guard costs " + std::to_string(cost) + " units, slack " + std::to_string(b.scan_slack)};

  for (const char* name : {"overblocking", "underblocking", "timing"}) {
    const CheckResult& c = rep.checks[name];
    if (c.pass) continue;
    Delta d = std::string(name) == "overblocking" ? over : make_delta(DeltaKind::SideEffect, name, "", 2);
    d.insertion_block = r.insertion_block;
    d.message = c.detail;
    rep.delta = d;
    break;
  }
}

void tier3_checks(const ToyArtifact& b_prime, const Remedy& r, const CheckContext& ctx, SideEffectReport& rep) {
  auto violations = validate_case(b_prime, rebuild_ssckg(b_prime, *ctx.g));
  std::string wf = violations.empty() ? "ok" : violations.front().code + " at " + violations.front().where;
  rep.checks["well-formedness"] = {violations.empty(), static_cast<double>(violations.size()), wf};

  if (ctx.post_label) {
    bool ok = *ctx.post_label == Label::Unsat;
    rep.checks["re-verification"] = {ok, ok ? 1.0 : 0.0, "post label " + std::string(to_string(*ctx.post_label))};
  }

  std::size_t broken = 0;
  std::string first;
  for (const auto& t : *ctx.benign) {
    RunTrace rt = run(b_prime, entry_of(b_prime, t), t.input);
    for (const auto& a : b_prime.domain_invariants) {
      auto v = evaluate(a, rt.final_state);
      if (!v || !*v) {
        ++broken;
        if (first.empty()) first = to_sexpr(a);
        break;
      }
    }
  }
  rep.checks["domain-invariants"] = {broken == 0, static_cast<double>(broken),
                                     broken == 0 ? "all hold" : std::to_string(broken) + " traces break " + first};

  for (const char* name : {"well-formedness", "re-verification", "domain-invariants"}) {
    auto it = rep.checks.find(name);
    if (it == rep.checks.end() || it->second.pass) continue;
    Delta d = make_delta(DeltaKind::SideEffect, name, it->second.detail, 3);
    d.template_id = r.template_id;
    rep.delta = d;
    break;
  }
}

}  // namespace

SideEffectReport side_effect_checks(int tier, const ToyArtifact& b, const ToyArtifact& b_prime, const Remedy& r,
                                    const CheckContext& ctx) {
  static const std::vector<BenignTrace> none;
  static const Config defaults;
  static const Ssckg empty_graph;
  CheckContext c = ctx;
  if (!c.benign) c.benign = &none;
  if (!c.cfg) c.cfg = &defaults;
  if (!c.g) c.g = &empty_graph;
  SideEffectReport rep;
  switch (tier) {
    case 1: tier1_checks(b_prime, r, c, rep); break;
    case 2: tier2_checks(b, b_prime, r, c, rep); break;
    case 3: tier3_checks(b_prime, r, c, rep); break;
    default: break;
  }
  return rep;
}

bool replay_required(Label label, bool harness) { return label == Label::SatRelaxed || harness; }

std::vector<NeighborPath> displacement_check(const ToyArtifact& b_prime, const Candidate& c,
                                             const std::vector<NeighborPath>& neighbors, const Config& cfg) {
  std::vector<NeighborPath> out;
  for (const auto& n : neighbors) {
    if (n.sat_before || !b_prime.block(n.start_block) || !b_prime.block(n.sink_block)) continue;
    if (sink_reachable(b_prime, c.s_prior, n.start_block, n.sink_block, cfg)) out.push_back({n.start_block, n.sink_block, true});
  }
  return out;
}

std::vector<std::string> nvr_check(const Ssckg& g, const Ssckg& g_prime, const Config& cfg) {
  std::vector<std::string> out;
  for (const auto& e : g_prime.entities)
    if (!g.entity(e.id) && e.rho >= cfg.tau_risk) out.push_back(e.id);
  return out;
}

Validation validate(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Remedy& r, Label label,
                    const Witness& w, const Config& cfg, const ValidationContext& vctx) {
  Validation v;
  auto reject = [&](Delta d) {
    d.tier = r.tier;
    if (r.tier == 2 && d.insertion_block.empty()) d.insertion_block = r.insertion_block;
    if (r.tier == 3 && d.template_id.empty()) d.template_id = r.template_id;
    v.delta = std::move(d);
    return v;
  };

  try {
    v.b_prime = apply_remedy(b, r);
  } catch (const ApplyError& e) {
    v.b_prime = b;
    v.g_prime = g;
    return reject(make_delta(DeltaKind::Reachability, "apply", e.what()));
  }

  ReachabilityResult post = verify(v.b_prime, g, c, cfg);
  v.post_label = post.label;
  if (post.label != Label::Unsat) {
    v.g_prime = rebuild_ssckg(v.b_prime, g);
    return reject(make_delta(DeltaKind::Reachability, "re-verification",
                   "sink still " + std::string(to_string(post.label)) + ": " + post.reason));
  }

  ReplayOutcome rep;
  if (replay_required(label, vctx.harness)) {
    rep = replay(v.b_prime, w, vctx.harness);
    if (rep.status != ReplayStatus::Confirmed) {
      v.g_prime = rebuild_ssckg(v.b_prime, g);
      return reject(make_delta(DeltaKind::Replay, "replay", std::string(to_string(rep.status)) + ": " + rep.reason));
    }
  } else {
    rep.status = ReplayStatus::Unavailable;
    rep.reason = "replay not required";
  }

  v.g_prime = rebuild_ssckg(v.b_prime, g);
  Bcp cov = bcp(g, b, v.g_prime, v.b_prime, w.vuln_entities);
  if (cov.value < cfg.tau_cov) {
    Delta d = make_delta(DeltaKind::Coverage, "bcp", "bcp " + std::to_string(cov.value) + " below " + std::to_string(cfg.tau_cov));
    auto before = reachable_entities(g, b);
    auto after = reachable_entities(v.g_prime, v.b_prime);
    for (const auto& e : before)
      if (!w.vuln_entities.count(e) && !after.count(e)) d.must_remain.push_back(e);
    return reject(std::move(d));
  }

  CheckContext ctx{&vctx.benign, &w, &cfg, &g, post.label};
  SideEffectReport se = side_effect_checks(r.tier, b, v.b_prime, r, ctx);
  if (!se.pass()) return reject(*se.delta);

  Certificate cert;
  cert.post_label = post.label;
  cert.bcp = cov;
  cert.side_effects = se.checks;
  cert.replay = rep;
  cert.displaced = displacement_check(v.b_prime, c, vctx.neighbors, cfg);
  cert.new_high_risk = nvr_check(g, v.g_prime, cfg);
  v.accepted = true;
  v.certificate = std::move(cert);
  return v;
}

}  // namespace remedium
