#include "remedium/json_io.hpp"

#include <fstream>
#include <sstream>

namespace remedium {

namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

template <typename T>
void opt_to(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void opt_from(const Json& j, const char* key, std::optional<T>& v) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    v.reset();
  else
    v = it->get<T>();
}

}  // namespace

void to_json(Json& j, const ConstraintAtom& a) {
  j = Json{{"var", a.var}, {"rel", std::string(to_string(a.relation))}};
  const Operand& o = a.operand;
  switch (o.kind) {
    case Operand::Kind::Literal: j["value"] = o.literal; break;
    case Operand::Kind::VarRef:
      j["ref"] = o.var;
      if (o.literal != 0) j["offset"] = o.literal;
      break;
    case Operand::Kind::Range:
      j["lo"] = o.lo;
      j["hi"] = o.hi;
      break;
    case Operand::Kind::Set: j["set"] = o.set; break;
    case Operand::Kind::State:
      j["state"] = o.state;
      if (o.resolved) j["set"] = o.set;
      break;
  }
  if (a.family != Family::Path) j["family"] = std::string(to_string(a.family));
  if (a.origin != AtomOrigin::Path) j["origin"] = std::string(to_string(a.origin));
}

void from_json(const Json& j, ConstraintAtom& a) {
  a = ConstraintAtom{};
  a.var = j.at("var").get<std::string>();
  a.relation = relation_from_string(j.at("rel").get<std::string>());
  switch (a.relation) {
    case Relation::InRange: a.operand = Operand::range(j.at("lo").get<Value>(), j.at("hi").get<Value>()); break;
    case Relation::InSet: a.operand = Operand::of_set(j.at("set").get<std::vector<Value>>()); break;
    case Relation::FsmPrecedes:
      a.operand = Operand::fsm_state(j.at("state").get<Value>());
      if (j.contains("set")) {
        a.operand.set = j.at("set").get<std::vector<Value>>();
        a.operand.resolved = true;
      }
      break;
    default:
      if (j.contains("ref"))
        a.operand = Operand::ref(j.at("ref").get<std::string>(), get_or<Value>(j, "offset", 0));
      else
        a.operand = Operand::lit(j.at("value").get<Value>());
  }
  a.family = family_from_string(get_or<std::string>(j, "family", "path"));
  std::string origin = get_or<std::string>(j, "origin", "path");
  a.origin = origin == "prior" ? AtomOrigin::Prior : origin == "domain" ? AtomOrigin::Domain : AtomOrigin::Path;
  if (origin != "path" && origin != "prior" && origin != "domain") throw ManifestError("unknown atom origin '" + origin + "'");
}

void to_json(Json& j, const VarDecl& v) {
  j = Json{{"name", v.name},
           {"kind", std::string(to_string(v.kind))},
           {"lo", v.lo},
           {"hi", v.hi},
           {"origin", std::string(to_string(v.origin))}};
  if (v.origin == VarOrigin::Local) j["init"] = v.init;
}

void from_json(const Json& j, VarDecl& v) {
  v.name = j.at("name").get<std::string>();
  v.kind = var_kind_from_string(get_or<std::string>(j, "kind", "int"));
  v.lo = j.at("lo").get<Value>();
  v.hi = j.at("hi").get<Value>();
  v.origin = var_origin_from_string(j.at("origin").get<std::string>());
  v.init = get_or<Value>(j, "init", 0);
}

void to_json(Json& j, const FsmTransition& t) { j = Json{{"from", t.from}, {"to", t.to}, {"on", t.on}}; }

void from_json(const Json& j, FsmTransition& t) {
  t.from = j.at("from").get<Value>();
  t.to = j.at("to").get<Value>();
  t.on = j.at("on").get<Value>();
}

void to_json(Json& j, const ChannelFsm& f) {
  j = Json{{"states", f.states}, {"initial", f.initial}, {"transitions", f.transitions}};
}

void from_json(const Json& j, ChannelFsm& f) {
  f.states = j.at("states").get<std::vector<std::string>>();
  f.initial = get_or<Value>(j, "initial", 0);
  f.transitions = get_or<std::vector<FsmTransition>>(j, "transitions", {});
}

void to_json(Json& j, const ChannelSpec& c) {
  j = Json{{"name", c.name}, {"fields", c.fields}};
  if (!c.type_field.empty()) j["type_field"] = c.type_field;
  if (!c.state_var.empty()) j["state_var"] = c.state_var;
  opt_to(j, "fsm", c.fsm);
  if (!c.policy.empty()) j["policy"] = c.policy;
}

void from_json(const Json& j, ChannelSpec& c) {
  c.name = j.at("name").get<std::string>();
  c.fields = j.at("fields").get<std::vector<std::string>>();
  c.type_field = get_or<std::string>(j, "type_field", "");
  c.state_var = get_or<std::string>(j, "state_var", "");
  opt_from(j, "fsm", c.fsm);
  c.policy = get_or<Dnf>(j, "policy", {});
}

void to_json(Json& j, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: j = Json{{"kind", "const"}, {"k", e.k}}; break;
    case Expr::Kind::Var: j = Json{{"kind", "var"}, {"var", e.var}, {"k", e.k}}; break;
    case Expr::Kind::Clamp: j = Json{{"kind", "clamp"}, {"var", e.var}, {"lo", e.lo}, {"hi", e.hi}}; break;
  }
}

void from_json(const Json& j, Expr& e) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "const")
    e = Expr::constant(j.at("k").get<Value>());
  else if (kind == "var")
    e = Expr::var_plus(j.at("var").get<std::string>(), get_or<Value>(j, "k", 0));
  else if (kind == "clamp")
    e = Expr::clamp(j.at("var").get<std::string>(), j.at("lo").get<Value>(), j.at("hi").get<Value>());
  else
    throw ManifestError("unknown expression kind '" + kind + "'");
}

void to_json(Json& j, const Instr& i) {
  j = Json{{"op", std::string(to_string(i.op))}};
  switch (i.op) {
    case Instr::Op::Assign:
      j["dest"] = i.dest;
      j["expr"] = i.expr;
      break;
    case Instr::Op::Branch:
      j["cond"] = i.cond;
      j["target"] = i.target;
      break;
    case Instr::Op::ReadChannel: j["channel"] = i.channel; break;
    case Instr::Op::Sink:
      j["kind"] = std::string(to_string(i.sink_kind));
      j["trigger"] = i.trigger;
      break;
    case Instr::Op::Guard:
      j["guard"] = i.guard;
      j["handler"] = i.handler;
      break;
  }
}

void from_json(const Json& j, Instr& i) {
  std::string op = j.at("op").get<std::string>();
  if (op == "assign")
    i = Instr::assign(j.at("dest").get<std::string>(), j.at("expr").get<Expr>());
  else if (op == "branch")
    i = Instr::branch(get_or<Cube>(j, "cond", {}), get_or<std::string>(j, "target", ""));
  else if (op == "read")
    i = Instr::read(j.at("channel").get<std::string>());
  else if (op == "sink")
    i = Instr::sink(sink_kind_from_string(j.at("kind").get<std::string>()), get_or<Cube>(j, "trigger", {}));
  else if (op == "guard")
    i = Instr::guard_of(j.at("guard").get<Dnf>(), j.at("handler").get<std::string>());
  else
    throw ManifestError("unknown instruction '" + op + "'");
}

void to_json(Json& j, const Block& b) {
  j = Json{{"id", b.id}, {"instrs", b.instrs}};
  if (!b.tags.empty()) j["tags"] = b.tags;
  if (!b.labels.empty()) j["labels"] = b.labels;
  if (!b.inherits.empty()) j["inherits"] = b.inherits;
}

void from_json(const Json& j, Block& b) {
  b.id = j.at("id").get<std::string>();
  b.instrs = get_or<std::vector<Instr>>(j, "instrs", {});
  b.tags = get_or<std::set<std::string>>(j, "tags", {});
  b.labels = get_or<std::vector<std::string>>(j, "labels", {});
  b.inherits = get_or<std::string>(j, "inherits", "");
}

void to_json(Json& j, const Edge& e) {
  j = Json{{"from", e.from}, {"to", e.to}};
  opt_to(j, "cond", e.cond);
}

void from_json(const Json& j, Edge& e) {
  e.from = j.at("from").get<std::string>();
  e.to = j.at("to").get<std::string>();
  opt_from(j, "cond", e.cond);
}

void to_json(Json& j, const ToyArtifact& b) {
  j = Json{{"id", b.id},
           {"availability", std::string(to_string(b.availability))},
           {"vars", b.vars},
           {"observables", b.observables},
           {"channels", b.channels},
           {"blocks", b.blocks},
           {"edges", b.edges},
           {"scan_slack", b.scan_slack}};
  if (!b.domain_invariants.empty()) j["domain_invariants"] = b.domain_invariants;
}

void from_json(const Json& j, ToyArtifact& b) {
  b.id = get_or<std::string>(j, "id", "");
  b.availability = availability_from_string(j.at("availability").get<std::string>());
  b.vars = get_or<std::vector<VarDecl>>(j, "vars", {});
  b.observables = get_or<std::set<std::string>>(j, "observables", {});
  b.channels = get_or<std::vector<ChannelSpec>>(j, "channels", {});
  b.blocks = j.at("blocks").get<std::vector<Block>>();
  b.edges = get_or<std::vector<Edge>>(j, "edges", {});
  b.scan_slack = get_or<std::int64_t>(j, "scan_slack", 1'000'000);
  b.domain_invariants = get_or<std::vector<ConstraintAtom>>(j, "domain_invariants", {});
}

void to_json(Json& j, const Entity& e) { j = Json{{"id", e.id}, {"label", e.label}, {"rho", e.rho}}; }

void from_json(const Json& j, Entity& e) {
  e.id = j.at("id").get<std::string>();
  e.label = j.at("label").get<std::string>();
  e.rho = get_or<double>(j, "rho", 0.0);
}

void to_json(Json& j, const GraphRelation& r) {
  j = Json{{"src", r.src}, {"dst", r.dst}, {"type", r.type}};
  if (!r.risk) j["risk"] = false;
}

void from_json(const Json& j, GraphRelation& r) {
  r.src = j.at("src").get<std::string>();
  r.dst = j.at("dst").get<std::string>();
  r.type = j.at("type").get<std::string>();
  r.risk = get_or<bool>(j, "risk", kRiskRelations.count(r.type) > 0);
}

void to_json(Json& j, const Ssckg& g) { j = Json{{"entities", g.entities}, {"relations", g.relations}, {"phi", g.phi}}; }

void from_json(const Json& j, Ssckg& g) {
  g.entities = j.at("entities").get<std::vector<Entity>>();
  g.relations = get_or<std::vector<GraphRelation>>(j, "relations", {});
  g.phi = get_or<std::map<std::string, std::set<std::string>>>(j, "phi", {});
}

void to_json(Json& j, const RawAlert& a) {
  j = Json{{"source_tool", a.source_tool}, {"entity", a.entity_or_block}, {"relation_type", a.relation_type},
           {"src", a.src},                 {"snk", a.snk},                {"rho", a.rho}};
}

void from_json(const Json& j, RawAlert& a) {
  a.source_tool = get_or<std::string>(j, "source_tool", "");
  a.entity_or_block = get_or<std::string>(j, "entity", "");
  a.relation_type = get_or<std::string>(j, "relation_type", "");
  a.src = get_or<std::string>(j, "src", "");
  a.snk = get_or<std::string>(j, "snk", "");
  a.rho = get_or<double>(j, "rho", 0.0);
}

void to_json(Json& j, const HintRecord& h) { j = Json{{"atoms", h.atoms}, {"evidence", h.evidence}}; }

void from_json(const Json& j, HintRecord& h) {
  h.atoms = get_or<std::vector<ConstraintAtom>>(j, "atoms", {});
  h.evidence = get_or<double>(j, "evidence", 1.0);
}

void to_json(Json& j, const ContextHints& c) {
  j = Json::object();
  opt_to(j, "art", c.art);
  for (Family f : kStateFamilies) opt_to(j, std::string(to_string(f)).c_str(), c.at(f));
  j["replay"] = Json{{"enforcement_point", c.replay.enforcement_point}, {"harness", c.replay.harness}};
}

void from_json(const Json& j, ContextHints& c) {
  c = ContextHints{};
  opt_from(j, "art", c.art);
  for (Family f : kStateFamilies) opt_from(j, std::string(to_string(f)).c_str(), c.at(f));
  if (auto it = j.find("replay"); it != j.end()) {
    c.replay.enforcement_point = get_or<bool>(*it, "enforcement_point", false);
    c.replay.harness = get_or<bool>(*it, "harness", false);
  }
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (key == "art" || key == "replay") continue;
    bool known = false;
    for (Family f : kStateFamilies) known = known || key == to_string(f);
    if (!known) throw ManifestError("unknown context dimension '" + key + "'");
  }
}

void to_json(Json& j, const BenignTrace& t) {
  j = Json{{"channels", t.input.channels}, {"state", t.input.state}};
  if (!t.entry.empty()) j["entry"] = t.entry;
}

void from_json(const Json& j, BenignTrace& t) {
  t.input.channels = get_or<std::map<std::string, std::vector<Message>>>(j, "channels", {});
  t.input.state = get_or<Assignment>(j, "state", {});
  t.entry = get_or<std::string>(j, "entry", "");
}

void to_json(Json& j, const GroundTruth& g) {
  j = Json{{"L3_replay", g.l3_replay}, {"L4_remedy", g.l4_remedy}, {"candidate", g.candidate},
           {"vulnerable_paths", g.vulnerable_paths}};
  if (g.l2) j["L2"] = std::string(to_string(*g.l2));
  if (!g.refuting_family.empty()) j["refuting_family"] = g.refuting_family;
}

void from_json(const Json& j, GroundTruth& g) {
  if (auto it = j.find("L2"); it != j.end() && !it->is_null())
    g.l2 = ground_truth_from_string(it->get<std::string>());
  g.l3_replay = get_or<bool>(j, "L3_replay", false);
  g.l4_remedy = get_or<int>(j, "L4_remedy", 0);
  g.candidate = get_or<std::string>(j, "candidate", "");
  g.refuting_family = get_or<std::string>(j, "refuting_family", "");
  g.vulnerable_paths = get_or<std::vector<std::vector<std::string>>>(j, "vulnerable_paths", {});
}

void to_json(Json& j, const CaseManifest& m) {
  j = Json{{"id", m.id},
           {"partition", m.partition},
           {"artifact", m.artifact},
           {"ssckg", m.ssckg},
           {"candidates", m.alerts},
           {"context", m.context},
           {"benign_traces", m.benign_traces},
           {"ground_truth", m.ground_truth}};
  if (!m.config_overrides.empty()) j["config_overrides"] = Json::parse(m.config_overrides);
}

void from_json(const Json& j, CaseManifest& m) {
  m.id = j.at("id").get<std::string>();
  m.partition = get_or<std::string>(j, "partition", "");
  m.artifact = j.at("artifact").get<ToyArtifact>();
  m.ssckg = j.at("ssckg").get<Ssckg>();
  m.alerts = get_or<std::vector<RawAlert>>(j, "candidates", {});
  m.context = get_or<ContextHints>(j, "context", {});
  m.benign_traces = get_or<std::vector<BenignTrace>>(j, "benign_traces", {});
  m.ground_truth = get_or<GroundTruth>(j, "ground_truth", {});
  if (auto it = j.find("config_overrides"); it != j.end() && !it->is_null()) m.config_overrides = it->dump();
}

void to_json(Json& j, const NaRow& r) {
  j = Json{{"alert_index", r.alert_index}, {"source_tool", r.source_tool}, {"reference", r.reference}, {"reason", r.reason}};
}

void from_json(const Json& j, NaRow& r) {
  r.alert_index = j.at("alert_index").get<std::size_t>();
  r.source_tool = j.at("source_tool").get<std::string>();
  r.reference = j.at("reference").get<std::string>();
  r.reason = j.at("reason").get<std::string>();
}

void to_json(Json& j, const Ratio& r) { j = Json{{"num", r.num}, {"den", r.den}}; }

void from_json(const Json& j, Ratio& r) { r = Ratio::of(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

void to_json(Json& j, const Bcp& b) { j = Json{{"exact", b.exact}, {"value", b.value}}; }

void from_json(const Json& j, Bcp& b) {
  b.exact = j.at("exact").get<Ratio>();
  b.value = j.at("value").get<double>();
}

void to_json(Json& j, const ReplayOutcome& r) {
  j = Json{{"status", std::string(to_string(r.status))}, {"trace", r.trace}, {"sink_reached", r.sink_reached},
           {"reason", r.reason}};
}

void from_json(const Json& j, ReplayOutcome& r) {
  r.status = replay_status_from_string(j.at("status").get<std::string>());
  r.trace = j.at("trace").get<std::vector<std::string>>();
  r.sink_reached = j.at("sink_reached").get<bool>();
  r.reason = j.at("reason").get<std::string>();
}

void to_json(Json& j, const CheckResult& c) { j = Json{{"pass", c.pass}, {"metric", c.metric}, {"detail", c.detail}}; }

void from_json(const Json& j, CheckResult& c) {
  c.pass = j.at("pass").get<bool>();
  c.metric = j.at("metric").get<double>();
  c.detail = j.at("detail").get<std::string>();
}

void to_json(Json& j, const NeighborPath& n) {
  j = Json{{"start_block", n.start_block}, {"sink_block", n.sink_block}, {"sat_before", n.sat_before}};
}

void from_json(const Json& j, NeighborPath& n) {
  n.start_block = j.at("start_block").get<std::string>();
  n.sink_block = j.at("sink_block").get<std::string>();
  n.sat_before = j.at("sat_before").get<bool>();
}

void to_json(Json& j, const Certificate& c) {
  j = Json{{"post_label", std::string(to_string(c.post_label))},
           {"bcp", c.bcp},
           {"side_effects", c.side_effects},
           {"replay", c.replay},
           {"displaced", c.displaced},
           {"new_high_risk", c.new_high_risk}};
}

void from_json(const Json& j, Certificate& c) {
  c.post_label = label_from_string(j.at("post_label").get<std::string>());
  c.bcp = j.at("bcp").get<Bcp>();
  c.side_effects = j.at("side_effects").get<std::map<std::string, CheckResult>>();
  c.replay = j.at("replay").get<ReplayOutcome>();
  c.displaced = j.at("displaced").get<std::vector<NeighborPath>>();
  c.new_high_risk = j.at("new_high_risk").get<std::vector<std::string>>();
}

void to_json(Json& j, const Delta& d) {
  j = Json{{"kind", std::string(to_string(d.kind))}, {"check", d.check}, {"message", d.message}, {"tier", d.tier}};
  if (!d.insertion_block.empty()) j["insertion_block"] = d.insertion_block;
  if (!d.template_id.empty()) j["template_id"] = d.template_id;
  if (!d.must_remain.empty()) j["must_remain"] = d.must_remain;
  if (!d.must_not_block.empty()) j["must_not_block"] = d.must_not_block;
  if (!d.keep_quiet.empty()) j["keep_quiet"] = d.keep_quiet;
  if (!d.guard_states.empty()) j["guard_states"] = d.guard_states;
}

void from_json(const Json& j, Delta& d) {
  d.kind = delta_kind_from_string(j.at("kind").get<std::string>());
  d.check = j.at("check").get<std::string>();
  d.message = j.at("message").get<std::string>();
  d.tier = j.at("tier").get<int>();
  d.insertion_block = get_or<std::string>(j, "insertion_block", "");
  d.template_id = get_or<std::string>(j, "template_id", "");
  d.must_remain = get_or<std::vector<std::string>>(j, "must_remain", {});
  d.must_not_block = get_or<Dnf>(j, "must_not_block", {});
  d.keep_quiet = get_or<std::vector<BenignTrace>>(j, "keep_quiet", {});
  d.guard_states = get_or<std::vector<Assignment>>(j, "guard_states", {});
}

void to_json(Json& j, const Remedy& r) {
  j = Json{{"tier", r.tier}, {"iteration", r.iteration}, {"advisory", r.advisory}};
  switch (r.tier) {
    case 1:
      j["channel"] = r.channel;
      j["gate"] = r.gate;
      break;
    case 2:
      j["insertion_block"] = r.insertion_block;
      j["psi"] = r.psi;
      j["guard_block"] = r.guard_block;
      j["handler_block"] = r.handler_block;
      j["handler_edges"] = r.handler_edges;
      break;
    default:
      j["template_id"] = r.template_id;
      j["target_block"] = r.target_block;
      j["params"] = r.params;
      j["psi"] = r.psi;
      j["must_remain"] = r.must_remain;
      break;
  }
}

void from_json(const Json& j, Remedy& r) {
  r = Remedy{};
  r.tier = j.at("tier").get<int>();
  r.iteration = j.at("iteration").get<int>();
  r.advisory = j.at("advisory").get<bool>();
  r.channel = get_or<std::string>(j, "channel", "");
  r.gate = get_or<Dnf>(j, "gate", {});
  r.insertion_block = get_or<std::string>(j, "insertion_block", "");
  r.psi = get_or<Dnf>(j, "psi", {});
  r.guard_block = get_or<std::string>(j, "guard_block", "");
  r.handler_block = get_or<std::string>(j, "handler_block", "");
  r.handler_edges = get_or<std::vector<Edge>>(j, "handler_edges", {});
  r.template_id = get_or<std::string>(j, "template_id", "");
  r.target_block = get_or<std::string>(j, "target_block", "");
  r.params = get_or<std::map<std::string, std::string>>(j, "params", {});
  r.must_remain = get_or<std::vector<std::string>>(j, "must_remain", {});
}

void to_json(Json& j, const TraceEntry& e) {
  j = Json{{"tier", e.tier}, {"iteration", e.iteration}, {"outcome", e.outcome}, {"remedy", e.remedy}, {"note", e.note}};
  opt_to(j, "delta", e.delta);
  opt_to(j, "certificate", e.certificate);
}

void from_json(const Json& j, TraceEntry& e) {
  e.tier = j.at("tier").get<int>();
  e.iteration = j.at("iteration").get<int>();
  e.outcome = j.at("outcome").get<std::string>();
  e.remedy = j.at("remedy").get<std::string>();
  e.note = j.at("note").get<std::string>();
  opt_from(j, "delta", e.delta);
  opt_from(j, "certificate", e.certificate);
}

void to_json(Json& j, const PathVerdict& p) {
  j = Json{{"blocks", p.blocks},       {"raw_score", p.raw_score},     {"mapped_score", p.mapped_score},
           {"budget", p.budget_units}, {"verdict", p.verdict},         {"units_spent", p.units_spent},
           {"refuting", p.refuting}};
}

void from_json(const Json& j, PathVerdict& p) {
  p.blocks = j.at("blocks").get<std::vector<std::string>>();
  p.raw_score = j.at("raw_score").get<double>();
  p.mapped_score = j.at("mapped_score").get<double>();
  p.budget_units = j.at("budget").get<std::int64_t>();
  p.verdict = j.at("verdict").get<std::string>();
  p.units_spent = j.at("units_spent").get<std::int64_t>();
  p.refuting = j.at("refuting").get<std::vector<std::string>>();
}

void to_json(Json& j, const VerificationTrace& t) {
  j = Json{{"paths", t.paths},
           {"relaxed_family", t.relaxed_family},
           {"relaxed_verdict", t.relaxed_verdict},
           {"relaxed_units", t.relaxed_units},
           {"cap_hit", t.cap_hit},
           {"units_spent", t.units_spent},
           {"units_to_first_sat", t.units_to_first_sat},
           {"solver_queries", t.solver_queries}};
}

void from_json(const Json& j, VerificationTrace& t) {
  t.paths = j.at("paths").get<std::vector<PathVerdict>>();
  t.relaxed_family = j.at("relaxed_family").get<std::string>();
  t.relaxed_verdict = j.at("relaxed_verdict").get<std::string>();
  t.relaxed_units = j.at("relaxed_units").get<std::int64_t>();
  t.cap_hit = j.at("cap_hit").get<bool>();
  t.units_spent = j.at("units_spent").get<std::int64_t>();
  t.units_to_first_sat = j.at("units_to_first_sat").get<std::int64_t>();
  t.solver_queries = j.at("solver_queries").get<int>();
}

void to_json(Json& j, const Config& c) {
  j = Json{{"alpha", c.alpha},
           {"tau_p", c.tau_p},
           {"t_total", c.t_total},
           {"t_relaxed", c.t_relaxed},
           {"tau_cov", c.tau_cov},
           {"tau_block", c.tau_block},
           {"k_iters", c.k_iters},
           {"beam_b", c.beam_b},
           {"tau_risk", c.tau_risk},
           {"seed", c.seed},
           {"feedback", c.feedback},
           {"max_walks", c.max_walks},
           {"k_candidates", c.k_candidates},
           {"underblock_samples", c.underblock_samples}};
}

void from_json(const Json& j, Config& c) {
  for (const auto& [key, v] : j.items()) {
    if (key == "alpha") c.alpha = v.get<double>();
    else if (key == "tau_p") c.tau_p = v.get<double>();
    else if (key == "t_total") c.t_total = v.get<std::int64_t>();
    else if (key == "t_relaxed") c.t_relaxed = v.get<std::int64_t>();
    else if (key == "tau_cov") c.tau_cov = v.get<double>();
    else if (key == "tau_block") c.tau_block = v.get<double>();
    else if (key == "k_iters") c.k_iters = v.get<int>();
    else if (key == "beam_b") c.beam_b = v.get<int>();
    else if (key == "tau_risk") c.tau_risk = v.get<double>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "feedback") c.feedback = v.get<bool>();
    else if (key == "max_walks") c.max_walks = v.get<int>();
    else if (key == "k_candidates") c.k_candidates = v.get<int>();
    else if (key == "underblock_samples") c.underblock_samples = v.get<int>();
    else throw ManifestError("unknown config field '" + key + "'");
  }
}

// manifest.hpp

std::string_view to_string(GroundTruthL2 g) {
  switch (g) {
    case GroundTruthL2::Reachable: return "reachable";
    case GroundTruthL2::Infeasible: return "infeasible";
    case GroundTruthL2::Unknown: return "unknown";
  }
  return "?";
}

GroundTruthL2 ground_truth_from_string(std::string_view s) {
  for (GroundTruthL2 g : {GroundTruthL2::Reachable, GroundTruthL2::Infeasible, GroundTruthL2::Unknown})
    if (to_string(g) == s) return g;
  throw ManifestError("unknown L2 label '" + std::string(s) + "'");
}

CaseManifest parse_manifest(const std::string& json_text) {
  try {
    return Json::parse(json_text).get<CaseManifest>();
  } catch (const Json::exception& e) {
    throw ManifestError(e.what());
  } catch (const ValidationError& e) {
    throw ManifestError(e.what());
  } catch (const ConstraintError& e) {
    throw ManifestError(e.what());
  }
}

CaseManifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ManifestError("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_manifest(ss.str());
  } catch (const ManifestError& e) {
    throw ManifestError(file.filename().string() + ": " + e.what());
  }
}

std::string dump_manifest(const CaseManifest& m) { return Json(m).dump(2); }

std::vector<std::filesystem::path> suite_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) throw ManifestError("not a directory: " + dir.string());
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

void apply_config_json(Config& cfg, const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw ManifestError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ManifestError("config must be a JSON object");
  try {
    from_json(j, cfg);
  } catch (const Json::exception& e) {
    throw ManifestError(std::string("config: ") + e.what());
  }
}

std::string dump_config(const Config& cfg) { return Json(cfg).dump(); }

}  // namespace remedium
