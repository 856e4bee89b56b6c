#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace remedium;

namespace {

Witness tiny_witness() {
  auto r = verify(fixture::tiny(), fixture::tiny_graph(), fixture::tiny_candidate(), Config{});
  REQUIRE(r.witness);
  return *r.witness;
}

Remedy gate(Dnf d) {
  Remedy r;
  r.tier = 1;
  r.channel = "frame";
  r.gate = std::move(d);
  return r;
}

BenignTrace benign(Value fc, Value len) {
  BenignTrace t;
  t.input.channels["frame"] = {{{"fc", fc}, {"len", len}}};
  return t;
}

// tiny plus an audit block that only the sink block leads to
void add_audit(ToyArtifact& b, Ssckg& g) {
  b.blocks.push_back(fixture::blk("audit", "log-event"));
  b.edges = {{"entry", "dispatch", std::nullopt}, {"dispatch", "reply", std::nullopt}, {"wr", "audit", std::nullopt},
             {"audit", "reply", std::nullopt}};
  g.entities.push_back({"e_audit", "log-event", 0.1});
  g.phi["e_audit"] = {"audit"};
  g.relations.push_back({"e_wr", "e_audit", "data-flow", true});
}

}  // namespace

TEST_CASE("bcp equals a closure oracle on random graphs with excised blocks") {
  std::mt19937_64 rng(31337);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int nontrivial = 0;
  for (int round = 0; round < 200; ++round) {
    int n = pick(2, 12);
    ToyArtifact b;
    Ssckg g;
    for (int i = 0; i < n; ++i) {
      std::string id = "k" + std::to_string(i);
      b.blocks.push_back(fixture::blk(id, "parse-field"));
      g.entities.push_back({"e" + std::to_string(i), "parse-field", 0.5});
      g.phi["e" + std::to_string(i)] = {id};
    }
    b.blocks[0].tags = {"network-handler"};
    if (pick(0, 3) == 0) b.blocks[pick(1, n - 1)].tags = {"task-root"};
    for (int i = 0; i < n; ++i)
      for (int k = pick(0, 2); k > 0; --k) {
        int j = pick(0, n - 1);
        b.edges.push_back({b.blocks[i].id, b.blocks[j].id, std::nullopt});
      }
    std::vector<std::tuple<int, int, bool>> rel;
    for (int k = pick(n - 1, 2 * n); k > 0; --k) rel.emplace_back(pick(0, n - 1), pick(0, n - 1), pick(0, 4) > 0);
    for (auto [a, c, risk] : rel) g.relations.push_back({"e" + std::to_string(a), "e" + std::to_string(c), "data-flow", risk});

    std::set<int> excised;
    ToyArtifact bp = b;
    for (int k = pick(1, 2); k > 0; --k) {
      int victim = pick(0, n - 1);
      if (excised.count(victim)) continue;
      excised.insert(victim);
      Remedy r;
      r.tier = 3;
      r.template_id = "length-recompute";
      r.target_block = "k" + std::to_string(victim);
      bp = apply_remedy(bp, r);
    }
    Ssckg gp = rebuild_ssckg(bp, g);
    std::set<std::string> vuln;
    for (int i = 0; i < n; ++i)
      if (pick(0, 3) == 0) vuln.insert("e" + std::to_string(i));

    // oracle: closure over risk relations, entries from entry-tagged blocks
    std::vector<std::pair<int, int>> before_edges, after_edges;
    for (auto [a, c, risk] : rel) {
      if (!risk) continue;
      before_edges.emplace_back(a, c);
      if (!excised.count(a) && !excised.count(c)) after_edges.emplace_back(a, c);
    }
    auto cb = oracle::closure(static_cast<std::size_t>(n), before_edges);
    auto ca = oracle::closure(static_cast<std::size_t>(n), after_edges);
    std::int64_t num = 0, den = 0;
    for (int e = 0; e < n; ++e) {
      bool rb = false, ra = false;
      for (int s = 0; s < n; ++s) {
        if (b.blocks[s].tags.empty()) continue;
        if (cb[s][e]) rb = true;
        if (!excised.count(s) && !excised.count(e) && ca[s][e]) ra = true;
      }
      if (!rb || vuln.count("e" + std::to_string(e))) continue;
      ++den;
      if (ra) ++num;
    }
    oracle::Frac want = den == 0 ? oracle::Frac{1, 1} : oracle::frac(num, den);
    Bcp got = bcp(g, b, gp, bp, vuln);
    CHECK_MESSAGE((got.exact.num == want.num && got.exact.den == want.den),
                  "round " << round << " got " << got.exact.num << "/" << got.exact.den << " want " << want.num << "/" << want.den);
    CHECK(got.value == doctest::Approx(static_cast<double>(want.num) / static_cast<double>(want.den)));
    if (want.num != want.den) ++nontrivial;
  }
  CHECK(nontrivial >= 50);
}

TEST_CASE("rebuild drops emptied entities and joins inserted blocks") {
  auto b = fixture::tiny();
  auto g = fixture::tiny_graph();
  Remedy r;
  r.tier = 3;
  r.template_id = "length-recompute";
  r.target_block = "wr";
  auto gp = rebuild_ssckg(apply_remedy(b, r), g);
  CHECK_FALSE(gp.entity("e_wr"));
  CHECK(gp.relations.size() == 2);

  auto w = tiny_witness();
  auto t2 = synth_tier2(fixture::tiny_candidate(), w, b, {});
  auto bp = apply_remedy(b, t2);
  gp = rebuild_ssckg(bp, g);
  CHECK(gp.phi.at("e_dispatch").count(t2.guard_block));
  CHECK(gp.phi.at("e_dispatch").count(t2.handler_block));
  CHECK(bcp(g, b, gp, bp, w.vuln_entities).exact == Ratio::of(1, 1));
}

TEST_CASE("an unknown template or tier cannot be applied") {
  Remedy r;
  r.tier = 3;
  r.template_id = "rewrite-everything";
  r.target_block = "wr";
  CHECK_THROWS_AS(apply_remedy(fixture::tiny(), r), ApplyError);
  r.tier = 4;
  CHECK_THROWS_AS(apply_remedy(fixture::tiny(), r), ApplyError);
  Remedy t1 = gate({});
  t1.channel = "nope";
  CHECK_THROWS_AS(apply_remedy(fixture::tiny(), t1), ApplyError);
}

TEST_CASE("validation gates run in order") {
  const auto b = fixture::tiny();
  const auto g = fixture::tiny_graph();
  const auto c = fixture::tiny_candidate();
  const auto w = tiny_witness();
  const Config cfg;
  ValidationContext vctx;
  vctx.benign = {benign(1, 10), benign(3, 10), benign(0, 200)};

  SUBCASE("apply") {
    Remedy r;
    r.tier = 2;
    r.insertion_block = "gone";
    r.guard_block = "g";
    r.handler_block = "h";
    auto v = validate(b, g, c, r, Label::SatStrict, w, cfg, vctx);
    REQUIRE(v.delta);
    CHECK(v.delta->kind == DeltaKind::Reachability);
    CHECK(v.delta->check == "apply");
    CHECK(v.delta->insertion_block == "gone");
  }
  SUBCASE("re-verification") {
    auto v = validate(b, g, c, gate({{make_atom("fc", Relation::Eq, 4)}}), Label::SatStrict, w, cfg, vctx);
    REQUIRE(v.delta);
    CHECK(v.delta->kind == DeltaKind::Reachability);
    CHECK(v.delta->check == "re-verification");
    CHECK(v.post_label == Label::SatStrict);
    CHECK_FALSE(v.accepted);
  }
  SUBCASE("replay") {
    Witness bad = w;
    bad.state["ghost"] = 1;
    vctx.harness = true;
    auto v = validate(b, g, c, gate({{make_atom("fc", Relation::Eq, 3)}}), Label::SatStrict, bad, cfg, vctx);
    REQUIRE(v.delta);
    CHECK(v.delta->kind == DeltaKind::Replay);
    CHECK(v.post_label == Label::Unsat);
  }
  SUBCASE("coverage") {
    auto b2 = b;
    auto g2 = g;
    add_audit(b2, g2);
    b2.availability = Availability::SourceAvailable;
    auto v2 = verify(b2, g2, c, cfg);
    REQUIRE(v2.witness);
    Remedy r;
    r.tier = 3;
    r.template_id = "length-recompute";
    r.target_block = "wr";
    auto v = validate(b2, g2, c, r, Label::SatStrict, *v2.witness, cfg, vctx);
    REQUIRE(v.delta);
    CHECK(v.delta->kind == DeltaKind::Coverage);
    CHECK(v.delta->must_remain == std::vector<std::string>{"e_audit"});
    CHECK(v.delta->template_id == "length-recompute");
  }
  SUBCASE("false blocking") {
    vctx.benign.push_back(benign(3, 100));
    auto v = validate(b, g, c, gate({{make_atom("fc", Relation::Eq, 3)}}), Label::SatStrict, w, cfg, vctx);
    REQUIRE(v.delta);
    CHECK(v.delta->kind == DeltaKind::SideEffect);
    CHECK(v.delta->check == "false-blocking");
    CHECK(v.delta->must_not_block == Dnf{{make_atom("fc", Relation::Eq, 3)}});
  }
  SUBCASE("accepted") {
    vctx.harness = true;
    auto v = validate(b, g, c, gate({{make_atom("fc", Relation::Eq, 3), make_atom("len", Relation::Gt, 64)}}),
                      Label::SatStrict, w, cfg, vctx);
    CHECK(v.accepted);
    REQUIRE(v.certificate);
    CHECK(v.certificate->post_label == Label::Unsat);
    CHECK(v.certificate->bcp.exact == Ratio::of(1, 1));
    CHECK(v.certificate->replay.status == ReplayStatus::Confirmed);
    CHECK(v.certificate->side_effects.at("false-blocking").pass);
  }
}

TEST_CASE("an accepted certificate survives independent re-evaluation") {
  const auto b = fixture::tiny();
  const auto g = fixture::tiny_graph();
  const auto c = fixture::tiny_candidate();
  const auto w = tiny_witness();
  const Config cfg;
  ValidationContext vctx;
  vctx.harness = true;
  vctx.benign = {benign(1, 10), benign(3, 10), benign(0, 200)};
  for (int tier : {1, 2}) {
    Remedy r = tier == 1 ? synth_tier1(c, w, b, {}, true) : synth_tier2(c, w, b, {});
    auto v = validate(b, g, c, r, Label::SatStrict, w, cfg, vctx);
    REQUIRE(v.accepted);
    auto bp = apply_remedy(b, r);
    CHECK(verify(bp, g, c, cfg).label == Label::Unsat);
    auto t = run(bp, w.start_block, w.as_input());
    CHECK(t.sinks_triggered.empty());
    CHECK_FALSE(t.fault);
    CHECK(bcp(g, b, rebuild_ssckg(bp, g), bp, w.vuln_entities).exact == v.certificate->bcp.exact);
    CheckContext ctx{&vctx.benign, &w, &cfg, &g, Label::Unsat};
    auto se = side_effect_checks(tier, b, bp, r, ctx);
    CHECK(se.pass());
    for (const auto& bt : vctx.benign) CHECK(run(bp, "entry", bt.input).sinks_triggered == run(b, "entry", bt.input).sinks_triggered);
  }
}

TEST_CASE("tier 2 side effects") {
  auto b = fixture::tiny();
  auto w = tiny_witness();
  auto r = synth_tier2(fixture::tiny_candidate(), w, b, {});
  auto bp = apply_remedy(b, r);
  std::vector<BenignTrace> traces = {benign(3, 100), benign(1, 1)};
  Config cfg;
  Ssckg g = fixture::tiny_graph();
  CheckContext ctx{&traces, &w, &cfg, &g, std::nullopt};
  auto se = side_effect_checks(2, b, bp, r, ctx);
  REQUIRE(se.delta);
  CHECK(se.delta->check == "overblocking");
  CHECK(se.delta->keep_quiet.size() == 1);
  CHECK(se.delta->guard_states.at(0) == Assignment{{"fc", 3}, {"len", 100}});
  CHECK(se.checks.at("underblocking").pass);

  b.scan_slack = 1;
  traces = {benign(1, 1)};
  se = side_effect_checks(2, b, bp, r, ctx);
  REQUIRE(se.delta);
  CHECK(se.delta->check == "timing");

  Remedy weak = r;
  weak.psi = {{make_atom("len", Relation::Gt, 200)}};
  b.scan_slack = 100;
  se = side_effect_checks(2, b, apply_remedy(b, weak), weak, ctx);
  REQUIRE(se.delta);
  CHECK(se.delta->check == "underblocking");
}

TEST_CASE("tier 1 protocol conformance") {
  auto b = fixture::tiny();
  b.vars.push_back(fixture::decl("q", 0, 1, VarOrigin::Proto));
  b.channels[0].state_var = "q";
  b.channels[0].fsm = ChannelFsm{{"idle", "open"}, 0, {{0, 1, 1}, {1, 1, 3}, {1, 0, 2}}};
  BenignTrace t;
  t.input.channels["frame"] = {{{"fc", 1}, {"len", 0}}, {{"fc", 3}, {"len", 0}}, {{"fc", 2}, {"len", 0}}};
  CHECK(gate_replay(b, t).conforms);
  auto bp = apply_remedy(b, gate({{make_atom("fc", Relation::Eq, 1)}}));
  auto gr = gate_replay(bp, t);
  CHECK_FALSE(gr.conforms);
  CHECK(gr.dropped.size() == 1);
}

TEST_CASE("replay statuses") {
  auto b = fixture::tiny();
  auto w = tiny_witness();
  CHECK(replay(b, w, false).status == ReplayStatus::Unavailable);
  auto orig = replay(b, w, true);
  CHECK(orig.status == ReplayStatus::Failed);
  CHECK(orig.sink_reached);
  auto bp = apply_remedy(b, gate({{make_atom("fc", Relation::Eq, 3)}}));
  CHECK(replay(bp, w, true).status == ReplayStatus::Confirmed);
  CHECK(replay_required(Label::SatRelaxed, false));
  CHECK_FALSE(replay_required(Label::SatStrict, false));
  CHECK(replay_required(Label::SatStrict, true));
}

TEST_CASE("new high-risk entities are reported") {
  Ssckg g = fixture::tiny_graph();
  Ssckg gp = g;
  gp.entities.push_back({"e_new", "copy-buffer", 0.8});
  gp.entities.push_back({"e_low", "copy-buffer", 0.2});
  CHECK(nvr_check(g, gp, Config{}) == std::vector<std::string>{"e_new"});
}
