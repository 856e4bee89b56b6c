#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

using namespace remedium;
using fixture::tiny;
using fixture::tiny_graph;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("tiny artifact is well formed") { CHECK(validate_case(tiny(), tiny_graph()).empty()); }

TEST_CASE("action vocabulary matches the data file") {
  std::istringstream in(fixture::slurp(std::string(REMEDIUM_DATA_DIR) + "/action_labels.txt"));
  std::vector<std::string> file;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') file.push_back(line);
  CHECK(file == action_labels());
  CHECK(action_labels().size() == 27);
}

TEST_CASE("validation flags broken cases") {
  auto b = tiny();
  auto g = tiny_graph();
  b.blocks.push_back(fixture::blk("wr", "copy-buffer"));
  b.edges.push_back({"reply", "gone", std::nullopt});
  b.blocks[1].instrs.push_back(Instr::branch({make_atom("zz", Relation::Eq, 1)}, "nowhere"));
  b.blocks[3].labels = {"jump-around"};
  g.entities.push_back({"e_x", "copy-buffer", 1.5});
  g.phi["e_y"] = {"entry"};
  g.relations.push_back({"e_entry", "e_q", "data-flow", true});
  g.relations.push_back({"e_entry", "e_wr", "calls", true});
  auto vs = validate_case(b, g);
  for (const char* code : {"DuplicateBlock", "DanglingEdge", "UndeclaredVariable", "DanglingBranch", "UnknownLabel",
                           "RiskOutOfRange", "PhiNotTotal", "DanglingPhi", "DanglingRelation", "UnknownRelationType"})
    CHECK_MESSAGE(has_code(vs, code), code);
}

TEST_CASE("a branch target that is also an edge target is ambiguous") {
  auto b = tiny();
  b.edges.push_back({"dispatch", "wr", std::nullopt});
  CHECK(has_code(validate_case(b, tiny_graph()), "AmbiguousBranch"));
}

TEST_CASE("guards may read observables only") {
  auto b = tiny();
  b.observables = {"fc"};
  b.blocks.push_back(fixture::blk("g", "check-state", {Instr::guard_of({{make_atom("len", Relation::Gt, 1)}}, "reply")}));
  CHECK(has_code(validate_case(b, tiny_graph()), "UnobservableGuard"));
}

TEST_CASE("no entry block is an error") {
  auto b = tiny();
  b.blocks[0].tags.clear();
  CHECK(has_code(validate_case(b, tiny_graph()), "NoEntry"));
}

TEST_CASE("fsm domain must match the state count") {
  auto b = tiny();
  b.vars.push_back(fixture::decl("q", 0, 5, VarOrigin::Proto));
  b.channels[0].state_var = "q";
  b.channels[0].fsm = ChannelFsm{{"a", "b"}, 0, {{0, 1, 1}}};
  CHECK(has_code(validate_case(b, tiny_graph()), "BadFsm"));
}

TEST_CASE("successors list branch targets before edges") {
  auto b = tiny();
  CHECK(b.successors("dispatch") == std::vector<std::string>{"wr", "reply"});
  CHECK(b.predecessors("reply") == std::vector<std::string>{"dispatch", "wr"});
}

TEST_CASE("fsm reachability") {
  ChannelFsm f{{"idle", "session", "armed", "maint"}, 0, {{0, 1, 1}, {1, 2, 5}, {2, 0, 6}, {3, 0, 6}}};
  CHECK(f.reachable_from(0) == std::set<Value>{0, 1, 2});
  CHECK(f.reachable_from(3) == std::set<Value>{0, 1, 2, 3});
  CHECK(f.step(1, 5) == 2);
  CHECK_FALSE(f.step(1, 6).has_value());
}

TEST_CASE("reachable entities follow risk relations from entry entities") {
  auto g = tiny_graph();
  CHECK(entry_entities(g, tiny()) == std::set<std::string>{"e_entry"});
  CHECK(reachable_entities(g, tiny()).size() == 4);
  g.relations[1].risk = false;
  CHECK(reachable_entities(g, tiny()) == std::set<std::string>{"e_entry", "e_dispatch", "e_reply"});
}

TEST_CASE("suite manifests are valid and survive a JSON round trip") {
  auto cases = fixture::suite();
  REQUIRE(cases.size() == 15);
  for (const auto& m : cases) {
    CHECK_MESSAGE(validate_case(m.artifact, m.ssckg).empty(), m.id);
    std::string once = dump_manifest(m);
    CHECK_MESSAGE(dump_manifest(parse_manifest(once)) == once, m.id);
  }
}

TEST_CASE("manifest errors are reported, not crashed on") {
  CHECK_THROWS_AS(parse_manifest("{"), ManifestError);
  CHECK_THROWS_AS(parse_manifest(R"({"id":"x"})"), ManifestError);
  auto text = dump_manifest(fixture::suite_case("B1"));
  auto j = Json::parse(text);
  j["context"]["weather"] = Json::object();
  CHECK_THROWS_AS(parse_manifest(j.dump()), ManifestError);
}

TEST_CASE("config overrides reject unknown keys") {
  Config cfg;
  apply_config_json(cfg, R"({"k_iters": 5, "tau_cov": 0.9})");
  CHECK(cfg.k_iters == 5);
  CHECK(cfg.tau_cov == doctest::Approx(0.9));
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"k_iter": 5})"), ManifestError);
  Config back;
  apply_config_json(back, dump_config(cfg));
  CHECK(dump_config(back) == dump_config(cfg));
}
