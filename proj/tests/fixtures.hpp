#pragma once

// Small hand-built artifacts and suite access for the tests.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "remedium/json_io.hpp"
#include "remedium/manifest.hpp"

namespace fixture {

using namespace remedium;

inline std::filesystem::path suite_dir() { return REMEDIUM_SUITE_DIR; }

inline CaseManifest suite_case(const std::string& id) { return load_manifest(suite_dir() / (id + ".json")); }

inline std::vector<CaseManifest> suite() {
  std::vector<CaseManifest> out;
  for (const auto& f : suite_files(suite_dir())) out.push_back(load_manifest(f));
  return out;
}

inline Block blk(std::string id, std::string label, std::vector<Instr> instrs = {}, std::set<std::string> tags = {}) {
  Block b;
  b.id = std::move(id);
  b.labels = {std::move(label)};
  b.instrs = std::move(instrs);
  b.tags = std::move(tags);
  return b;
}

inline VarDecl decl(std::string name, Value lo, Value hi, VarOrigin o, Value init = 0) {
  VarDecl d;
  d.name = std::move(name);
  d.lo = lo;
  d.hi = hi;
  d.origin = o;
  d.init = init;
  return d;
}

// entry(read frame) -> dispatch --fc=3--> wr(sink len>64) ; dispatch -> reply
inline ToyArtifact tiny() {
  ToyArtifact b;
  b.id = "tiny";
  b.vars = {decl("fc", 0, 7, VarOrigin::Channel), decl("len", 0, 255, VarOrigin::Channel)};
  b.observables = {"fc", "len"};
  ChannelSpec ch;
  ch.name = "frame";
  ch.fields = {"fc", "len"};
  ch.type_field = "fc";
  b.channels = {ch};
  b.blocks = {blk("entry", "recv-frame", {Instr::read("frame")}, {"network-handler"}),
              blk("dispatch", "decode-function-code", {Instr::branch({make_atom("fc", Relation::Eq, 3)}, "wr")}),
              blk("wr", "copy-buffer", {Instr::sink(SinkKind::OobWrite, {make_atom("len", Relation::Gt, 64)})}),
              blk("reply", "send-response")};
  b.edges = {{"entry", "dispatch", std::nullopt}, {"dispatch", "reply", std::nullopt}, {"wr", "reply", std::nullopt}};
  return b;
}

inline Ssckg tiny_graph() {
  Ssckg g;
  g.entities = {{"e_entry", "recv-frame", 0.2}, {"e_dispatch", "decode-function-code", 0.3},
                {"e_wr", "copy-buffer", 0.9}, {"e_reply", "send-response", 0.1}};
  g.relations = {{"e_entry", "e_dispatch", "data-flow", true},
                 {"e_dispatch", "e_wr", "control-dep", true},
                 {"e_dispatch", "e_reply", "data-flow", true}};
  g.phi = {{"e_entry", {"entry"}}, {"e_dispatch", {"dispatch"}}, {"e_wr", {"wr"}}, {"e_reply", {"reply"}}};
  return g;
}

inline Candidate tiny_candidate() {
  auto norm = normalize({{"t", "e_wr", "data-flow", "e_entry", "e_wr", 0.9}}, tiny_graph(), tiny(), {});
  return norm.candidates.at(0);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace fixture
