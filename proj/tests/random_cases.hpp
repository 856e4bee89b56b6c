#pragma once

// Random small DAG artifacts. Inputs: one frame message (a, b in 0..7) and
// state e (env) and p (io) in 0..3. One entity per block, relations follow
// the successors.

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace randcase {

using namespace remedium;

struct RandomCase {
  ToyArtifact b;
  Ssckg g;
  ContextHints omega;
  std::string target;
};

inline RandomCase make(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomCase rc;
  ToyArtifact& b = rc.b;
  b.id = "rand";
  b.vars = {fixture::decl("a", 0, 7, VarOrigin::Channel), fixture::decl("b", 0, 7, VarOrigin::Channel),
            fixture::decl("e", 0, 3, VarOrigin::Env), fixture::decl("p", 0, 3, VarOrigin::Io),
            fixture::decl("t", 0, 10, VarOrigin::Local, 0)};
  b.observables = {"a", "b"};
  ChannelSpec ch;
  ch.name = "frame";
  ch.fields = {"a", "b"};
  b.channels = {ch};
  const char* names[] = {"a", "b", "e", "p", "t"};
  const Value hi[] = {7, 7, 3, 3, 10};
  const Relation rels[] = {Relation::Eq, Relation::Neq, Relation::Le, Relation::Ge, Relation::Lt, Relation::Gt};
  auto atom = [&]() {
    int v = pick(0, 4);
    if (pick(0, 5) == 0) return make_ref_atom(names[v], rels[pick(0, 5)], names[pick(0, 4)], pick(-2, 2));
    return make_atom(names[v], rels[pick(0, 5)], pick(0, static_cast<int>(hi[v])));
  };
  auto cube = [&](int lo, int hi_n) {
    Cube c;
    for (int k = pick(lo, hi_n); k > 0; --k) c.push_back(atom());
    return c;
  };

  int n = pick(3, 6);
  for (int i = 0; i < n; ++i) b.blocks.push_back(fixture::blk("k" + std::to_string(i), "parse-field"));
  b.blocks[0].tags = {"network-handler"};
  b.blocks[0].instrs.push_back(Instr::read("frame"));
  if (pick(0, 1)) b.blocks[0].instrs.push_back(Instr::assign("t", Expr::var_plus("a", pick(0, 5))));
  for (int i = 0; i < n - 1; ++i) {
    std::string branch_to;
    if (pick(0, 2) == 0) {
      branch_to = "k" + std::to_string(pick(i + 1, n - 1));
      b.blocks[i].instrs.push_back(Instr::branch(cube(1, 2), branch_to));
    }
    std::set<std::string> used{branch_to};
    for (int k = pick(0, 2); k > 0; --k) {
      std::string to = "k" + std::to_string(pick(i + 1, n - 1));
      if (used.count(to)) continue;
      used.insert(to);
      std::optional<Cube> cond;
      if (pick(0, 1)) cond = cube(1, 1);
      b.edges.push_back({b.blocks[i].id, to, cond});
    }
  }
  int target = pick(1, n - 1);
  rc.target = b.blocks[target].id;
  b.blocks[target].instrs.push_back(Instr::sink(SinkKind::OobWrite, cube(0, 2)));
  if (pick(0, 1)) {
    int other = pick(1, n - 1);
    if (other != target) b.blocks[other].instrs.push_back(Instr::sink(SinkKind::OobRead, cube(0, 1)));
  }

  for (const auto& blk : b.blocks) {
    rc.g.entities.push_back({"e_" + blk.id, "parse-field", 0.5});
    rc.g.phi["e_" + blk.id] = {blk.id};
  }
  for (const auto& blk : b.blocks)
    for (const auto& s : b.successors(blk.id)) rc.g.relations.push_back({"e_" + blk.id, "e_" + s, "data-flow", true});

  const double ev[] = {0.2, 0.5, 0.9};
  if (pick(0, 2) > 0) rc.omega.at(Family::Env) = HintRecord{{make_atom("e", rels[pick(0, 5)], pick(0, 3))}, ev[pick(0, 2)]};
  if (pick(0, 2) > 0) rc.omega.at(Family::Io) = HintRecord{{make_range("p", pick(0, 1), pick(1, 3))}, ev[pick(0, 2)]};
  return rc;
}

inline Candidate candidate(const RandomCase& rc) {
  auto norm = normalize({{"t", "e_" + rc.target, "data-flow", "e_k0", "e_" + rc.target, 0.5}}, rc.g, rc.b, rc.omega);
  return norm.candidates.at(0);
}

inline bool hits(const RunTrace& t, const std::string& block) {
  return std::find(t.sinks_triggered.begin(), t.sinks_triggered.end(), block) != t.sinks_triggered.end();
}

inline bool prior_ok(const ContextHints& omega, Family skip, const Assignment& s) {
  for (Family f : {Family::Env, Family::Io}) {
    if (f == skip || !omega.at(f)) continue;
    for (const auto& a : omega.at(f)->atoms)
      if (!oracle::holds(a, s)) return false;
  }
  return true;
}

inline bool reaches(const RandomCase& rc, const ContextHints& omega, Family skip) {
  for (Value a = 0; a <= 7; ++a)
    for (Value b = 0; b <= 7; ++b)
      for (Value e = 0; e <= 3; ++e)
        for (Value p = 0; p <= 3; ++p) {
          Assignment s{{"a", a}, {"b", b}, {"e", e}, {"p", p}};
          if (!prior_ok(omega, skip, s)) continue;
          RunInput in;
          in.channels["frame"] = {{{"a", a}, {"b", b}}};
          in.state = {{"e", e}, {"p", p}};
          auto t = run(rc.b, "k0", in);
          if (std::find(t.sinks_triggered.begin(), t.sinks_triggered.end(), rc.target) != t.sinks_triggered.end())
            return true;
        }
  return false;
}

}  // namespace randcase
