#include "remedium/osva.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace remedium {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::SatStrict: return "sat-strict";
    case Label::SatRelaxed: return "sat-relaxed";
    case Label::Unsat: return "unsat";
    case Label::Unknown: return "unknown";
  }
  return "?";
}

Label label_from_string(std::string_view s) {
  for (Label l : {Label::SatStrict, Label::SatRelaxed, Label::Unsat, Label::Unknown})
    if (to_string(l) == s) return l;
  throw std::invalid_argument("unknown reachability label '" + std::string(s) + "'");
}

RunInput Witness::as_input() const { return RunInput{inputs, state}; }

namespace {

std::vector<std::vector<std::string>> enumerate_walks(const ToyArtifact& b, const std::vector<std::string>& starts,
                                                      const std::set<std::string>& targets, std::size_t max_len,
                                                      std::size_t max_walks, bool& cap_hit) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> path;
  std::set<std::string> on_path;
  std::function<void()> dfs = [&]() {
    if (out.size() >= max_walks) {
      cap_hit = true;
      return;
    }
    const std::string cur = path.back();
    if (targets.count(cur)) out.push_back(path);
    auto succ = b.successors(cur);
    if (path.size() >= max_len) {
      if (!succ.empty()) cap_hit = true;
      return;
    }
    for (const auto& s : succ) {
      if (on_path.count(s)) continue;
      path.push_back(s);
      on_path.insert(s);
      dfs();
      on_path.erase(s);
      path.pop_back();
      if (out.size() >= max_walks) {
        cap_hit = true;
        return;
      }
    }
  };
  for (const auto& s : starts) {
    path = {s};
    on_path = {s};
    dfs();
  }
  return out;
}

std::vector<std::string> ordered_blocks(const ToyArtifact& b, const std::set<std::string>& ids, bool sinks_only) {
  std::vector<std::string> out;
  for (const auto& blk : b.blocks)
    if (ids.count(blk.id) && (!sinks_only || blk.has_sink())) out.push_back(blk.id);
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

std::vector<std::string> walk_labels(const Ssckg& g, const ToyArtifact& b, const std::vector<std::string>& walk) {
  std::vector<std::string> out;
  auto push = [&](const std::string& l) {
    if (out.empty() || out.back() != l) out.push_back(l);
  };
  for (const auto& bid : walk) {
    auto owners = g.entities_of_block(bid);
    if (!owners.empty()) {
      for (const auto& e : owners)
        if (const Entity* ent = g.entity(e)) push(ent->label);
      continue;
    }
    if (const Block* blk = b.block(bid))
      for (const auto& l : blk->labels) push(l);
  }
  return out;
}

std::vector<std::string> ssckg_path_labels(const Ssckg& g, const std::string& src, const std::string& snk) {
  std::map<std::string, std::string> parent;
  std::deque<std::string> q{src};
  parent[src] = "";
  while (!q.empty() && !parent.count(snk)) {
    std::string u = q.front();
    q.pop_front();
    for (const auto& r : g.relations)
      if (r.risk && r.src == u && !parent.count(r.dst)) {
        parent[r.dst] = u;
        q.push_back(r.dst);
      }
  }
  std::vector<std::string> ids;
  if (parent.count(snk)) {
    for (std::string cur = snk; !cur.empty(); cur = parent[cur]) ids.push_back(cur);
    std::reverse(ids.begin(), ids.end());
  } else {
    ids = {src, snk};
  }
  std::vector<std::string> out;
  for (const auto& id : ids)
    if (const Entity* e = g.entity(id)) out.push_back(e->label);
  return out;
}

PathProjection project_paths(const Ssckg& g, const ToyArtifact& b, const Candidate& c, int beam_b, int max_walks,
                             const Embedder& embedder) {
  PathProjection out;
  auto src_it = g.phi.find(c.src);
  auto snk_it = g.phi.find(c.snk);
  if (src_it == g.phi.end() || snk_it == g.phi.end()) {
    out.gap_reason = "model-gap: candidate entity has no phi entry";
    return out;
  }
  auto starts = ordered_blocks(b, src_it->second, false);
  auto sinks = ordered_blocks(b, snk_it->second, true);
  if (starts.empty() || sinks.empty()) {
    out.gap_reason = "model-gap: empty source or sink preimage";
    return out;
  }
  bool cap = false;
  auto walks = enumerate_walks(b, starts, std::set<std::string>(sinks.begin(), sinks.end()), 2 * b.blocks.size(),
                               static_cast<std::size_t>(max_walks), cap);
  out.cap_hit = cap;
  out.ssckg_labels = ssckg_path_labels(g, c.src, c.snk);
  for (auto& w : walks) {
    ScoredPath p;
    p.labels = walk_labels(g, b, w);
    p.raw_score = score_path(p.labels, out.ssckg_labels, embedder);
    p.mapped_score = map_score(p.raw_score);
    p.blocks = std::move(w);
    out.paths.push_back(std::move(p));
  }
  std::stable_sort(out.paths.begin(), out.paths.end(),
                   [](const ScoredPath& a, const ScoredPath& b) { return a.mapped_score > b.mapped_score; });
  for (std::size_t i = 0; i < out.paths.size(); ++i) out.paths[i].in_beam = i < static_cast<std::size_t>(beam_b);
  return out;
}

PathProjection project_paths(const Ssckg& g, const ToyArtifact& b, const Candidate& c, int beam_b, int max_walks) {
  return project_paths(g, b, c, beam_b, max_walks, TermFrequencyEmbedder());
}

Witness make_witness(const PathEncoding& enc, const Assignment& model, const Formula& constraint, const ToyArtifact& b,
                     const Ssckg& g) {
  Witness w;
  for (const auto& r : enc.reads) {
    Message m;
    for (const auto& [field, version] : r.field_versions) {
      auto it = model.find(version);
      if (it != model.end()) m[field] = it->second;
    }
    w.inputs[r.channel].push_back(std::move(m));
  }
  for (const auto& v : b.vars) {
    if (v.origin == VarOrigin::Channel || v.origin == VarOrigin::Local) continue;
    auto it = model.find(v.name);
    if (it != model.end()) w.state[v.name] = it->second;
  }
  w.start_block = enc.walk.front();
  w.path = enc.walk;
  w.constraint = constraint;
  w.model = model;
  w.encoding = enc;
  for (const auto& bid : enc.walk)
    for (const auto& e : g.entities_of_block(bid)) w.vuln_entities.insert(e);
  return w;
}

bool sink_reachable(const ToyArtifact& b, const OperationalStatePrior& prior, const std::string& start,
                    const std::string& sink_block, const Config& cfg) {
  bool cap = false;
  auto walks = enumerate_walks(b, {start}, {sink_block}, 2 * b.blocks.size(), static_cast<std::size_t>(cfg.max_walks), cap);
  std::int64_t budget = std::max<std::int64_t>(1, cfg.t_total / std::max(1, cfg.beam_b));
  for (const auto& w : walks) {
    try {
      PathEncoding enc = encode(prior, b, w);
      if (enc.model_gap) continue;
      if (solve(enc.formula(), budget, cfg.seed).status == SolveStatus::Sat) return true;
    } catch (const EncodingError&) {
    }
  }
  return false;
}

ReachabilityResult verify(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Config& cfg) {
  return verify(b, g, c, cfg, TermFrequencyEmbedder());
}

ReachabilityResult verify(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Config& cfg,
                          const Embedder& embedder) {
  ReachabilityResult r;
  VerificationTrace& tr = r.trace;

  if (auto it = g.phi.find(c.snk); it != g.phi.end() && !it->second.empty()) {
    bool any = std::any_of(it->second.begin(), it->second.end(), [&](const std::string& id) { return b.block(id); });
    if (!any) {
      r.label = Label::Unsat;
      r.refuting_families = {"path"};
      r.reason = "sink blocks no longer exist";
      return r;
    }
  }

  PathProjection proj = project_paths(g, b, c, cfg.beam_b, cfg.max_walks, embedder);
  tr.cap_hit = proj.cap_hit;
  if (!proj.gap_reason.empty()) {
    r.label = Label::Unknown;
    r.reason = proj.gap_reason;
    return r;
  }
  if (proj.paths.empty()) {
    if (proj.cap_hit) {
      r.label = Label::Unknown;
      r.reason = "model-gap: walk cap hit before any sink walk";
    } else {
      r.label = Label::Unsat;
      r.refuting_families = {"path"};
      r.reason = "no executable walk from source to sink";
    }
    return r;
  }

  std::vector<double> mapped;
  for (const auto& p : proj.paths) mapped.push_back(p.mapped_score);
  auto budgets = allocate_budget(mapped, cfg.t_total, cfg.tau_p);

  std::vector<std::optional<PathEncoding>> encs(proj.paths.size());
  bool gap = proj.cap_hit;
  for (std::size_t i = 0; i < proj.paths.size(); ++i) {
    const ScoredPath& p = proj.paths[i];
    PathVerdict pv{p.blocks, p.raw_score, p.mapped_score, budgets[i], "", 0, {}};
    try {
      encs[i] = encode(c.s_prior, b, p.blocks);
    } catch (const EncodingError& e) {
      pv.verdict = "model-gap";
      gap = true;
      tr.paths.push_back(std::move(pv));
      continue;
    }
    if (encs[i]->model_gap) {
      pv.verdict = "model-gap";
      gap = true;
      tr.paths.push_back(std::move(pv));
      continue;
    }
    tr.paths.push_back(std::move(pv));
  }

  // Strict pass, in rank order; stops at the first model.
  for (std::size_t i = 0; i < proj.paths.size(); ++i) {
    PathVerdict& pv = tr.paths[i];
    if (!pv.verdict.empty()) continue;
    Formula f = encs[i]->formula();
    SolveVerdict v = solve(f, budgets[i], cfg.seed);
    ++tr.solver_queries;
    tr.units_spent += v.units_spent;
    pv.units_spent = v.units_spent;
    pv.verdict = std::string(to_string(v.status));
    if (v.status == SolveStatus::Sat) {
      tr.units_to_first_sat = tr.units_spent;
      for (std::size_t j = i + 1; j < tr.paths.size(); ++j)
        if (tr.paths[j].verdict.empty()) tr.paths[j].verdict = "skipped";
      r.label = Label::SatStrict;
      r.witness = make_witness(*encs[i], v.model, f, b, g);
      r.reason = "path " + join(pv.blocks, ">");
      break;
    }
  }

  if (r.label != Label::SatStrict) {
    // Which prior families refute each unsat path.
    std::map<std::string, int> refute_count;
    for (std::size_t i = 0; i < tr.paths.size(); ++i) {
      PathVerdict& pv = tr.paths[i];
      if (pv.verdict != "unsat") continue;
      const PathEncoding& enc = *encs[i];
      const std::int64_t attr_budget =
          std::max<std::int64_t>(budgets[i], cfg.t_total / static_cast<std::int64_t>(tr.paths.size()));
      std::vector<Family> present;
      for (Family f : kStateFamilies)
        if (std::any_of(enc.prior_atoms.begin(), enc.prior_atoms.end(), [&](const ConstraintAtom& a) { return a.family == f; }))
          present.push_back(f);
      for (Family f : present) {
        SolveVerdict v = solve(enc.formula_without(f), attr_budget, cfg.seed);
        ++tr.solver_queries;
        if (v.status == SolveStatus::Sat) pv.refuting.emplace_back(to_string(f));
      }
      if (pv.refuting.empty() && !present.empty()) {
        std::vector<Formula> parts;
        for (const auto& a : enc.domain_atoms) parts.push_back(Formula::of(a));
        parts.push_back(enc.path);
        SolveVerdict v = solve(Formula::all(std::move(parts)), attr_budget, cfg.seed);
        ++tr.solver_queries;
        if (v.status == SolveStatus::Sat)
          for (Family f : present) pv.refuting.emplace_back(to_string(f));
      }
      if (pv.refuting.empty()) pv.refuting.push_back("path");
      for (const auto& f : pv.refuting) ++refute_count[f];
    }

    // Relaxed pass over the disjunction of the explored paths.
    std::vector<std::size_t> explored;
    for (std::size_t i = 0; i < tr.paths.size(); ++i)
      if (tr.paths[i].verdict == "unsat" || tr.paths[i].verdict == "unknown") explored.push_back(i);
    std::vector<ConstraintAtom> prior_atoms;
    if (!explored.empty()) prior_atoms = encs[explored.front()]->prior_atoms;
    std::optional<Family> fam;
    if (!explored.empty()) {
      try {
        fam = relax_family(prior_atoms, c.s_prior);
      } catch (const ConstraintError&) {
        fam.reset();
      }
    }
    SolveStatus relaxed_status = SolveStatus::Unsat;
    if (!fam) {
      tr.relaxed_verdict = "skipped";
    } else {
      tr.relaxed_family = std::string(to_string(*fam));
      std::vector<Formula> parts;
      std::set<std::string> seen;
      for (std::size_t i : explored)
        for (const auto& a : encs[i]->domain_atoms)
          if (seen.insert(a.var).second) parts.push_back(Formula::of(a));
      for (const auto& a : prior_atoms)
        if (a.family != *fam) parts.push_back(Formula::of(a));
      std::vector<Formula> alts;
      for (std::size_t i : explored) alts.push_back(encs[i]->path);
      parts.push_back(Formula::any(std::move(alts)));
      SolveVerdict v = solve(Formula::all(std::move(parts)), cfg.t_relaxed, cfg.seed);
      ++tr.solver_queries;
      tr.relaxed_units = v.units_spent;
      tr.units_spent += v.units_spent;
      tr.relaxed_verdict = std::string(to_string(v.status));
      relaxed_status = v.status;
      if (v.status == SolveStatus::Sat) {
        for (std::size_t i : explored) {
          auto holds = evaluate(encs[i]->path, v.model);
          if (!holds || !*holds) continue;
          Formula constraint = encs[i]->formula_without(*fam);
          r.label = Label::SatRelaxed;
          r.relaxed = fam;
          r.witness = make_witness(*encs[i], v.model, constraint, b, g);
          r.witness->relaxed = fam;
          r.reason = "relaxed " + tr.relaxed_family;
          break;
        }
      }
    }

    if (r.label != Label::SatRelaxed) {
      bool all_unsat = std::all_of(tr.paths.begin(), tr.paths.end(), [](const PathVerdict& p) { return p.verdict == "unsat"; });
      if (all_unsat && !gap && relaxed_status == SolveStatus::Unsat) {
        r.label = Label::Unsat;
        std::vector<std::pair<std::string, int>> ranked(refute_count.begin(), refute_count.end());
        auto order = [](const std::string& f) {
          if (f == "path") return 99;
          return static_cast<int>(family_index(family_from_string(f)));
        };
        std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
          if (a.second != b.second) return a.second > b.second;
          return order(a.first) < order(b.first);
        });
        for (const auto& [f, n] : ranked) r.refuting_families.push_back(f);
        r.reason = "refuted by " + join(r.refuting_families, ",");
      } else {
        r.label = Label::Unknown;
        r.reason = gap ? "model-gap" : "budget exhausted";
      }
    }
  }

  if (r.label == Label::SatStrict || r.label == Label::SatRelaxed) {
    std::set<std::string> own(g.phi.at(c.snk).begin(), g.phi.at(c.snk).end());
    auto starts = ordered_blocks(b, g.phi.at(c.src), false);
    for (const auto& blk : b.blocks) {
      if (!blk.has_sink() || own.count(blk.id)) continue;
      for (const auto& s : starts) {
        bool cap = false;
        if (enumerate_walks(b, {s}, {blk.id}, 2 * b.blocks.size(), 1, cap).empty()) continue;
        r.neighbors.push_back({s, blk.id, sink_reachable(b, c.s_prior, s, blk.id, cfg)});
      }
    }
  }
  return r;
}

}  // namespace remedium
