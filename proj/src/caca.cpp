#include "remedium/caca.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace remedium {

bool Candidate::operator==(const Candidate& o) const {
  return id == o.id && v == o.v && src == o.src && snk == o.snk && rho == o.rho &&
         relation_type == o.relation_type && source_tools == o.source_tools && s_prior == o.s_prior;
}

void Config::check() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (!(tau_p > 0.0)) throw std::invalid_argument("tau_p must be positive");
  if (t_total <= 0) throw std::invalid_argument("t_total must be positive");
  if (t_relaxed <= 0) throw std::invalid_argument("t_relaxed must be positive");
  if (!(tau_cov >= 0.0 && tau_cov <= 1.0)) throw std::invalid_argument("tau_cov must lie in [0,1]");
  if (!(tau_block >= 0.0 && tau_block <= 1.0)) throw std::invalid_argument("tau_block must lie in [0,1]");
  if (k_iters < 1) throw std::invalid_argument("k_iters must be at least 1");
  if (beam_b < 1) throw std::invalid_argument("beam_b must be at least 1");
  if (!(tau_risk >= 0.0 && tau_risk <= 1.0)) throw std::invalid_argument("tau_risk must lie in [0,1]");
  if (max_walks < 1) throw std::invalid_argument("max_walks must be at least 1");
  if (k_candidates < 1) throw std::invalid_argument("k_candidates must be at least 1");
  if (underblock_samples < 1) throw std::invalid_argument("underblock_samples must be at least 1");
}

std::string candidate_id(const std::string& v, const std::string& src, const std::string& snk) {
  return "c:" + v + ":" + src + ":" + snk;
}

std::vector<Family> routed_families(const std::string& relation_type) {
  if (relation_type == "protocol-interaction") return {Family::Proto};
  if (relation_type == "mmio" || relation_type == "io" || relation_type == "shared-mem")
    return {Family::Io, Family::Runtime};
  if (relation_type == "ipc" || relation_type == "cross-component-call") return {Family::Component};
  return {};
}

namespace {

std::optional<std::string> map_entity(const std::string& ref, const Ssckg& g) {
  if (ref.empty()) return std::nullopt;
  if (g.entity(ref)) return ref;
  auto owners = g.entities_of_block(ref);
  if (owners.empty()) return std::nullopt;
  std::sort(owners.begin(), owners.end());
  return owners.front();
}

// Atoms the routing table derives for one family from the artifact itself.
std::vector<ConstraintAtom> derived_atoms(Family f, const ToyArtifact& b) {
  std::vector<ConstraintAtom> out;
  if (f == Family::Proto) {
    for (const auto& ch : b.channels) {
      if (ch.state_var.empty() || !ch.fsm) continue;
      out.push_back({ch.state_var, Relation::FsmPrecedes, Operand::fsm_state(ch.fsm->initial), Family::Proto,
                     AtomOrigin::Prior});
    }
    return out;
  }
  for (const auto& v : b.vars) {
    bool match = (f == Family::Io && v.origin == VarOrigin::Io) ||
                 (f == Family::Runtime && v.origin == VarOrigin::Runtime) ||
                 (f == Family::Component && v.origin == VarOrigin::Component);
    if (match) out.push_back(make_range(v.name, v.lo, v.hi, f, AtomOrigin::Prior));
  }
  return out;
}

}  // namespace

NormalizeResult normalize(const std::vector<RawAlert>& alerts, const Ssckg& g, const ToyArtifact& b,
                          const ContextHints& omega) {
  NormalizeResult out;
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < alerts.size(); ++i) {
    const RawAlert& a = alerts[i];
    auto na = [&](const std::string& ref, const std::string& why) {
      out.not_applicable.push_back({i, a.source_tool, ref, why});
    };
    auto v = map_entity(a.entity_or_block, g);
    if (!v) {
      na(a.entity_or_block, "entity or block '" + a.entity_or_block + "' maps to no SSCKG entity");
      continue;
    }
    auto src = map_entity(a.src, g);
    if (!src) {
      na(a.src, "source '" + a.src + "' maps to no SSCKG entity");
      continue;
    }
    auto snk = map_entity(a.snk, g);
    if (!snk) {
      na(a.snk, "sink '" + a.snk + "' maps to no SSCKG entity");
      continue;
    }
    if (!(a.rho >= 0.0 && a.rho <= 1.0)) {
      na(a.entity_or_block, "risk score outside [0,1]");
      continue;
    }
    std::string id = candidate_id(*v, *src, *snk);
    auto it = by_id.find(id);
    if (it != by_id.end()) {
      Candidate& c = out.candidates[it->second];
      c.rho = std::max(c.rho, a.rho);
      if (std::find(c.source_tools.begin(), c.source_tools.end(), a.source_tool) == c.source_tools.end()) {
        c.source_tools.push_back(a.source_tool);
        std::sort(c.source_tools.begin(), c.source_tools.end());
      }
      continue;
    }
    Candidate c;
    c.id = id;
    c.v = *v;
    c.src = *src;
    c.snk = *snk;
    c.rho = a.rho;
    c.relation_type = a.relation_type;
    c.source_tools = {a.source_tool};
    for (Family f : kStateFamilies) {
      FamilyPrior& fp = c.s_prior.at(f);
      if (const auto& hint = omega.at(f)) {
        fp.atoms = hint->atoms;
        for (auto& atom : fp.atoms) {
          atom.family = f;
          atom.origin = AtomOrigin::Prior;
        }
        fp.evidence = hint->evidence;
      }
    }
    for (Family f : routed_families(a.relation_type)) {
      auto extra = derived_atoms(f, b);
      auto& atoms = c.s_prior.at(f).atoms;
      for (auto& e : extra)
        if (std::find(atoms.begin(), atoms.end(), e) == atoms.end()) atoms.push_back(std::move(e));
    }
    by_id[id] = out.candidates.size();
    out.candidates.push_back(std::move(c));
  }
  return out;
}

std::vector<RawAlert> to_alerts(const std::vector<Candidate>& cands) {
  std::vector<RawAlert> out;
  for (const auto& c : cands)
    for (const auto& tool : c.source_tools) out.push_back({tool, c.v, c.relation_type, c.src, c.snk, c.rho});
  return out;
}

Ratio sem_centrality_exact(const Ssckg& g, const std::string& v) {
  const std::size_t n = g.entities.size();
  if (n <= 1) return {};
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[g.entities[i].id] = i;
  auto vit = idx.find(v);
  if (vit == idx.end()) return {};
  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& r : g.relations) {
    if (!r.risk) continue;
    auto a = idx.find(r.src), b = idx.find(r.dst);
    if (a != idx.end() && b != idx.end() && a->second != b->second) adj[a->second].insert(b->second);
  }
  // BFS from every source: distances and shortest-path counts.
  std::vector<std::vector<long>> dist(n, std::vector<long>(n, -1));
  std::vector<std::vector<std::int64_t>> sigma(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> q{s};
    dist[s][s] = 0;
    sigma[s][s] = 1;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop_front();
      for (std::size_t w : adj[u]) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push_back(w);
        }
        if (dist[s][w] == dist[s][u] + 1) sigma[s][w] += sigma[s][u];
      }
    }
  }
  const std::size_t m = vit->second;
  Ratio total;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t || s == m || t == m || dist[s][t] < 0 || dist[s][m] < 0 || dist[m][t] < 0) continue;
      if (dist[s][m] + dist[m][t] != dist[s][t]) continue;
      total = total + Ratio::of(sigma[s][m] * sigma[m][t], sigma[s][t]);
    }
  return total / static_cast<std::int64_t>(n * (n - 1));
}

double sem_centrality(const Ssckg& g, const std::string& v) { return sem_centrality_exact(g, v).value(); }

std::vector<RankedCandidate> rank(const std::vector<Candidate>& cands, const Ssckg& g, const Config& cfg) {
  std::vector<RankedCandidate> out;
  for (const auto& c : cands) {
    RankedCandidate r{c, sem_centrality(g, c.v), 0.0};
    r.score = cfg.alpha * c.rho + (1.0 - cfg.alpha) * r.centrality;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.candidate.id < b.candidate.id;
  });
  return out;
}

std::set<int> tier_set(Availability a) {
  switch (a) {
    case Availability::PolicyOnly: return {1};
    case Availability::BinaryRewritable: return {1, 2};
    case Availability::SourceAvailable: return {1, 2, 3};
  }
  return {};
}

}  // namespace remedium
