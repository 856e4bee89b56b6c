#include "remedium/controller.hpp"

#include <algorithm>

namespace remedium {

std::string_view to_string(FinalState s) {
  switch (s) {
    case FinalState::VerifiedRemediation: return "verified-remediation";
    case FinalState::ResolvedFalsePositive: return "resolved-false-positive";
    case FinalState::UnconfirmedCandidate: return "unconfirmed-candidate";
    case FinalState::UnresolvedOrAdvisory: return "unresolved-or-advisory";
    case FinalState::RemediationFailed: return "remediation-failed";
  }
  return "?";
}

FinalState final_state_from_string(std::string_view s) {
  for (FinalState f : {FinalState::VerifiedRemediation, FinalState::ResolvedFalsePositive,
                       FinalState::UnconfirmedCandidate, FinalState::UnresolvedOrAdvisory,
                       FinalState::RemediationFailed})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown final state '" + std::string(s) + "'");
}

namespace {

TraceEntry entry_for(int tier, int iteration, const Remedy& r, const Validation& v) {
  TraceEntry e;
  e.tier = tier;
  e.iteration = iteration;
  e.remedy = r.describe();
  if (v.accepted) {
    e.outcome = "accepted";
    e.certificate = v.certificate;
  } else {
    e.outcome = "rejected";
    e.delta = v.delta;
  }
  return e;
}

TraceEntry infeasible(int tier, int iteration, const std::string& why) {
  TraceEntry e;
  e.tier = tier;
  e.iteration = iteration;
  e.outcome = "infeasible";
  e.note = why;
  return e;
}

}  // namespace

CaseOutcome rsa_cva_loop(const LoopInput& in, const Config& cfg) {
  CaseOutcome out;
  out.candidate_id = in.c->id;
  const ToyArtifact& b = *in.b;
  const Ssckg& g = *in.g;
  const Candidate& c = *in.c;
  const Witness& w = *in.witness;

  for (auto it = in.tiers.rbegin(); it != in.tiers.rend(); ++it) {
    const int tier = *it;
    std::vector<Delta> deltas;  // tier-local

    if (tier == 3) {
      std::vector<Remedy> cands;
      try {
        cands = synth_tier3(c, w, b, g, deltas, cfg.k_candidates);
      } catch (const TierInfeasible& e) {
        out.trace.push_back(infeasible(3, 1, e.what()));
        continue;
      }
      std::optional<std::size_t> best;
      std::vector<Validation> results;
      for (auto& r : cands) {
        r.iteration = 1;
        results.push_back(validate(b, g, c, r, in.label, w, cfg, in.vctx));
        const Validation& v = results.back();
        if (!v.accepted) {
          out.last_delta = v.delta;
          continue;
        }
        if (!best || v.certificate->bcp.exact.value() > results[*best].certificate->bcp.exact.value())
          best = results.size() - 1;
      }
      if (best) {
        out.trace.push_back(entry_for(3, 1, cands[*best], results[*best]));
        out.state = FinalState::VerifiedRemediation;
        out.tier = 3;
        out.remedy = cands[*best];
        out.certificate = results[*best].certificate;
        out.reason = "template " + cands[*best].template_id + " accepted";
        return out;
      }
      out.trace.push_back(entry_for(3, 1, cands.back(), results.back()));
      continue;
    }

    for (int iter = 1; iter <= cfg.k_iters; ++iter) {
      Remedy r;
      try {
        r = tier == 2 ? synth_tier2(c, w, b, deltas) : synth_tier1(c, w, b, deltas, in.enforcement);
      } catch (const TierInfeasible& e) {
        out.trace.push_back(infeasible(tier, iter, e.what()));
        break;
      }
      r.iteration = iter;
      Validation v = validate(b, g, c, r, in.label, w, cfg, in.vctx);
      out.trace.push_back(entry_for(tier, iter, r, v));
      if (v.accepted) {
        out.state = FinalState::VerifiedRemediation;
        out.tier = tier;
        out.remedy = r;
        out.certificate = v.certificate;
        out.reason = "tier " + std::to_string(tier) + " accepted at iteration " + std::to_string(iter);
        return out;
      }
      out.last_delta = v.delta;
      if (cfg.feedback) deltas.push_back(*v.delta);
    }
  }

  if (in.enforcement) {
    try {
      Remedy adv = synth_tier1(c, w, b, {}, true);
      adv.advisory = true;
      out.remedy = adv;
    } catch (const TierInfeasible&) {
    }
  }
  if (out.remedy) {
    out.state = FinalState::UnresolvedOrAdvisory;
    out.reason = "all tiers exhausted; advisory policy issued";
  } else {
    out.state = FinalState::RemediationFailed;
    out.reason = "all tiers exhausted";
  }
  return out;
}

Config case_config(const CaseManifest& m, const std::string& user_json) {
  Config cfg;
  if (!m.config_overrides.empty()) apply_config_json(cfg, m.config_overrides);
  if (!user_json.empty()) apply_config_json(cfg, user_json);
  cfg.check();
  return cfg;
}

CaseOutcome run_candidate(const CaseManifest& m, const Candidate& c, const Config& cfg, bool remediate) {
  CaseOutcome out;
  out.candidate_id = c.id;
  out.verification = verify(m.artifact, m.ssckg, c, cfg);
  const ReachabilityResult& res = out.verification;
  const bool harness = m.context.replay.harness;
  const bool enforcement = m.context.replay.enforcement_point;

  switch (res.label) {
    case Label::Unsat:
      out.state = FinalState::ResolvedFalsePositive;
      out.reason = res.refuting_families.empty() ? res.reason : res.refuting_families.front();
      return out;
    case Label::Unknown:
      out.state = FinalState::UnresolvedOrAdvisory;
      out.reason = res.reason;
      if (enforcement) {
        try {
          out.remedy = synth_tier1_advisory(c, m.artifact, true);
        } catch (const TierInfeasible& e) {
          out.reason += "; no advisory: " + std::string(e.what());
        }
      }
      return out;
    case Label::SatRelaxed:
      if (!harness) {
        out.state = FinalState::UnconfirmedCandidate;
        out.reason = "relaxed " + res.trace.relaxed_family + " without replay harness";
        return out;
      }
      break;
    case Label::SatStrict: break;
  }
  if (harness) out.original_replay = replay(m.artifact, *res.witness, true);
  if (!remediate) {
    out.state = FinalState::UnconfirmedCandidate;
    out.reason = "verification only";
    return out;
  }

  LoopInput in;
  in.b = &m.artifact;
  in.g = &m.ssckg;
  in.c = &c;
  in.witness = &*res.witness;
  in.label = res.label;
  in.tiers = tier_set(m.artifact.availability);
  in.enforcement = enforcement;
  in.vctx.harness = harness;
  in.vctx.benign = m.benign_traces;
  in.vctx.neighbors = res.neighbors;
  CaseOutcome loop = rsa_cva_loop(in, cfg);
  loop.verification = std::move(out.verification);
  loop.original_replay = std::move(out.original_replay);
  return loop;
}

CaseReport run_case(const CaseManifest& m, const Config& cfg) {
  CaseReport rep;
  rep.case_id = m.id;
  rep.partition = m.partition;
  for (const auto& v : validate_case(m.artifact, m.ssckg)) rep.errors.push_back(v.code + " at " + v.where + ": " + v.message);
  if (!rep.errors.empty()) return rep;

  NormalizeResult norm;
  try {
    norm = normalize(m.alerts, m.ssckg, m.artifact, m.context);
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("normalize: ") + e.what());
    return rep;
  }
  rep.not_applicable = norm.not_applicable;
  for (const auto& rc : rank(norm.candidates, m.ssckg, cfg)) {
    CaseOutcome o;
    try {
      o = run_candidate(m, rc.candidate, cfg, true);
    } catch (const std::exception& e) {
      rep.errors.push_back(rc.candidate.id + ": " + e.what());
      continue;
    }
    o.centrality = rc.centrality;
    o.score = rc.score;
    rep.outcomes.push_back(std::move(o));
  }
  return rep;
}

}  // namespace remedium
