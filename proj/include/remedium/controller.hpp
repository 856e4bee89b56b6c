#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remedium/cva.hpp"
#include "remedium/manifest.hpp"
#include "remedium/osva.hpp"
#include "remedium/rsa.hpp"

namespace remedium {

enum class FinalState {
  VerifiedRemediation,
  ResolvedFalsePositive,
  UnconfirmedCandidate,
  UnresolvedOrAdvisory,
  RemediationFailed
};

std::string_view to_string(FinalState s);
FinalState final_state_from_string(std::string_view s);

struct TraceEntry {
  int tier = 0;
  int iteration = 0;
  std::string outcome;  // accepted / rejected / infeasible
  std::string remedy;   // describe() of the validated remedy
  std::optional<Delta> delta;
  std::optional<Certificate> certificate;
  std::string note;
};

struct CaseOutcome {
  std::string candidate_id;
  double centrality = 0.0;
  double score = 0.0;
  ReachabilityResult verification;
  std::optional<ReplayOutcome> original_replay;  // witness on the unremediated artifact, when a harness exists
  FinalState state = FinalState::UnresolvedOrAdvisory;
  int tier = 0;
  std::optional<Remedy> remedy;  // accepted remedy, or the advisory
  std::optional<Certificate> certificate;
  std::optional<Delta> last_delta;
  std::string reason;
  std::vector<TraceEntry> trace;
};

struct CaseReport {
  std::string case_id;
  std::string partition;
  std::vector<std::string> errors;  // manifest problems; no outcomes when set
  std::vector<NaRow> not_applicable;
  std::vector<CaseOutcome> outcomes;
};

struct LoopInput {
  const ToyArtifact* b = nullptr;
  const Ssckg* g = nullptr;
  const Candidate* c = nullptr;
  const Witness* witness = nullptr;
  Label label = Label::SatStrict;
  std::set<int> tiers;
  bool enforcement = false;
  ValidationContext vctx;
};

// Tiers strongest first, K synthesize/validate rounds each (Tier 3: one
// round of up to k templates), Δ reset at each fallback.
CaseOutcome rsa_cva_loop(const LoopInput& in, const Config& cfg);

// Config for a case: defaults, then the manifest's overrides, then the
// caller's JSON object (config file merged with command-line flags).
Config case_config(const CaseManifest& m, const std::string& user_json = {});

CaseReport run_case(const CaseManifest& m, const Config& cfg);

// Verification and routing for a single candidate of a case (no loop when
// `remediate` is false).
CaseOutcome run_candidate(const CaseManifest& m, const Candidate& c, const Config& cfg, bool remediate);

}  // namespace remedium
