#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "remedium/osva.hpp"
#include "remedium/ratio.hpp"
#include "remedium/rsa.hpp"

namespace remedium {

class ApplyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns the remediated artifact; `b` is untouched.
ToyArtifact apply_remedy(const ToyArtifact& b, const Remedy& r);

// Graph for the remediated artifact: phi restricted to surviving blocks,
// entities left without blocks dropped with their relations, inserted blocks
// joined to the entities of the block they guard.
Ssckg rebuild_ssckg(const ToyArtifact& b_prime, const Ssckg& g);

struct Bcp {
  Ratio exact;
  double value = 1.0;
};

// |R(G') ∩ (R(G) \ V)| / |R(G) \ V|, 1 when the denominator is empty.
Bcp bcp(const Ssckg& g, const ToyArtifact& b, const Ssckg& g_prime, const ToyArtifact& b_prime,
        const std::set<std::string>& vuln);

enum class ReplayStatus { Confirmed, Unavailable, Failed, NotApplicable };

std::string_view to_string(ReplayStatus s);
ReplayStatus replay_status_from_string(std::string_view s);

struct ReplayOutcome {
  ReplayStatus status = ReplayStatus::Unavailable;
  std::vector<std::string> trace;
  bool sink_reached = false;
  std::string reason;
};

// Runs the witness from its start block. `sink_block` is the candidate sink
// the witness was built for.
ReplayOutcome replay(const ToyArtifact& b_prime, const Witness& w, bool harness);
ReplayOutcome replay(const ToyArtifact& b_prime, const Witness& w, const std::string& sink_block, bool harness);

struct CheckResult {
  bool pass = true;
  double metric = 0.0;
  std::string detail;
};

struct SideEffectReport {
  std::map<std::string, CheckResult> checks;
  std::optional<Delta> delta;  // first failing check, in check order

  bool pass() const { return !delta.has_value(); }
};

// Tier-1 view of a benign trace: which messages the gate drops (with FSM
// tracking from the trace's start state) and whether every accepted message
// follows the channel FSM.
struct GateReplay {
  std::vector<DroppedMessage> dropped;
  bool conforms = true;
};
GateReplay gate_replay(const ToyArtifact& b_prime, const BenignTrace& t);

struct CheckContext {
  const std::vector<BenignTrace>* benign = nullptr;
  const Witness* witness = nullptr;
  const Config* cfg = nullptr;
  const Ssckg* g = nullptr;
  std::optional<Label> post_label;  // Tier 3 re-verification result, when known
};

SideEffectReport side_effect_checks(int tier, const ToyArtifact& b, const ToyArtifact& b_prime, const Remedy& r,
                                    const CheckContext& ctx);

struct Certificate {
  Label post_label = Label::Unsat;
  Bcp bcp;
  std::map<std::string, CheckResult> side_effects;
  ReplayOutcome replay;
  std::vector<NeighborPath> displaced;   // informational
  std::vector<std::string> new_high_risk;  // informational
};

struct Validation {
  bool accepted = false;
  std::optional<Certificate> certificate;
  std::optional<Delta> delta;
  ToyArtifact b_prime;
  Ssckg g_prime;
  Label post_label = Label::Unknown;
};

struct ValidationContext {
  bool harness = false;
  std::vector<BenignTrace> benign;
  std::vector<NeighborPath> neighbors;  // recorded by verify
};

// Gates in order: re-verification on b' against the original g, replay when
// required, coverage, side effects.
Validation validate(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Remedy& r, Label label,
                    const Witness& w, const Config& cfg, const ValidationContext& vctx);

bool replay_required(Label label, bool harness);

// Neighbor sink walks that were not reachable before and are after.
std::vector<NeighborPath> displacement_check(const ToyArtifact& b_prime, const Candidate& c,
                                             const std::vector<NeighborPath>& neighbors, const Config& cfg);

// Entities of g' absent from g with rho >= tau_risk.
std::vector<std::string> nvr_check(const Ssckg& g, const Ssckg& g_prime, const Config& cfg);

}  // namespace remedium
