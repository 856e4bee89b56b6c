#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remedium/caca.hpp"
#include "remedium/interpreter.hpp"
#include "remedium/osva.hpp"

namespace remedium {

enum class DeltaKind { Reachability, Replay, Coverage, SideEffect };

std::string_view to_string(DeltaKind k);
DeltaKind delta_kind_from_string(std::string_view s);

// Typed rejection returned by validation. Only the fields relevant to the
// failing gate are filled.
struct Delta {
  DeltaKind kind = DeltaKind::Reachability;
  std::string check;  // failing side-effect check, or the gate name
  std::string message;
  int tier = 0;
  std::string insertion_block;           // Tier 2: rejected insertion point
  std::string template_id;               // Tier 3: rejected template
  std::vector<std::string> must_remain;  // coverage: entities that dropped out of reach
  Dnf must_not_block;                    // Tier 1: message regions the gate may not drop
  std::vector<BenignTrace> keep_quiet;   // Tier 2: traces the guard may not fire on
  std::vector<Assignment> guard_states;  // Tier 2: snapshots where the guard fired
};

Delta make_delta(DeltaKind kind, std::string check, std::string message, int tier = 0);

struct Remedy {
  int tier = 1;
  int iteration = 1;
  bool advisory = false;

  // Tier 1
  std::string channel;
  Dnf gate;  // over channel fields and the channel state variable

  // Tier 2
  std::string insertion_block;
  Dnf psi;  // guard predicate over observable variables; Tier 3: halting condition
  std::string guard_block;
  std::string handler_block;
  std::vector<Edge> handler_edges;  // continuation of the handler (from = handler_block)

  // Tier 3
  std::string template_id;
  std::string target_block;
  std::map<std::string, std::string> params;
  std::vector<std::string> must_remain;  // entities that must stay reachable

  std::string describe() const;
};

class TierInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tier-1 gate synthesis; `enforcement` is the context's enforcement-point flag.
Remedy synth_tier1(const Candidate& c, const Witness& w, const ToyArtifact& b, const std::vector<Delta>& deltas,
                   bool enforcement);

// Advisory gate for an Unknown candidate: the prior constraints projected onto
// the channel fields they mention. Throws TierInfeasible when the prior names
// no channel field or there is no enforcement point.
Remedy synth_tier1_advisory(const Candidate& c, const ToyArtifact& b, bool enforcement);

Remedy synth_tier2(const Candidate& c, const Witness& w, const ToyArtifact& b, const std::vector<Delta>& deltas);

// Up to k template instances keyed by the sink kind, in library order.
std::vector<Remedy> synth_tier3(const Candidate& c, const Witness& w, const ToyArtifact& b, const Ssckg& g,
                                const std::vector<Delta>& deltas, int k_candidates = 5);

// Template library, in preference order per sink kind.
const std::vector<std::string>& templates_for(SinkKind k);

// Variables observable and defined at walk position i of the witness path,
// mapped to their SSA names there.
std::map<std::string, std::string> observable_at(const Witness& w, const ToyArtifact& b, std::size_t i);

// Channel read on the witness path that the Tier-1 gate applies to: the last
// read before the sink. nullptr when the path reads nothing.
const ReadRecord* gate_read(const Witness& w);

}  // namespace remedium
