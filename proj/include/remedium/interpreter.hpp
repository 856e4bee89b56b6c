#pragma once

#include <map>
#include <string>
#include <vector>

#include "remedium/artifact.hpp"

namespace remedium {

using Message = std::map<std::string, Value>;  // field -> value

// Concrete inputs: queued messages per channel plus initial values for
// operational-state variables. Unset state variables start at their lower
// bound; an unset channel state variable starts at the FSM's initial state.
struct RunInput {
  std::map<std::string, std::vector<Message>> channels;
  Assignment state;
};

// A benign run: inputs plus the block it starts from (empty: the artifact's
// first entry-tagged block).
struct BenignTrace {
  RunInput input;
  std::string entry;
};

std::string default_entry(const ToyArtifact& b);

struct GuardFiring {
  std::string block;
  Assignment snapshot;  // observable variable values at the guard
};

struct DroppedMessage {
  std::string channel;
  std::size_t index = 0;  // position in the channel's queue
  Value fsm_state = 0;
  Value type = 0;
};

struct RunTrace {
  std::vector<std::string> blocks;
  std::vector<std::string> sinks_triggered;  // block ids, in order
  std::vector<GuardFiring> guard_firings;
  std::vector<DroppedMessage> dropped;
  std::vector<std::string> fsm_violations;  // accepted messages without a transition
  Assignment final_state;
  bool step_bound_hit = false;
  bool fault = false;  // assignment left the declared domain, or a bad reference
  std::string fault_reason;
};

inline constexpr std::size_t kStepBound = 10'000;

// Runs from `start`. One step is one executed instruction or edge transfer.
RunTrace run(const ToyArtifact& b, const std::string& start, const RunInput& input, std::size_t step_bound = kStepBound);

// Evaluates a channel's Tier-1 gate on a message in the given FSM state.
bool policy_blocks(const ChannelSpec& ch, const Message& m, Value fsm_state);

}  // namespace remedium
