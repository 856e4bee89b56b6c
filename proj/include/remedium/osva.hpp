#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remedium/caca.hpp"
#include "remedium/embed.hpp"
#include "remedium/encode.hpp"
#include "remedium/interpreter.hpp"
#include "remedium/solver.hpp"

namespace remedium {

enum class Label { SatStrict, SatRelaxed, Unsat, Unknown };

std::string_view to_string(Label l);
Label label_from_string(std::string_view s);

// Concrete witness (I*, S*) together with what produced it.
struct Witness {
  std::map<std::string, std::vector<Message>> inputs;  // I*: channel -> messages
  Assignment state;                                     // S*: operational-state variables
  std::string start_block;
  std::vector<std::string> path;
  Formula constraint;  // the constraint set the model satisfies
  Assignment model;
  PathEncoding encoding;
  std::set<std::string> vuln_entities;  // entities of the path blocks
  std::optional<Family> relaxed;

  RunInput as_input() const;
};

struct ScoredPath {
  std::vector<std::string> blocks;
  std::vector<std::string> labels;
  double raw_score = 0.0;
  double mapped_score = 0.5;
  std::int64_t budget_units = 0;
  bool in_beam = false;
};

struct PathProjection {
  std::vector<ScoredPath> paths;  // descending mapped score, ties in enumeration order
  std::vector<std::string> ssckg_labels;
  bool cap_hit = false;
  std::string gap_reason;  // set when the candidate has no usable preimage
};

// Acyclic walks from src-member blocks to sink blocks of snk, scored against
// the SSCKG label sequence. All walks are returned; the first beam_b are
// flagged in_beam. Walks are capped at 2x the block count in length and at
// cfg.max_walks in number (cap_hit).
PathProjection project_paths(const Ssckg& g, const ToyArtifact& b, const Candidate& c, int beam_b, int max_walks,
                             const Embedder& embedder);
PathProjection project_paths(const Ssckg& g, const ToyArtifact& b, const Candidate& c, int beam_b, int max_walks = 64);

// Labels seen along a walk: entity labels via phi, or the block's own labels
// for unmapped blocks. Consecutive repeats collapse.
std::vector<std::string> walk_labels(const Ssckg& g, const ToyArtifact& b, const std::vector<std::string>& walk);
// Entity labels along the shortest risk-relation path src -> snk.
std::vector<std::string> ssckg_path_labels(const Ssckg& g, const std::string& src, const std::string& snk);

struct PathVerdict {
  std::vector<std::string> blocks;
  double raw_score = 0.0;
  double mapped_score = 0.0;
  std::int64_t budget_units = 0;
  std::string verdict;  // sat / unsat / unknown / model-gap / skipped
  std::int64_t units_spent = 0;
  std::vector<std::string> refuting;  // families that flip the path when removed
};

struct NeighborPath {
  std::string start_block;
  std::string sink_block;
  bool sat_before = false;
};

struct VerificationTrace {
  std::vector<PathVerdict> paths;
  std::string relaxed_family;
  std::string relaxed_verdict;
  std::int64_t relaxed_units = 0;
  bool cap_hit = false;
  std::int64_t units_spent = 0;
  std::int64_t units_to_first_sat = -1;
  int solver_queries = 0;
};

struct ReachabilityResult {
  Label label = Label::Unknown;
  std::optional<Witness> witness;
  std::vector<std::string> refuting_families;  // Unsat: primary first
  std::optional<Family> relaxed;               // SatRelaxed
  std::string reason;
  VerificationTrace trace;
  std::vector<NeighborPath> neighbors;
};

ReachabilityResult verify(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Config& cfg);
ReachabilityResult verify(const ToyArtifact& b, const Ssckg& g, const Candidate& c, const Config& cfg,
                          const Embedder& embedder);

// Builds I*, S* and the path entities from a model of `enc`.
Witness make_witness(const PathEncoding& enc, const Assignment& model, const Formula& constraint, const ToyArtifact& b,
                     const Ssckg& g);

// Strict reachability of one sink block from one start block (all walks),
// used for neighbor bookkeeping and displacement checks.
bool sink_reachable(const ToyArtifact& b, const OperationalStatePrior& prior, const std::string& start,
                    const std::string& sink_block, const Config& cfg);

}  // namespace remedium
