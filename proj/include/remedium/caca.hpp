#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "remedium/artifact.hpp"
#include "remedium/encode.hpp"
#include "remedium/ratio.hpp"

namespace remedium {

struct HintRecord {
  std::vector<ConstraintAtom> atoms;
  double evidence = 1.0;
};

struct ReplayHint {
  bool enforcement_point = false;
  bool harness = false;
};

// Per-dimension context hints (Ω).
struct ContextHints {
  std::optional<HintRecord> art;
  std::array<std::optional<HintRecord>, 6> families;  // indexed by family_index
  ReplayHint replay;

  std::optional<HintRecord>& at(Family f) { return families[family_index(f)]; }
  const std::optional<HintRecord>& at(Family f) const { return families[family_index(f)]; }
};

struct RawAlert {
  std::string source_tool;
  std::string entity_or_block;
  std::string relation_type;
  std::string src;
  std::string snk;
  double rho = 0.0;
};

struct Candidate {
  std::string id;  // c:<v>:<src>:<snk>
  std::string v;
  std::string src;
  std::string snk;
  double rho = 0.0;
  std::string relation_type;
  std::vector<std::string> source_tools;
  OperationalStatePrior s_prior;

  bool operator==(const Candidate& o) const;
};

struct NaRow {
  std::size_t alert_index = 0;
  std::string source_tool;
  std::string reference;
  std::string reason;
};

struct NormalizeResult {
  std::vector<Candidate> candidates;
  std::vector<NaRow> not_applicable;
};

struct Config {
  double alpha = 0.6;
  double tau_p = 0.5;
  std::int64_t t_total = 300'000;
  std::int64_t t_relaxed = 150'000;
  double tau_cov = 0.95;
  double tau_block = 0.05;
  int k_iters = 3;
  int beam_b = 8;
  double tau_risk = 0.7;
  std::uint64_t seed = 42;
  bool feedback = true;            // pass rejection constraints back to synthesis
  int max_walks = 64;              // walk enumeration cap per candidate
  int k_candidates = 5;            // Tier-3 templates per round
  int underblock_samples = 64;     // witness-class inputs replayed by the Tier-2 check

  // Throws std::invalid_argument naming the first bad field.
  void check() const;
};

std::string candidate_id(const std::string& v, const std::string& src, const std::string& snk);

// Families that an alert relation type routes derived atoms into.
std::vector<Family> routed_families(const std::string& relation_type);

NormalizeResult normalize(const std::vector<RawAlert>& alerts, const Ssckg& g, const ToyArtifact& b,
                          const ContextHints& omega);

// Re-encodes candidates as alerts (one per source tool).
std::vector<RawAlert> to_alerts(const std::vector<Candidate>& cands);

double sem_centrality(const Ssckg& g, const std::string& v);
Ratio sem_centrality_exact(const Ssckg& g, const std::string& v);

struct RankedCandidate {
  Candidate candidate;
  double centrality = 0.0;
  double score = 0.0;
};

std::vector<RankedCandidate> rank(const std::vector<Candidate>& cands, const Ssckg& g, const Config& cfg);

std::set<int> tier_set(Availability a);

}  // namespace remedium
