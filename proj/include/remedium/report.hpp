#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remedium/controller.hpp"
#include "remedium/json_io.hpp"
#include "remedium/metrics.hpp"

namespace remedium {

struct WitnessRecord {
  std::map<std::string, std::vector<Message>> inputs;
  Assignment state;
  std::string start_block;
  std::vector<std::string> path;
  std::string constraint;  // s-expression
  std::string relaxed;

  bool operator==(const WitnessRecord&) const = default;
};

// Serializable view of a CaseOutcome.
struct OutcomeRecord {
  std::string candidate_id;
  double centrality = 0.0;
  double score = 0.0;
  std::string label;
  std::vector<std::string> refuting;
  std::string verify_reason;
  VerificationTrace vtrace;
  std::optional<WitnessRecord> witness;
  std::optional<ReplayOutcome> original_replay;
  std::vector<NeighborPath> neighbors;
  std::string final_state;
  int tier = 0;
  std::optional<Remedy> remedy;
  std::optional<Certificate> certificate;
  std::optional<Delta> last_delta;
  std::string reason;
  std::vector<TraceEntry> trace;

  // SatStrict, or SatRelaxed whose witness replays to the sink.
  bool positive() const;
};

OutcomeRecord record_of(const CaseOutcome& o);

struct CaseRecord {
  std::string case_id;
  std::string partition;
  std::vector<std::string> errors;
  std::vector<NaRow> not_applicable;
  GroundTruth ground_truth;
  std::vector<OutcomeRecord> outcomes;
  int primary = -1;               // outcome the ground truth refers to
  std::optional<int> best_rank;   // first ranked ground-truth path, 1-based
};

CaseRecord record_of(const CaseManifest& m, const CaseReport& r);

struct LabelMix {
  int sat_strict = 0, sat_relaxed = 0, unsat = 0, unknown = 0;
  double rate(int n) const;
  int total() const { return sat_strict + sat_relaxed + unsat + unknown; }
};

struct RemediationCounts {
  int denominator = 0;  // SatStrict cases
  std::map<int, int> verified_by_tier;
  int advisories = 0;
  int failed = 0;
  int unconfirmed = 0;
  double success_rate = 0.0;
};

struct Diagnostics {
  double mean_units_to_first_sat = 0.0;     // over SatStrict cases
  double solver_queries_per_confirmed = 0.0;
  int not_applicable_rows = 0;
  int case_errors = 0;
  int displaced = 0;
  int new_high_risk = 0;
};

struct PartitionSummary {
  std::string name;
  int cases = 0;
  Confusion confusion;
  LabelMix mix;
  RemediationCounts remediation;
  std::map<int, double> recall;
  int ranked_cases = 0;
  Diagnostics diagnostics;
};

struct SuiteResult {
  std::uint64_t seed = 0;
  std::string config;  // effective user overrides, JSON
  std::vector<CaseRecord> cases;  // sorted by case id
  PartitionSummary overall;
  std::vector<PartitionSummary> partitions;  // sorted by name
  std::vector<std::string> warnings;
};

void to_json(Json& j, const WitnessRecord& w);
void from_json(const Json& j, WitnessRecord& w);
void to_json(Json& j, const OutcomeRecord& o);
void from_json(const Json& j, OutcomeRecord& o);
void to_json(Json& j, const CaseRecord& c);
void from_json(const Json& j, CaseRecord& c);

// Aggregates case records; cases are sorted by id first.
SuiteResult summarize(std::vector<CaseRecord> cases, std::uint64_t seed, const std::string& config_json);

std::string report_json(const SuiteResult& r);
SuiteResult parse_report(const std::string& json_text);
std::string summary_text(const SuiteResult& r);

// Tier-1 policy as a standalone rule document.
std::string rules_document(const std::string& case_id, const std::string& candidate, const Remedy& r);
// Certificate as a standalone JSON document.
std::string certificate_document(const std::string& case_id, const OutcomeRecord& o);

// Writes report.json, summary.txt, rules/*.rules and certificates/*.json.
void write_report(const std::filesystem::path& dir, const SuiteResult& r);

// Loads and runs every manifest in `dir` on a pool of `workers` threads.
SuiteResult run_suite(const std::filesystem::path& dir, const std::string& user_json, int workers);

// Runs one manifest; manifest errors become case errors.
CaseRecord run_manifest(const CaseManifest& m, const std::string& user_json);

}  // namespace remedium
