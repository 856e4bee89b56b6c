#include "remedium/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "remedium/json_io.hpp"

namespace remedium {

bool OutcomeRecord::positive() const {
  if (label == "sat-strict") return true;
  return label == "sat-relaxed" && original_replay && original_replay->sink_reached;
}

OutcomeRecord record_of(const CaseOutcome& o) {
  OutcomeRecord r;
  const ReachabilityResult& v = o.verification;
  r.candidate_id = o.candidate_id;
  r.centrality = o.centrality;
  r.score = o.score;
  r.label = std::string(to_string(v.label));
  r.refuting = v.refuting_families;
  r.verify_reason = v.reason;
  r.vtrace = v.trace;
  if (v.witness) {
    const Witness& w = *v.witness;
    r.witness = WitnessRecord{w.inputs, w.state, w.start_block, w.path, to_sexpr(w.constraint),
                              w.relaxed ? std::string(to_string(*w.relaxed)) : std::string()};
  }
  r.original_replay = o.original_replay;
  r.neighbors = v.neighbors;
  r.final_state = std::string(to_string(o.state));
  r.tier = o.tier;
  r.remedy = o.remedy;
  r.certificate = o.certificate;
  r.last_delta = o.last_delta;
  r.reason = o.reason;
  r.trace = o.trace;
  return r;
}

CaseRecord record_of(const CaseManifest& m, const CaseReport& rep) {
  CaseRecord c;
  c.case_id = m.id;
  c.partition = m.partition;
  c.errors = rep.errors;
  c.not_applicable = rep.not_applicable;
  c.ground_truth = m.ground_truth;
  for (const auto& o : rep.outcomes) c.outcomes.push_back(record_of(o));
  for (std::size_t i = 0; i < c.outcomes.size(); ++i)
    if (c.outcomes[i].candidate_id == m.ground_truth.candidate) c.primary = static_cast<int>(i);
  if (c.primary < 0 && m.ground_truth.candidate.empty() && !c.outcomes.empty()) c.primary = 0;
  if (c.primary >= 0 && !m.ground_truth.vulnerable_paths.empty()) {
    const auto& paths = c.outcomes[static_cast<std::size_t>(c.primary)].vtrace.paths;
    const auto& truth = m.ground_truth.vulnerable_paths;
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (std::find(truth.begin(), truth.end(), paths[i].blocks) != truth.end()) {
        c.best_rank = static_cast<int>(i) + 1;
        break;
      }
  }
  return c;
}

double LabelMix::rate(int n) const { return total() == 0 ? 0.0 : static_cast<double>(n) / total(); }

namespace {

const OutcomeRecord* primary_of(const CaseRecord& c) {
  return c.primary < 0 ? nullptr : &c.outcomes[static_cast<std::size_t>(c.primary)];
}

PartitionSummary summarize_part(const std::string& name, const std::vector<const CaseRecord*>& cases,
                                std::vector<std::string>& warnings) {
  PartitionSummary s;
  s.name = name;
  s.cases = static_cast<int>(cases.size());
  std::vector<LabeledCase> labeled;
  std::vector<std::optional<int>> ranks;
  std::int64_t units = 0;
  int sat_cases = 0, confirmed = 0;
  long long queries = 0;
  for (const CaseRecord* c : cases) {
    const OutcomeRecord* o = primary_of(*c);
    Label label = o ? label_from_string(o->label) : Label::Unknown;
    labeled.push_back({c->case_id, c->ground_truth.l2, label, o && o->positive()});
    switch (label) {
      case Label::SatStrict: ++s.mix.sat_strict; break;
      case Label::SatRelaxed: ++s.mix.sat_relaxed; break;
      case Label::Unsat: ++s.mix.unsat; break;
      case Label::Unknown: ++s.mix.unknown; break;
    }
    s.diagnostics.not_applicable_rows += static_cast<int>(c->not_applicable.size());
    s.diagnostics.case_errors += static_cast<int>(c->errors.size());
    if (c->ground_truth.vulnerable_paths.empty()) {
      if (c->ground_truth.l2 == GroundTruthL2::Reachable)
        warnings.push_back("case " + c->case_id + " has no ground-truth paths; excluded from recall@k");
    } else {
      ranks.push_back(c->best_rank);
    }
    if (!o) continue;
    if (label == Label::SatStrict) {
      ++s.remediation.denominator;
      ++sat_cases;
      units += o->vtrace.units_to_first_sat;
    }
    if (o->positive()) {
      ++confirmed;
      queries += o->vtrace.solver_queries;
    }
    const FinalState st = final_state_from_string(o->final_state);
    if (st == FinalState::VerifiedRemediation && label == Label::SatStrict) ++s.remediation.verified_by_tier[o->tier];
    if (st == FinalState::UnresolvedOrAdvisory && o->remedy) ++s.remediation.advisories;
    if (st == FinalState::RemediationFailed) ++s.remediation.failed;
    if (st == FinalState::UnconfirmedCandidate) ++s.remediation.unconfirmed;
    if (o->certificate) {
      s.diagnostics.displaced += static_cast<int>(o->certificate->displaced.size());
      s.diagnostics.new_high_risk += static_cast<int>(o->certificate->new_high_risk.size());
    }
  }
  s.confusion = confusion(labeled, &warnings);
  int verified = 0;
  for (const auto& [t, n] : s.remediation.verified_by_tier) verified += n;
  s.remediation.success_rate =
      s.remediation.denominator == 0 ? 0.0 : static_cast<double>(verified) / s.remediation.denominator;
  s.recall = recall_at_k(ranks);
  s.ranked_cases = static_cast<int>(ranks.size());
  s.diagnostics.mean_units_to_first_sat = sat_cases == 0 ? 0.0 : static_cast<double>(units) / sat_cases;
  s.diagnostics.solver_queries_per_confirmed = confirmed == 0 ? 0.0 : static_cast<double>(queries) / confirmed;
  return s;
}

}  // namespace

SuiteResult summarize(std::vector<CaseRecord> cases, std::uint64_t seed, const std::string& config_json) {
  SuiteResult r;
  r.seed = seed;
  r.config = config_json;
  std::stable_sort(cases.begin(), cases.end(),
                   [](const CaseRecord& a, const CaseRecord& b) { return a.case_id < b.case_id; });
  r.cases = std::move(cases);
  std::vector<const CaseRecord*> all;
  std::map<std::string, std::vector<const CaseRecord*>> parts;
  for (const auto& c : r.cases) {
    all.push_back(&c);
    parts[c.partition].push_back(&c);
  }
  r.overall = summarize_part("all", all, r.warnings);
  std::vector<std::string> ignored;
  for (const auto& [name, cs] : parts) r.partitions.push_back(summarize_part(name, cs, ignored));
  return r;
}

// JSON for the report records.

void to_json(Json& j, const WitnessRecord& w) {
  j = Json{{"inputs", w.inputs},         {"state", w.state},           {"start_block", w.start_block},
           {"path", w.path},             {"constraint", w.constraint}, {"relaxed", w.relaxed}};
}

void from_json(const Json& j, WitnessRecord& w) {
  w.inputs = j.at("inputs").get<std::map<std::string, std::vector<Message>>>();
  w.state = j.at("state").get<Assignment>();
  w.start_block = j.at("start_block").get<std::string>();
  w.path = j.at("path").get<std::vector<std::string>>();
  w.constraint = j.at("constraint").get<std::string>();
  w.relaxed = j.at("relaxed").get<std::string>();
}

namespace {

template <typename T>
void opt_to(Json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? Json(*v) : Json(nullptr);
}

template <typename T>
void opt_from(const Json& j, const char* key, std::optional<T>& v) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    v.reset();
  else
    v = it->get<T>();
}

}  // namespace

void to_json(Json& j, const OutcomeRecord& o) {
  j = Json{{"candidate", o.candidate_id},
           {"centrality", o.centrality},
           {"score", o.score},
           {"label", o.label},
           {"refuting", o.refuting},
           {"verify_reason", o.verify_reason},
           {"verification", o.vtrace},
           {"neighbors", o.neighbors},
           {"final_state", o.final_state},
           {"tier", o.tier},
           {"reason", o.reason},
           {"trace", o.trace}};
  opt_to(j, "witness", o.witness);
  opt_to(j, "original_replay", o.original_replay);
  opt_to(j, "remedy", o.remedy);
  opt_to(j, "certificate", o.certificate);
  opt_to(j, "last_delta", o.last_delta);
}

void from_json(const Json& j, OutcomeRecord& o) {
  o.candidate_id = j.at("candidate").get<std::string>();
  o.centrality = j.at("centrality").get<double>();
  o.score = j.at("score").get<double>();
  o.label = j.at("label").get<std::string>();
  o.refuting = j.at("refuting").get<std::vector<std::string>>();
  o.verify_reason = j.at("verify_reason").get<std::string>();
  o.vtrace = j.at("verification").get<VerificationTrace>();
  o.neighbors = j.at("neighbors").get<std::vector<NeighborPath>>();
  o.final_state = j.at("final_state").get<std::string>();
  o.tier = j.at("tier").get<int>();
  o.reason = j.at("reason").get<std::string>();
  o.trace = j.at("trace").get<std::vector<TraceEntry>>();
  opt_from(j, "witness", o.witness);
  opt_from(j, "original_replay", o.original_replay);
  opt_from(j, "remedy", o.remedy);
  opt_from(j, "certificate", o.certificate);
  opt_from(j, "last_delta", o.last_delta);
}

void to_json(Json& j, const CaseRecord& c) {
  j = Json{{"case", c.case_id},           {"partition", c.partition},       {"errors", c.errors},
           {"not_applicable", c.not_applicable}, {"ground_truth", c.ground_truth}, {"outcomes", c.outcomes},
           {"primary", c.primary}};
  opt_to(j, "best_rank", c.best_rank);
}

void from_json(const Json& j, CaseRecord& c) {
  c.case_id = j.at("case").get<std::string>();
  c.partition = j.at("partition").get<std::string>();
  c.errors = j.at("errors").get<std::vector<std::string>>();
  c.not_applicable = j.at("not_applicable").get<std::vector<NaRow>>();
  c.ground_truth = j.at("ground_truth").get<GroundTruth>();
  c.outcomes = j.at("outcomes").get<std::vector<OutcomeRecord>>();
  c.primary = j.at("primary").get<int>();
  opt_from(j, "best_rank", c.best_rank);
}

void to_json(Json& j, const Confusion& c) {
  j = Json{{"tp", c.tp},
           {"fp", c.fp},
           {"tn", c.tn},
           {"fn", c.fn},
           {"unknown", c.unknown},
           {"excluded", c.excluded},
           {"precision", c.precision},
           {"recall", c.recall},
           {"fpr", c.fpr},
           {"fnr", c.fnr},
           {"unknown_rate", c.unknown_rate}};
}

void from_json(const Json& j, Confusion& c) {
  c.tp = j.at("tp").get<int>();
  c.fp = j.at("fp").get<int>();
  c.tn = j.at("tn").get<int>();
  c.fn = j.at("fn").get<int>();
  c.unknown = j.at("unknown").get<int>();
  c.excluded = j.at("excluded").get<int>();
  c.precision = j.at("precision").get<double>();
  c.recall = j.at("recall").get<double>();
  c.fpr = j.at("fpr").get<double>();
  c.fnr = j.at("fnr").get<double>();
  c.unknown_rate = j.at("unknown_rate").get<double>();
}

void to_json(Json& j, const LabelMix& m) {
  j = Json{{"sat_strict", m.sat_strict}, {"sat_relaxed", m.sat_relaxed}, {"unsat", m.unsat}, {"unknown", m.unknown}};
}

void from_json(const Json& j, LabelMix& m) {
  m.sat_strict = j.at("sat_strict").get<int>();
  m.sat_relaxed = j.at("sat_relaxed").get<int>();
  m.unsat = j.at("unsat").get<int>();
  m.unknown = j.at("unknown").get<int>();
}

void to_json(Json& j, const RemediationCounts& r) {
  Json tiers = Json::object();
  for (const auto& [t, n] : r.verified_by_tier) tiers[std::to_string(t)] = n;
  j = Json{{"denominator", r.denominator}, {"verified_by_tier", tiers}, {"advisories", r.advisories},
           {"failed", r.failed},           {"unconfirmed", r.unconfirmed}, {"success_rate", r.success_rate}};
}

void from_json(const Json& j, RemediationCounts& r) {
  r.denominator = j.at("denominator").get<int>();
  r.verified_by_tier.clear();
  for (const auto& [k, v] : j.at("verified_by_tier").items()) r.verified_by_tier[std::stoi(k)] = v.get<int>();
  r.advisories = j.at("advisories").get<int>();
  r.failed = j.at("failed").get<int>();
  r.unconfirmed = j.at("unconfirmed").get<int>();
  r.success_rate = j.at("success_rate").get<double>();
}

void to_json(Json& j, const Diagnostics& d) {
  j = Json{{"mean_units_to_first_sat", d.mean_units_to_first_sat},
           {"solver_queries_per_confirmed", d.solver_queries_per_confirmed},
           {"not_applicable_rows", d.not_applicable_rows},
           {"case_errors", d.case_errors},
           {"displaced", d.displaced},
           {"new_high_risk", d.new_high_risk}};
}

void from_json(const Json& j, Diagnostics& d) {
  d.mean_units_to_first_sat = j.at("mean_units_to_first_sat").get<double>();
  d.solver_queries_per_confirmed = j.at("solver_queries_per_confirmed").get<double>();
  d.not_applicable_rows = j.at("not_applicable_rows").get<int>();
  d.case_errors = j.at("case_errors").get<int>();
  d.displaced = j.at("displaced").get<int>();
  d.new_high_risk = j.at("new_high_risk").get<int>();
}

void to_json(Json& j, const PartitionSummary& p) {
  Json recall = Json::object();
  for (const auto& [k, v] : p.recall) recall[std::to_string(k)] = v;
  j = Json{{"name", p.name},
           {"cases", p.cases},
           {"confusion", p.confusion},
           {"label_mix", p.mix},
           {"remediation", p.remediation},
           {"recall_at_k", recall},
           {"ranked_cases", p.ranked_cases},
           {"diagnostics", p.diagnostics}};
}

void from_json(const Json& j, PartitionSummary& p) {
  p.name = j.at("name").get<std::string>();
  p.cases = j.at("cases").get<int>();
  p.confusion = j.at("confusion").get<Confusion>();
  p.mix = j.at("label_mix").get<LabelMix>();
  p.remediation = j.at("remediation").get<RemediationCounts>();
  p.recall.clear();
  for (const auto& [k, v] : j.at("recall_at_k").items()) p.recall[std::stoi(k)] = v.get<double>();
  p.ranked_cases = j.at("ranked_cases").get<int>();
  p.diagnostics = j.at("diagnostics").get<Diagnostics>();
}

std::string report_json(const SuiteResult& r) {
  Json j{{"seed", r.seed},
         {"config", r.config.empty() ? Json::object() : Json::parse(r.config)},
         {"cases", r.cases},
         {"overall", r.overall},
         {"partitions", r.partitions},
         {"warnings", r.warnings}};
  return j.dump(2) + "\n";
}

SuiteResult parse_report(const std::string& json_text) {
  Json j = Json::parse(json_text);
  SuiteResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  const Json& cfg = j.at("config");
  r.config = cfg.empty() ? std::string() : cfg.dump();
  r.cases = j.at("cases").get<std::vector<CaseRecord>>();
  r.overall = j.at("overall").get<PartitionSummary>();
  r.partitions = j.at("partitions").get<std::vector<PartitionSummary>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

namespace {

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

void summary_block(std::ostringstream& out, const PartitionSummary& p) {
  const Confusion& c = p.confusion;
  out << "== " << p.name << " (" << p.cases << " cases) ==\n";
  out << "  verification   TP " << c.tp << "  FP " << c.fp << "  TN " << c.tn << "  FN " << c.fn << "  unknown "
      << c.unknown << "  precision " << fmt(c.precision) << "  recall " << fmt(c.recall) << "  FPR " << fmt(c.fpr)
      << "  FNR " << fmt(c.fnr) << "\n";
  const LabelMix& m = p.mix;
  out << "  label mix      sat-strict " << m.sat_strict << " (" << fmt(m.rate(m.sat_strict)) << ")  sat-relaxed "
      << m.sat_relaxed << " (" << fmt(m.rate(m.sat_relaxed)) << ")  unsat " << m.unsat << " ("
      << fmt(m.rate(m.unsat)) << ")  unknown " << m.unknown << " (" << fmt(m.rate(m.unknown)) << ")\n";
  const RemediationCounts& r = p.remediation;
  out << "  remediation    over " << r.denominator << " sat-strict:";
  for (int t : {1, 2, 3}) {
    auto it = r.verified_by_tier.find(t);
    out << "  tier" << t << " " << (it == r.verified_by_tier.end() ? 0 : it->second);
  }
  out << "  success " << fmt(r.success_rate) << "  advisory " << r.advisories << "  failed " << r.failed
      << "  unconfirmed " << r.unconfirmed << "\n";
  const Diagnostics& d = p.diagnostics;
  out << "  diagnostics    units-to-first-sat " << fmt(d.mean_units_to_first_sat, 1) << "  queries/confirmed "
      << fmt(d.solver_queries_per_confirmed, 2) << "  recall@k (" << p.ranked_cases << " ranked)";
  for (const auto& [k, v] : p.recall) out << " @" << k << "=" << fmt(v, 2);
  out << "  n/a rows " << d.not_applicable_rows << "  errors " << d.case_errors << "  displaced " << d.displaced
      << "  new high-risk " << d.new_high_risk << "\n";
}

}  // namespace

std::string summary_text(const SuiteResult& r) {
  std::ostringstream out;
  out << "seed " << r.seed << ", " << r.cases.size() << " cases\n\n";
  for (const auto& p : r.partitions) {
    summary_block(out, p);
    out << "\n";
  }
  summary_block(out, r.overall);
  out << "\ncase          label         final state              tier  reason\n";
  for (const auto& c : r.cases) {
    const OutcomeRecord* o = c.primary < 0 ? nullptr : &c.outcomes[static_cast<std::size_t>(c.primary)];
    char line[256];
    std::snprintf(line, sizeof line, "%-13s %-13s %-24s %-5s ", c.case_id.c_str(), o ? o->label.c_str() : "-",
                  o ? o->final_state.c_str() : (c.errors.empty() ? "-" : "error"),
                  o && o->tier ? std::to_string(o->tier).c_str() : "-");
    out << line << (o ? o->reason : (c.errors.empty() ? std::string() : c.errors.front())) << "\n";
  }
  if (!r.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : r.warnings) out << "  " << w << "\n";
  }
  return out.str();
}

std::string rules_document(const std::string& case_id, const std::string& candidate, const Remedy& r) {
  std::ostringstream out;
  out << "# tier-1 gate policy\n";
  out << "case " << case_id << "\n";
  out << "candidate " << candidate << "\n";
  out << "channel " << r.channel << "\n";
  out << "advisory " << (r.advisory ? "yes" : "no") << "\n";
  for (const auto& cube : r.gate) out << "drop " << to_sexpr(Dnf{cube}) << "\n";
  return out.str();
}

std::string certificate_document(const std::string& case_id, const OutcomeRecord& o) {
  Json j{{"case", case_id}, {"candidate", o.candidate_id}, {"tier", o.tier}};
  j["remedy"] = o.remedy ? Json(*o.remedy) : Json(nullptr);
  j["certificate"] = o.certificate ? Json(*o.certificate) : Json(nullptr);
  return j.dump(2) + "\n";
}

namespace {

std::string file_stem(const std::string& case_id, const std::string& candidate) {
  std::string s = case_id + "__" + candidate;
  for (char& ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.')) ch = '_';
  return s;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

void write_report(const std::filesystem::path& dir, const SuiteResult& r) {
  namespace fs = std::filesystem;
  fs::remove_all(dir / "rules");
  fs::remove_all(dir / "certificates");
  fs::create_directories(dir / "rules");
  fs::create_directories(dir / "certificates");
  write_file(dir / "report.json", report_json(r));
  write_file(dir / "summary.txt", summary_text(r));
  for (const auto& c : r.cases)
    for (const auto& o : c.outcomes) {
      if (o.remedy && o.remedy->tier == 1)
        write_file(dir / "rules" / (file_stem(c.case_id, o.candidate_id) + ".rules"),
                   rules_document(c.case_id, o.candidate_id, *o.remedy));
      if (o.certificate)
        write_file(dir / "certificates" / (file_stem(c.case_id, o.candidate_id) + ".json"),
                   certificate_document(c.case_id, o));
    }
}

CaseRecord run_manifest(const CaseManifest& m, const std::string& user_json) {
  Config cfg;
  try {
    cfg = case_config(m, user_json);
  } catch (const std::exception& e) {
    CaseRecord c;
    c.case_id = m.id;
    c.partition = m.partition;
    c.ground_truth = m.ground_truth;
    c.errors.push_back(std::string("config: ") + e.what());
    return c;
  }
  return record_of(m, run_case(m, cfg));
}

SuiteResult run_suite(const std::filesystem::path& dir, const std::string& user_json, int workers) {
  auto files = suite_files(dir);
  std::vector<CaseRecord> records(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        records[i] = run_manifest(load_manifest(files[i]), user_json);
      } catch (const std::exception& e) {
        CaseRecord c;
        c.case_id = files[i].stem().string();
        c.errors.push_back(e.what());
        records[i] = std::move(c);
      }
    }
  };
  int n = std::max(1, std::min<int>(workers, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int k = 0; k < n; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  Config effective;
  if (!user_json.empty()) apply_config_json(effective, user_json);
  return summarize(std::move(records), effective.seed, user_json);
}

}  // namespace remedium
