#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "remedium/json_io.hpp"
#include "remedium/report.hpp"

using namespace remedium;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Config file first, command-line flags on top.
std::string user_config(const std::string& config_file, const std::optional<std::uint64_t>& seed, bool no_feedback) {
  Json j = Json::object();
  if (!config_file.empty()) {
    j = Json::parse(read_file(config_file));
    if (!j.is_object()) throw std::runtime_error(config_file + ": config must be a JSON object");
  }
  if (seed) j["seed"] = *seed;
  if (no_feedback) j["feedback"] = false;
  return j.empty() ? std::string() : j.dump();
}

const Candidate* find_candidate(const std::vector<RankedCandidate>& ranked, const std::string& id) {
  for (const auto& rc : ranked)
    if (rc.candidate.id == id) return &rc.candidate;
  return nullptr;
}

void print_outcome(const OutcomeRecord& o) {
  std::cout << o.candidate_id << "\n";
  std::cout << "  label        " << o.label << (o.refuting.empty() ? "" : " (refuted by " + o.refuting.front() + ")")
            << "\n";
  std::cout << "  final state  " << o.final_state << (o.tier ? " tier " + std::to_string(o.tier) : "") << "\n";
  std::cout << "  reason       " << o.reason << "\n";
  if (o.remedy) std::cout << "  remedy       " << o.remedy->describe() << "\n";
  for (const auto& t : o.trace)
    std::cout << "  trace        tier " << t.tier << " #" << t.iteration << " " << t.outcome
              << (t.delta ? " [" + std::string(to_string(t.delta->kind)) + ": " + t.delta->check + "]" : "") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"remedium: verify and remediate alert candidates on toy artifacts"};
  app.require_subcommand(1);

  std::string manifest, suite, report_dir, config_file, candidate;
  std::optional<std::uint64_t> seed;
  int workers = 4;
  bool no_feedback = false, json_out = false;

  auto* run = app.add_subcommand("run", "run the full pipeline on one manifest");
  run->add_option("--manifest", manifest, "case manifest")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "solver seed");
  run->add_option("--config", config_file, "JSON config overrides")->check(CLI::ExistingFile);
  run->add_flag("--no-feedback", no_feedback, "do not pass rejection constraints back to synthesis");
  run->add_flag("--json", json_out, "print the case record as JSON");

  auto* bench = app.add_subcommand("bench", "run a suite and write reports");
  bench->add_option("--suite", suite, "suite directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--report", report_dir, "output directory")->required();
  bench->add_option("--seed", seed, "solver seed");
  bench->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
  bench->add_option("--config", config_file, "JSON config overrides")->check(CLI::ExistingFile);
  bench->add_flag("--no-feedback", no_feedback, "do not pass rejection constraints back to synthesis");

  auto* verify_cmd = app.add_subcommand("verify", "reachability verification of one candidate");
  verify_cmd->add_option("--manifest", manifest, "case manifest")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--candidate", candidate, "candidate id")->required();
  verify_cmd->add_option("--seed", seed, "solver seed");
  verify_cmd->add_option("--config", config_file, "JSON config overrides")->check(CLI::ExistingFile);

  auto* remediate = app.add_subcommand("remediate", "verification plus remediation loop for one candidate");
  remediate->add_option("--manifest", manifest, "case manifest")->required()->check(CLI::ExistingFile);
  remediate->add_option("--candidate", candidate, "candidate id")->required();
  remediate->add_option("--seed", seed, "solver seed");
  remediate->add_option("--config", config_file, "JSON config overrides")->check(CLI::ExistingFile);
  remediate->add_flag("--no-feedback", no_feedback, "do not pass rejection constraints back to synthesis");

  auto* lint = app.add_subcommand("validate-suite", "check every manifest in a suite");
  lint->add_option("--suite", suite, "suite directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (lint->parsed()) {
      int bad = 0;
      auto files = suite_files(suite);
      for (const auto& f : files) {
        try {
          CaseManifest m = load_manifest(f);
          auto vs = validate_case(m.artifact, m.ssckg);
          if (!m.config_overrides.empty()) case_config(m);
          if (vs.empty()) {
            std::cout << "ok    " << f.filename().string() << "\n";
            continue;
          }
          ++bad;
          for (const auto& v : vs) std::cout << "error " << f.filename().string() << ": " << v.code << " at " << v.where << ": " << v.message << "\n";
        } catch (const std::exception& e) {
          ++bad;
          std::cout << "error " << f.filename().string() << ": " << e.what() << "\n";
        }
      }
      std::cout << files.size() - static_cast<std::size_t>(bad) << " of " << files.size() << " manifests valid\n";
      return bad ? 1 : 0;
    }

    const std::string user = user_config(config_file, seed, no_feedback);

    if (bench->parsed()) {
      SuiteResult r = run_suite(suite, user, workers);
      write_report(report_dir, r);
      std::cout << summary_text(r);
      return r.overall.diagnostics.case_errors ? 1 : 0;
    }

    CaseManifest m = load_manifest(manifest);
    if (run->parsed()) {
      CaseRecord rec = run_manifest(m, user);
      if (json_out) {
        std::cout << Json(rec).dump(2) << "\n";
      } else {
        std::cout << "case " << rec.case_id << "\n";
        for (const auto& e : rec.errors) std::cout << "error: " << e << "\n";
        for (const auto& na : rec.not_applicable) std::cout << "n/a alert " << na.alert_index << ": " << na.reason << "\n";
        for (const auto& o : rec.outcomes) print_outcome(o);
      }
      return rec.errors.empty() ? 0 : 1;
    }

    Config cfg = case_config(m, user);
    auto errs = validate_case(m.artifact, m.ssckg);
    if (!errs.empty()) {
      for (const auto& v : errs) std::cerr << "error: " << v.code << " at " << v.where << ": " << v.message << "\n";
      return 1;
    }
    auto norm = normalize(m.alerts, m.ssckg, m.artifact, m.context);
    auto ranked = rank(norm.candidates, m.ssckg, cfg);
    const Candidate* c = find_candidate(ranked, candidate);
    if (!c) {
      std::cerr << "no candidate '" << candidate << "'; known:";
      for (const auto& rc : ranked) std::cerr << " " << rc.candidate.id;
      std::cerr << "\n";
      return 2;
    }
    CaseOutcome o = run_candidate(m, *c, cfg, remediate->parsed());
    OutcomeRecord rec = record_of(o);
    if (verify_cmd->parsed()) {
      Json j{{"candidate", rec.candidate_id}, {"label", rec.label},        {"reason", rec.verify_reason},
             {"refuting", rec.refuting},      {"verification", rec.vtrace}};
      j["witness"] = rec.witness ? Json(*rec.witness) : Json(nullptr);
      std::cout << j.dump(2) << "\n";
    } else {
      print_outcome(rec);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
