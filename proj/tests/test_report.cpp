#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "remedium/report.hpp"

using namespace remedium;
namespace fs = std::filesystem;

namespace {

const SuiteResult& suite_result() {
  static const SuiteResult r = run_suite(fixture::suite_dir(), "", 4);
  return r;
}

const CaseRecord& by_id(const SuiteResult& r, const std::string& id) {
  for (const auto& c : r.cases)
    if (c.case_id == id) return c;
  throw std::runtime_error("no case " + id);
}

}  // namespace

TEST_CASE("suite run is sorted and error free") {
  const auto& r = suite_result();
  REQUIRE(r.cases.size() == 15);
  for (std::size_t i = 1; i < r.cases.size(); ++i) CHECK(r.cases[i - 1].case_id < r.cases[i].case_id);
  CHECK(r.overall.diagnostics.case_errors == 0);
  CHECK(r.partitions.size() == 3);
  int n = 0;
  for (const auto& p : r.partitions) n += p.cases;
  CHECK(n == r.overall.cases);
  CHECK(r.overall.confusion.precision == 1.0);
  CHECK(r.overall.confusion.fpr == 0.0);
  for (const auto& c : r.cases) CHECK(c.primary >= 0);
}

TEST_CASE("report json round trips") {
  const auto& r = suite_result();
  auto text = report_json(r);
  auto back = parse_report(text);
  CHECK(report_json(back) == text);
  CHECK(back.cases.size() == r.cases.size());
  const auto& b4 = by_id(back, "B4");
  const auto& o = b4.outcomes.at(static_cast<std::size_t>(b4.primary));
  REQUIRE(o.witness);
  CHECK(o.witness == by_id(r, "B4").outcomes.at(static_cast<std::size_t>(b4.primary)).witness);
}

TEST_CASE("report json is independent of the worker count") {
  CHECK(report_json(run_suite(fixture::suite_dir(), "", 1)) == report_json(suite_result()));
}

TEST_CASE("user config lands in the report") {
  auto r = run_suite(fixture::suite_dir(), R"({"seed": 9})", 2);
  CHECK(r.seed == 9);
  CHECK(report_json(r).find("\"seed\": 9") != std::string::npos);
}

TEST_CASE("summary has a block per partition and one row per case") {
  const auto& r = suite_result();
  auto s = summary_text(r);
  for (const char* p : {"== binary", "== ics", "== protocol", "== all"}) CHECK(s.find(p) != std::string::npos);
  for (const auto& c : r.cases) CHECK(s.find("\n" + c.case_id + " ") != std::string::npos);
  CHECK(s.find("precision 1.000") != std::string::npos);
}

TEST_CASE("positive needs strict or a replayed relaxed witness") {
  OutcomeRecord o;
  o.label = "sat-strict";
  CHECK(o.positive());
  o.label = "sat-relaxed";
  CHECK_FALSE(o.positive());
  o.original_replay = ReplayOutcome{};
  o.original_replay->sink_reached = true;
  CHECK(o.positive());
  o.label = "unsat";
  CHECK_FALSE(o.positive());
}

TEST_CASE("write_report writes exports and clears stale ones") {
  fs::path dir = fs::temp_directory_path() / "remedium_test_report";
  fs::remove_all(dir);
  fs::create_directories(dir / "rules");
  std::ofstream(dir / "rules" / "stale.rules") << "old\n";
  const auto& r = suite_result();
  write_report(dir, r);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "summary.txt"));
  CHECK_FALSE(fs::exists(dir / "rules" / "stale.rules"));
  CHECK(fixture::slurp(dir / "report.json") == report_json(r));

  int tier1 = 0, certs = 0;
  for (const auto& c : r.cases)
    for (const auto& o : c.outcomes) {
      if (o.remedy && o.remedy->tier == 1) ++tier1;
      if (o.certificate) ++certs;
    }
  auto count = [](const fs::path& p) { return std::distance(fs::directory_iterator(p), fs::directory_iterator{}); };
  CHECK(count(dir / "rules") == tier1);
  CHECK(count(dir / "certificates") == certs);
  CHECK(certs > 0);
  for (const auto& e : fs::directory_iterator(dir / "certificates")) {
    auto j = Json::parse(fixture::slurp(e.path()));
    CHECK(j.at("certificate").at("post_label") == "unsat");
  }
  for (const auto& e : fs::directory_iterator(dir / "rules")) CHECK(fixture::slurp(e.path()).find("drop ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rules document lists one drop line per cube") {
  Remedy rm;
  rm.tier = 1;
  rm.channel = "frame";
  rm.gate = {{make_atom("fc", Relation::Eq, 3)}, {make_atom("len", Relation::Gt, 64)}};
  auto doc = rules_document("X", "c1", rm);
  CHECK(doc.find("channel frame") != std::string::npos);
  CHECK(doc.find("advisory no") != std::string::npos);
  std::size_t drops = 0;
  for (auto p = doc.find("drop "); p != std::string::npos; p = doc.find("drop ", p + 1)) ++drops;
  CHECK(drops == 2);
}

TEST_CASE("manifest load failures become case errors") {
  fs::path dir = fs::temp_directory_path() / "remedium_test_badsuite";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(fixture::suite_dir() / "B1.json", dir / "B1.json");
  std::ofstream(dir / "Z9.json") << "{not json";
  auto r = run_suite(dir, "", 2);
  REQUIRE(r.cases.size() == 2);
  CHECK(r.cases[0].errors.empty());
  CHECK(r.cases[1].case_id == "Z9");
  CHECK_FALSE(r.cases[1].errors.empty());
  CHECK(r.overall.diagnostics.case_errors == 1);
  CHECK(summary_text(r).find("error") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("empty suite gives a valid report with zero counts") {
  auto r = summarize({}, 42, "");
  CHECK(r.overall.cases == 0);
  CHECK(r.overall.confusion.cases() == 0);
  CHECK(r.partitions.empty());
  auto back = parse_report(report_json(r));
  CHECK(back.seed == 42);
  CHECK(back.cases.empty());
  CHECK(summary_text(r).find("== all (0 cases)") != std::string::npos);
}
