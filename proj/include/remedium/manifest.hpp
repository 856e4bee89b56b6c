#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "remedium/artifact.hpp"
#include "remedium/caca.hpp"
#include "remedium/interpreter.hpp"

namespace remedium {

enum class GroundTruthL2 { Reachable, Infeasible, Unknown };

std::string_view to_string(GroundTruthL2 g);
GroundTruthL2 ground_truth_from_string(std::string_view s);

struct GroundTruth {
  std::optional<GroundTruthL2> l2;
  bool l3_replay = false;     // a replay harness exists for the case
  int l4_remedy = 0;          // expected tier of an accepted remedy, 0 if none
  std::string candidate;      // candidate the labels refer to
  std::string refuting_family;
  std::vector<std::vector<std::string>> vulnerable_paths;
};

struct CaseManifest {
  std::string id;
  std::string partition;
  ToyArtifact artifact;
  Ssckg ssckg;
  std::vector<RawAlert> alerts;
  ContextHints context;
  std::vector<BenignTrace> benign_traces;
  GroundTruth ground_truth;
  std::string config_overrides;  // JSON object text, may be empty
};

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CaseManifest parse_manifest(const std::string& json_text);
CaseManifest load_manifest(const std::filesystem::path& file);
std::string dump_manifest(const CaseManifest& m);

// Suite manifests (*.json) in lexicographic file order.
std::vector<std::filesystem::path> suite_files(const std::filesystem::path& dir);

// Overrides Config fields named in a JSON object; unknown keys throw.
void apply_config_json(Config& cfg, const std::string& json_text);
std::string dump_config(const Config& cfg);

}  // namespace remedium
