#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remedium/manifest.hpp"
#include "remedium/osva.hpp"

namespace remedium {

// One case as the confusion matrix sees it.
struct LabeledCase {
  std::string id;
  std::optional<GroundTruthL2> truth;
  Label label = Label::Unknown;
  bool confirmed = false;  // SatRelaxed counts as positive only when confirmed
};

struct Confusion {
  int tp = 0, fp = 0, tn = 0, fn = 0;
  int unknown = 0;   // cases outside the four counts
  int excluded = 0;  // cases without ground truth
  double precision = 0.0, recall = 0.0, fpr = 0.0, fnr = 0.0;
  double unknown_rate = 0.0;

  int cases() const { return tp + fp + tn + fn + unknown; }
};

// Ratios with an empty denominator are reported as 0.
Confusion confusion(const std::vector<LabeledCase>& cases, std::vector<std::string>* warnings = nullptr);

inline const std::vector<int> kRecallKs = {1, 3, 5, 10, 20, 50};

// best_ranks: 1-based rank of the first ground-truth path in each case's
// ranked path list, nullopt when none was ranked.
std::map<int, double> recall_at_k(const std::vector<std::optional<int>>& best_ranks,
                                  const std::vector<int>& ks = kRecallKs);

// Throws std::invalid_argument on an empty sample.
double cliffs_delta(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace remedium
