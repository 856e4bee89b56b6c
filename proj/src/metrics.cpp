#include "remedium/metrics.hpp"

#include <stdexcept>

namespace remedium {

namespace {

double rate(int num, int den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

}  // namespace

Confusion confusion(const std::vector<LabeledCase>& cases, std::vector<std::string>* warnings) {
  Confusion c;
  for (const auto& k : cases) {
    if (!k.truth) {
      ++c.excluded;
      if (warnings) warnings->push_back("case " + k.id + " has no L2 ground truth; excluded");
      continue;
    }
    bool positive = k.label == Label::SatStrict || (k.label == Label::SatRelaxed && k.confirmed);
    bool negative = k.label == Label::Unsat;
    if (*k.truth == GroundTruthL2::Reachable && positive)
      ++c.tp;
    else if (*k.truth == GroundTruthL2::Infeasible && positive)
      ++c.fp;
    else if (*k.truth == GroundTruthL2::Infeasible && negative)
      ++c.tn;
    else if (*k.truth == GroundTruthL2::Reachable && negative)
      ++c.fn;
    else
      ++c.unknown;
  }
  c.precision = rate(c.tp, c.tp + c.fp);
  c.recall = rate(c.tp, c.tp + c.fn);
  c.fpr = rate(c.fp, c.fp + c.tn);
  c.fnr = rate(c.fn, c.fn + c.tp);
  c.unknown_rate = rate(c.unknown, c.cases());
  return c;
}

std::map<int, double> recall_at_k(const std::vector<std::optional<int>>& best_ranks, const std::vector<int>& ks) {
  std::map<int, double> out;
  for (int k : ks) {
    int hit = 0;
    for (const auto& r : best_ranks)
      if (r && *r <= k) ++hit;
    out[k] = rate(hit, static_cast<int>(best_ranks.size()));
  }
  return out;
}

double cliffs_delta(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("cliffs_delta needs two nonempty samples");
  long long more = 0, less = 0;
  for (double x : xs)
    for (double y : ys) {
      if (x > y) ++more;
      if (x < y) ++less;
    }
  return static_cast<double>(more - less) / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

}  // namespace remedium
