#include "remedium/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "remedium/artifact.hpp"

namespace remedium {

TermFrequencyEmbedder::TermFrequencyEmbedder() : vocab_(action_labels()) {}
TermFrequencyEmbedder::TermFrequencyEmbedder(std::vector<std::string> vocabulary) : vocab_(std::move(vocabulary)) {}

std::vector<double> TermFrequencyEmbedder::embed(const std::vector<std::string>& labels) const {
  std::vector<double> out(vocab_.size(), 0.0);
  for (const auto& l : labels) {
    auto it = std::find(vocab_.begin(), vocab_.end(), l);
    if (it != vocab_.end()) out[static_cast<std::size_t>(it - vocab_.begin())] += 1.0;
  }
  return out;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("embedding sizes differ");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double score_path(const std::vector<std::string>& path_labels, const std::vector<std::string>& ssckg_labels,
                  const Embedder& embedder) {
  if (path_labels.empty() || ssckg_labels.empty()) return 0.0;
  return cosine(embedder.embed(path_labels), embedder.embed(ssckg_labels));
}

std::vector<std::int64_t> allocate_budget(const std::vector<double>& mapped_scores, std::int64_t t_total, double tau_p) {
  if (mapped_scores.empty()) return {};
  double top = *std::max_element(mapped_scores.begin(), mapped_scores.end());
  std::vector<double> w;
  double sum = 0;
  for (double s : mapped_scores) {
    w.push_back(std::exp((s - top) / tau_p));
    sum += w.back();
  }
  std::vector<std::int64_t> out;
  std::int64_t given = 0;
  for (double x : w) {
    auto units = static_cast<std::int64_t>(std::floor(static_cast<double>(t_total) * x / sum));
    out.push_back(units);
    given += units;
  }
  std::size_t best = static_cast<std::size_t>(std::max_element(mapped_scores.begin(), mapped_scores.end()) -
                                              mapped_scores.begin());
  out[best] += t_total - given;
  return out;
}

}  // namespace remedium
