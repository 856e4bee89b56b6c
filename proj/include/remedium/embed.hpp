#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace remedium {

// Maps a label sequence to a vector; scoring takes the cosine of two of them.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(const std::vector<std::string>& labels) const = 0;
};

// One dimension per vocabulary token, weighted by occurrence count. Tokens
// outside the vocabulary are ignored.
class TermFrequencyEmbedder : public Embedder {
 public:
  TermFrequencyEmbedder();
  explicit TermFrequencyEmbedder(std::vector<std::string> vocabulary);
  std::vector<double> embed(const std::vector<std::string>& labels) const override;

 private:
  std::vector<std::string> vocab_;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Cosine of the embeddings, in [-1,1]. Returns 0 when either side is empty or
// embeds to the zero vector.
double score_path(const std::vector<std::string>& path_labels, const std::vector<std::string>& ssckg_labels,
                  const Embedder& embedder);

inline double map_score(double raw) { return (raw + 1.0) / 2.0; }

// Softmax split of t_total at temperature tau_p, floored, remainder to the
// highest-scored path (first on ties).
std::vector<std::int64_t> allocate_budget(const std::vector<double>& mapped_scores, std::int64_t t_total, double tau_p);

}  // namespace remedium
