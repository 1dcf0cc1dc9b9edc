#pragma once

#include "taxmatch/selection.hpp"
#include "taxmatch/taxonomy.hpp"

namespace taxmatch {

enum class ConceptMeasure { wu_palmer, lin };

enum class Weighting { none, relative_level, absolute_level };

struct ConceptSimilarityConfig {
  ConceptMeasure measure = ConceptMeasure::wu_palmer;
  Weighting weighting = Weighting::none;
};

// Structural similarity 2*N0 / (2*N0 + N1 + N2). A pair whose only common
// ancestor is the root scores 0; a node against itself scores 1, including
// the root (the formula's 0/0 case).
double wu_palmer(const LcaResult& lca);

// Information-content similarity 2*log p(C0) / (log p(a) + log p(b)).
// Identical concepts score 1 regardless of probability. Two distinct
// concepts with no information (p = 1, zero-valued logs) score 0, as does
// any concept that was never encountered (p = 0).
double lin(const ProbabilityTable& table, std::string_view a,
           std::string_view b, const LcaResult& lca);

// Lowers similarity when the reviewer is less competent in the keyword
// than the level it applies to the paper; a reviewer at or above the
// paper's level keeps the similarity unchanged.
double weighted_relative(double sim, double paper_weight,
                         double reviewer_weight);

// Scales similarity by the reviewer's absolute level of competence.
double weighted_absolute(double sim, double reviewer_weight);

// A concept-pair similarity bound to one taxonomy and one configuration.
// between() ignores weights; weighted() applies the configured modifier
// with the ownership roles fixed: the first argument is always the paper's
// keyword, the second the reviewer's.
class ConceptSimilarity {
 public:
  ConceptSimilarity(const Taxonomy& taxonomy, ConceptSimilarityConfig config,
                    const ProbabilityTable* table = nullptr);

  double between(std::string_view a, std::string_view b) const;
  double weighted(const SelectedKeyword& paper_kw,
                  const SelectedKeyword& reviewer_kw) const;

  const ConceptSimilarityConfig& config() const { return config_; }

 private:
  const Taxonomy* taxonomy_;
  const ProbabilityTable* table_;
  ConceptSimilarityConfig config_;
};

}  // namespace taxmatch
