#include "taxmatch/concept_sim.hpp"

#include <cmath>

#include "taxmatch/errors.hpp"

namespace taxmatch {

double wu_palmer(const LcaResult& lca) {
  double n0 = lca.root_to_ancestor;
  double n1 = lca.ancestor_to_a;
  double n2 = lca.ancestor_to_b;
  if (n1 == 0.0 && n2 == 0.0) return 1.0;  // same node, root included
  return 2.0 * n0 / (2.0 * n0 + n1 + n2);
}

double lin(const ProbabilityTable& table, std::string_view a,
           std::string_view b, const LcaResult& lca) {
  if (a == b) return 1.0;
  double pa = table.probability(a);
  double pb = table.probability(b);
  if (pa <= 0.0 || pb <= 0.0) return 0.0;
  double denominator = std::log(pa) + std::log(pb);
  if (denominator == 0.0) return 0.0;  // two distinct zero-information nodes
  return 2.0 * std::log(table.probability(lca.ancestor)) / denominator;
}

double weighted_relative(double sim, double paper_weight,
                         double reviewer_weight) {
  if (reviewer_weight >= paper_weight) return sim;
  return sim * (1.0 - (paper_weight - reviewer_weight));
}

double weighted_absolute(double sim, double reviewer_weight) {
  return sim * reviewer_weight;
}

ConceptSimilarity::ConceptSimilarity(const Taxonomy& taxonomy,
                                     ConceptSimilarityConfig config,
                                     const ProbabilityTable* table)
    : taxonomy_(&taxonomy), table_(table), config_(config) {
  if (config_.measure == ConceptMeasure::lin && table_ == nullptr) {
    throw ValidationError(
        {"missing-probabilities", "",
         "the information-content measure needs a probability table"});
  }
}

double ConceptSimilarity::between(std::string_view a, std::string_view b) const {
  LcaResult lca = taxonomy_->lca(a, b);
  if (config_.measure == ConceptMeasure::lin) return lin(*table_, a, b, lca);
  return wu_palmer(lca);
}

double ConceptSimilarity::weighted(const SelectedKeyword& paper_kw,
                                   const SelectedKeyword& reviewer_kw) const {
  double sim = between(paper_kw.concept_id, reviewer_kw.concept_id);
  switch (config_.weighting) {
    case Weighting::none:
      return sim;
    case Weighting::relative_level:
      return weighted_relative(sim, paper_kw.weight, reviewer_kw.weight);
    case Weighting::absolute_level:
      return weighted_absolute(sim, reviewer_kw.weight);
  }
  return sim;
}

}  // namespace taxmatch
