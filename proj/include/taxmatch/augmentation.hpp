#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxmatch/matching.hpp"
#include "taxmatch/selection.hpp"
#include "taxmatch/taxonomy.hpp"

namespace taxmatch {

struct AugmentationConfig {
  // Nodes shallower than this may not be selected as keywords.
  int min_selectable_depth = 2;
  // Depth band whose internal nodes are eligible for child expansion.
  // band_max = -1 resolves to taxonomy height - 1.
  int band_min = 1;
  int band_max = -1;
  // Bid options treated as an expert statement for keyword propagation.
  std::vector<BidOption> expert_bid_options = {BidOption::expert_eager,
                                               BidOption::expert};
  // Competence weight from which a general node is expanded into children.
  double high_competence_threshold = 0.75;

  bool is_expert(BidOption option) const;
  // Throws ValidationError when depths are out of range for the taxonomy.
  void validate(const Taxonomy& taxonomy) const;
  int resolved_band_max(const Taxonomy& taxonomy) const;
};

struct DepthViolation {
  std::string owner;
  std::string concept_id;
  int depth = 0;
  int required = 0;
};

// Flags selected nodes that sit too close to the root to say anything
// useful. Violations are data for the report, not errors.
std::vector<DepthViolation> validate_selection_depth(
    const KeywordSelection& selection, const Taxonomy& taxonomy,
    const AugmentationConfig& config);

enum class AugmentationRule { bid_propagation, generalization_expansion };

std::string_view to_string(AugmentationRule rule);

struct AddedKeyword {
  std::string reviewer;
  std::string concept_id;
  double weight = 0.0;
  AugmentationRule rule = AugmentationRule::bid_propagation;
  std::vector<std::string> justification;  // ids that triggered the addition
};

struct AugmentedSelection {
  KeywordSelection selection;
  std::vector<AddedKeyword> added;
};

// Copies keywords of expert-bid papers into the reviewer's selection when
// corroborated: the keyword is also chosen by another reviewer who
// expert-bid the same paper, or it describes another paper this reviewer
// expert-bid. Added keywords take the mean of the reviewer's existing
// weights. Never removes anything; a second pass adds nothing.
AugmentedSelection propagate_from_bids(
    const KeywordSelection& reviewer,
    std::span<const KeywordSelection> papers, std::span<const Bid> bids,
    std::span<const KeywordSelection> all_reviewers,
    const AugmentationConfig& config);

// Expands a selected general node into its direct children when the
// reviewer is highly competent in it, its depth falls inside the band, no
// child is already selected, and its parent is not itself selected (that
// guard keeps a second pass from cascading one level deeper). Children
// inherit the parent's weight.
AugmentedSelection expand_generalized(const KeywordSelection& reviewer,
                                      const Taxonomy& taxonomy,
                                      const AugmentationConfig& config);

}  // namespace taxmatch
