#include "taxmatch/augmentation.hpp"

#include <algorithm>
#include <numeric>

#include "taxmatch/errors.hpp"

namespace taxmatch {

bool AugmentationConfig::is_expert(BidOption option) const {
  return std::find(expert_bid_options.begin(), expert_bid_options.end(),
                   option) != expert_bid_options.end();
}

void AugmentationConfig::validate(const Taxonomy& taxonomy) const {
  if (min_selectable_depth < 1) {
    throw ValidationError({"bad-depth", std::to_string(min_selectable_depth),
                           "minimum selectable depth must be >= 1"});
  }
  int band_hi = resolved_band_max(taxonomy);
  if (band_min < 0 || band_hi > taxonomy.height() || band_min > band_hi) {
    throw ValidationError(
        {"bad-band",
         std::to_string(band_min) + ".." + std::to_string(band_hi),
         "generalization band must satisfy 0 <= min <= max <= height"});
  }
  if (!(high_competence_threshold >= 0.0 &&
        high_competence_threshold <= 1.0)) {
    throw ValidationError({"bad-threshold",
                           std::to_string(high_competence_threshold),
                           "competence threshold must lie in [0,1]"});
  }
}

int AugmentationConfig::resolved_band_max(const Taxonomy& taxonomy) const {
  return band_max == -1 ? taxonomy.height() - 1 : band_max;
}

std::string_view to_string(AugmentationRule rule) {
  switch (rule) {
    case AugmentationRule::bid_propagation:
      return "bid_propagation";
    case AugmentationRule::generalization_expansion:
      return "generalization_expansion";
  }
  return "bid_propagation";
}

std::vector<DepthViolation> validate_selection_depth(
    const KeywordSelection& selection, const Taxonomy& taxonomy,
    const AugmentationConfig& config) {
  config.validate(taxonomy);
  std::vector<DepthViolation> violations;
  for (const auto& item : selection.items) {
    int depth = taxonomy.depth(item.concept_id);
    if (depth < config.min_selectable_depth) {
      violations.push_back({selection.owner, item.concept_id, depth,
                            config.min_selectable_depth});
    }
  }
  return violations;
}

namespace {

const KeywordSelection& find_selection(
    std::span<const KeywordSelection> selections, std::string_view owner,
    const char* kind) {
  for (const auto& selection : selections) {
    if (selection.owner == owner) return selection;
  }
  throw ValidationError({std::string("unknown-") + kind, std::string(owner),
                         std::string(kind) + " '" + std::string(owner) +
                             "' is not part of the dataset"});
}

double mean_weight(const KeywordSelection& selection) {
  double sum = std::accumulate(
      selection.items.begin(), selection.items.end(), 0.0,
      [](double acc, const SelectedKeyword& kw) { return acc + kw.weight; });
  return sum / static_cast<double>(selection.size());
}

}  // namespace

AugmentedSelection propagate_from_bids(
    const KeywordSelection& reviewer,
    std::span<const KeywordSelection> papers, std::span<const Bid> bids,
    std::span<const KeywordSelection> all_reviewers,
    const AugmentationConfig& config) {
  if (reviewer.empty()) {
    throw ValidationError({"empty-selection", reviewer.owner,
                           "'" + reviewer.owner + "' has no keywords"});
  }
  std::vector<const KeywordSelection*> expert_papers;
  for (const auto& bid : bids) {
    if (bid.reviewer != reviewer.owner || !config.is_expert(bid.option)) {
      continue;
    }
    expert_papers.push_back(&find_selection(papers, bid.paper, "paper"));
  }

  double added_weight = mean_weight(reviewer);
  AugmentedSelection result{reviewer, {}};
  for (const KeywordSelection* paper : expert_papers) {
    for (const auto& kw : paper->items) {
      if (result.selection.contains(kw.concept_id)) continue;

      // (a) another reviewer who expert-bid this paper selected it too
      std::string corroborator;
      for (const auto& bid : bids) {
        if (bid.paper != paper->owner || bid.reviewer == reviewer.owner ||
            !config.is_expert(bid.option)) {
          continue;
        }
        const KeywordSelection& other =
            find_selection(all_reviewers, bid.reviewer, "reviewer");
        if (other.contains(kw.concept_id)) {
          corroborator = other.owner;
          break;
        }
      }
      // (b) it also describes another paper this reviewer expert-bid
      std::string other_paper;
      if (corroborator.empty()) {
        for (const KeywordSelection* candidate : expert_papers) {
          if (candidate->owner != paper->owner &&
              candidate->contains(kw.concept_id)) {
            other_paper = candidate->owner;
            break;
          }
        }
      }
      if (corroborator.empty() && other_paper.empty()) continue;

      result.selection.items.push_back({kw.concept_id, added_weight});
      std::vector<std::string> justification{paper->owner};
      justification.push_back(corroborator.empty() ? other_paper
                                                   : corroborator);
      result.added.push_back({reviewer.owner, kw.concept_id, added_weight,
                              AugmentationRule::bid_propagation,
                              std::move(justification)});
    }
  }
  return result;
}

AugmentedSelection expand_generalized(const KeywordSelection& reviewer,
                                      const Taxonomy& taxonomy,
                                      const AugmentationConfig& config) {
  config.validate(taxonomy);
  int band_lo = config.band_min;
  int band_hi = config.resolved_band_max(taxonomy);

  AugmentedSelection result{reviewer, {}};
  for (const auto& item : reviewer.items) {
    if (item.weight < config.high_competence_threshold) continue;
    int depth = taxonomy.depth(item.concept_id);
    if (depth < band_lo || depth > band_hi) continue;
    std::vector<std::string> children = taxonomy.children(item.concept_id);
    if (children.empty()) continue;
    std::string parent = taxonomy.parent(item.concept_id);
    if (!parent.empty() && reviewer.contains(parent)) continue;
    bool child_selected = false;
    for (const auto& child : children) {
      if (reviewer.contains(child)) {
        child_selected = true;
        break;
      }
    }
    if (child_selected) continue;

    for (const auto& child : children) {
      result.selection.items.push_back({child, item.weight});
      result.added.push_back({reviewer.owner, child, item.weight,
                              AugmentationRule::generalization_expansion,
                              {item.concept_id}});
    }
  }
  return result;
}

}  // namespace taxmatch
