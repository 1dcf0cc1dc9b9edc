#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace taxmatch {

// A keyword picked by an author or reviewer, with the level it applies
// (papers) or the level of competence (reviewers). Weight is 1 for
// unweighted conferences.
struct SelectedKeyword {
  std::string concept_id;
  double weight = 1.0;

  bool operator==(const SelectedKeyword&) const = default;
};

// The set of keywords describing one paper or one reviewer. Concepts are
// unique within a selection; order is the input order and is preserved so
// downstream tie-breaks stay deterministic.
struct KeywordSelection {
  std::string owner;
  std::vector<SelectedKeyword> items;

  bool operator==(const KeywordSelection&) const = default;

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }

  const SelectedKeyword* find(std::string_view concept_id) const {
    for (const auto& item : items) {
      if (item.concept_id == concept_id) return &item;
    }
    return nullptr;
  }

  bool contains(std::string_view concept_id) const {
    return find(concept_id) != nullptr;
  }
};

}  // namespace taxmatch
