#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxmatch/selection.hpp"

namespace taxmatch {

struct ConceptNode {
  std::string id;
  std::string label;
  int depth = 0;              // edges from the root; root is 0
  int parent = -1;            // node index, -1 for the root
  std::vector<int> children;  // node indices, child insertion order
};

// Closest common ancestor of two concepts together with the three edge
// counts the structural similarity needs: root->ancestor, ancestor->a,
// ancestor->b.
struct LcaResult {
  std::string ancestor;
  int root_to_ancestor = 0;  // N0
  int ancestor_to_a = 0;     // N1
  int ancestor_to_b = 0;     // N2
};

// Rooted tree of keyword concepts. Immutable once built; every query is
// const and safe to call concurrently.
class Taxonomy {
 public:
  // Parses the interchange format: a single UTF-8 JSON object
  //   { "id": "...", "label": "...", "children": [ ... ] }
  // nested recursively. Reports duplicate ids, empty ids/labels and a
  // top-level array (multiple roots) as ValidationError.
  static Taxonomy from_json_text(const std::string& text);

  // Builds from (id, label, parent-id) rows; parent-id empty marks the
  // root. Validates uniqueness, single root, reachability and labels.
  // Rows that form a cycle are reported as "not a tree".
  struct NodeSpec {
    std::string id;
    std::string label;
    std::string parent;  // empty for the root
  };
  static Taxonomy from_node_list(std::span<const NodeSpec> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::string& root() const { return nodes_[root_].id; }
  const std::vector<ConceptNode>& nodes() const { return nodes_; }

  bool contains(std::string_view id) const;
  int index_of(std::string_view id) const;  // throws on unknown id
  const ConceptNode& node(std::string_view id) const;

  int depth(std::string_view id) const;
  // Direct children in insertion order; empty for leaves.
  std::vector<std::string> children(std::string_view id) const;
  // Parent id; empty string for the root.
  std::string parent(std::string_view id) const;
  bool is_leaf(std::string_view id) const;
  int height() const { return height_; }

  LcaResult lca(std::string_view a, std::string_view b) const;

 private:
  Taxonomy() = default;
  void index_and_validate();  // fills lookup map, depths, height

  std::vector<ConceptNode> nodes_;
  std::unordered_map<std::string, int> by_id_;
  int root_ = -1;
  int height_ = 0;
};

// Probability of encountering each concept or a specialization of it,
// estimated from how often the conference's authors and reviewers selected
// it. Counts are descendant-inclusive so p(child) <= p(parent) and
// p(root) = 1 hold by construction. The pseudo-count is added to every
// node's own count before aggregation.
class ProbabilityTable {
 public:
  double probability(std::string_view concept_id) const;  // throws on unknown
  double total_count() const { return total_; }
  double smoothing() const { return smoothing_; }

 private:
  friend ProbabilityTable estimate_probabilities(
      const Taxonomy& taxonomy, std::span<const KeywordSelection> selections,
      double smoothing);

  std::unordered_map<std::string, double> p_;
  double total_ = 0.0;
  double smoothing_ = 0.0;
};

ProbabilityTable estimate_probabilities(
    const Taxonomy& taxonomy, std::span<const KeywordSelection> selections,
    double smoothing);

}  // namespace taxmatch
