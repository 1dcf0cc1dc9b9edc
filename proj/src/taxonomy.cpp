#include "taxmatch/taxonomy.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "json.hpp"
#include "taxmatch/errors.hpp"

namespace taxmatch {

namespace {

using nlohmann::json;

void collect_nodes(const json& obj, const std::string& parent,
                   std::vector<Taxonomy::NodeSpec>& out,
                   std::vector<Issue>& issues) {
  if (!obj.is_object()) {
    issues.push_back({"malformed-node", parent,
                      "taxonomy node under '" + parent +
                          "' is not a JSON object"});
    return;
  }
  Taxonomy::NodeSpec spec;
  spec.parent = parent;
  if (obj.contains("id") && obj["id"].is_string()) {
    spec.id = obj["id"].get<std::string>();
  }
  if (obj.contains("label") && obj["label"].is_string()) {
    spec.label = obj["label"].get<std::string>();
  }
  if (spec.id.empty()) {
    issues.push_back({"empty-id", parent,
                      "taxonomy node under '" + parent +
                          "' is missing a non-empty \"id\""});
    return;
  }
  out.push_back(spec);
  if (obj.contains("children")) {
    if (!obj["children"].is_array()) {
      issues.push_back({"malformed-node", spec.id,
                        "\"children\" of '" + spec.id + "' must be an array"});
      return;
    }
    for (const auto& child : obj["children"]) {
      collect_nodes(child, spec.id, out, issues);
    }
  }
}

}  // namespace

Taxonomy Taxonomy::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError({"parse-error", "", e.what()});
  }
  if (doc.is_array()) {
    throw ValidationError(
        {"multiple-roots", "",
         "taxonomy document must be a single root object, not an array"});
  }
  std::vector<NodeSpec> specs;
  std::vector<Issue> issues;
  collect_nodes(doc, "", specs, issues);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return from_node_list(specs);
}

Taxonomy Taxonomy::from_node_list(std::span<const NodeSpec> specs) {
  std::vector<Issue> issues;
  Taxonomy t;
  t.nodes_.reserve(specs.size());

  for (const auto& spec : specs) {
    if (spec.id.empty()) {
      issues.push_back({"empty-id", "", "taxonomy node with empty id"});
      continue;
    }
    if (t.by_id_.count(spec.id)) {
      issues.push_back({"not-a-tree", spec.id,
                        "concept '" + spec.id +
                            "' appears more than once; taxonomy must be a tree"});
      continue;
    }
    if (spec.label.empty()) {
      issues.push_back({"empty-label", spec.id,
                        "concept '" + spec.id + "' has an empty label"});
    }
    int idx = static_cast<int>(t.nodes_.size());
    t.by_id_.emplace(spec.id, idx);
    ConceptNode node;
    node.id = spec.id;
    node.label = spec.label;
    t.nodes_.push_back(std::move(node));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    auto& node = t.nodes_[i];
    if (spec.parent.empty()) {
      if (t.root_ >= 0) {
        issues.push_back({"multiple-roots", spec.id,
                          "both '" + t.nodes_[t.root_].id + "' and '" +
                              spec.id + "' claim to be the root"});
        continue;
      }
      t.root_ = static_cast<int>(i);
    } else {
      auto it = t.by_id_.find(spec.parent);
      if (it == t.by_id_.end()) {
        issues.push_back({"unknown-parent", spec.id,
                          "concept '" + spec.id + "' names unknown parent '" +
                              spec.parent + "'"});
        continue;
      }
      node.parent = it->second;
      t.nodes_[it->second].children.push_back(static_cast<int>(i));
    }
  }
  if (t.root_ < 0 && issues.empty()) {
    issues.push_back({"no-root", "", "taxonomy has no root node"});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  t.index_and_validate();
  return t;
}

void Taxonomy::index_and_validate() {
  // BFS from the root assigns depths and proves connectivity; a node left
  // unvisited sits on a cycle or a detached component.
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<int> queue{root_};
  seen[root_] = true;
  nodes_[root_].depth = 0;
  height_ = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int cur = queue[head];
    for (int child : nodes_[cur].children) {
      if (seen[child]) continue;
      seen[child] = true;
      nodes_[child].depth = nodes_[cur].depth + 1;
      height_ = std::max(height_, nodes_[child].depth);
      queue.push_back(child);
    }
  }
  std::vector<Issue> issues;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!seen[i]) {
      issues.push_back({"not-a-tree", nodes_[i].id,
                        "concept '" + nodes_[i].id +
                            "' is not reachable from the root"});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

bool Taxonomy::contains(std::string_view id) const {
  return by_id_.find(std::string(id)) != by_id_.end();
}

int Taxonomy::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) {
    throw ValidationError({"unknown-concept", std::string(id),
                           "unknown concept '" + std::string(id) + "'"});
  }
  return it->second;
}

const ConceptNode& Taxonomy::node(std::string_view id) const {
  return nodes_[index_of(id)];
}

int Taxonomy::depth(std::string_view id) const { return node(id).depth; }

std::vector<std::string> Taxonomy::children(std::string_view id) const {
  const auto& n = node(id);
  std::vector<std::string> out;
  out.reserve(n.children.size());
  for (int child : n.children) out.push_back(nodes_[child].id);
  return out;
}

std::string Taxonomy::parent(std::string_view id) const {
  const auto& n = node(id);
  return n.parent < 0 ? std::string{} : nodes_[n.parent].id;
}

bool Taxonomy::is_leaf(std::string_view id) const {
  return node(id).children.empty();
}

LcaResult Taxonomy::lca(std::string_view a, std::string_view b) const {
  int ia = index_of(a);
  int ib = index_of(b);
  int da = nodes_[ia].depth;
  int db = nodes_[ib].depth;
  int ua = ia;
  int ub = ib;
  while (nodes_[ua].depth > nodes_[ub].depth) ua = nodes_[ua].parent;
  while (nodes_[ub].depth > nodes_[ua].depth) ub = nodes_[ub].parent;
  while (ua != ub) {
    ua = nodes_[ua].parent;
    ub = nodes_[ub].parent;
  }
  LcaResult result;
  result.ancestor = nodes_[ua].id;
  result.root_to_ancestor = nodes_[ua].depth;
  result.ancestor_to_a = da - nodes_[ua].depth;
  result.ancestor_to_b = db - nodes_[ua].depth;
  return result;
}

ProbabilityTable estimate_probabilities(
    const Taxonomy& taxonomy, std::span<const KeywordSelection> selections,
    double smoothing) {
  if (smoothing < 0.0) {
    throw ValidationError(
        {"bad-smoothing", "", "smoothing pseudo-count must be >= 0"});
  }
  const auto& nodes = taxonomy.nodes();
  std::vector<double> own(nodes.size(), smoothing);
  for (const auto& selection : selections) {
    for (const auto& item : selection.items) {
      own[taxonomy.index_of(item.concept_id)] += 1.0;
    }
  }

  // Counts include all descendants, so walking nodes deepest-first lets a
  // single pass push each node's total into its parent.
  std::vector<int> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return nodes[lhs].depth > nodes[rhs].depth;
  });
  std::vector<double> inclusive = own;
  for (int idx : order) {
    if (nodes[idx].parent >= 0) inclusive[nodes[idx].parent] += inclusive[idx];
  }

  int root = taxonomy.index_of(taxonomy.root());
  double total = inclusive[root];
  if (total <= 0.0) {
    throw ValidationError(
        {"zero-counts", "",
         "cannot estimate probabilities: no selections and zero smoothing"});
  }
  ProbabilityTable table;
  table.total_ = total;
  table.smoothing_ = smoothing;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    table.p_.emplace(nodes[i].id, inclusive[i] / total);
  }
  table.p_[nodes[root].id] = 1.0;  // exact, not up to rounding
  return table;
}

double ProbabilityTable::probability(std::string_view concept_id) const {
  auto it = p_.find(std::string(concept_id));
  if (it == p_.end()) {
    throw ValidationError({"unknown-concept", std::string(concept_id),
                           "no probability entry for concept '" +
                               std::string(concept_id) + "'"});
  }
  return it->second;
}

}  // namespace taxmatch
