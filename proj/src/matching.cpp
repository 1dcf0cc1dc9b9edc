#include "taxmatch/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <utility>

#include "taxmatch/errors.hpp"

namespace taxmatch {

namespace {

std::unordered_map<std::string, std::size_t> index_ids(
    const std::vector<std::string>& ids, const char* kind) {
  std::unordered_map<std::string, std::size_t> by_id;
  by_id.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!by_id.emplace(ids[i], i).second) {
      throw ValidationError({"duplicate-id", ids[i],
                             std::string(kind) + " '" + ids[i] +
                                 "' appears more than once"});
    }
  }
  return by_id;
}

std::size_t lookup(const std::unordered_map<std::string, std::size_t>& by_id,
                   std::string_view id, const char* kind) {
  auto it = by_id.find(std::string(id));
  if (it == by_id.end()) {
    throw ValidationError({std::string("unknown-") + kind, std::string(id),
                           std::string(kind) + " '" + std::string(id) +
                               "' is not part of this matrix"});
  }
  return it->second;
}

void check_selection(const KeywordSelection& selection,
                     const Taxonomy& taxonomy) {
  if (selection.empty()) {
    throw ValidationError({"empty-selection", selection.owner,
                           "'" + selection.owner + "' has no keywords"});
  }
  for (const auto& item : selection.items) {
    if (!taxonomy.contains(item.concept_id)) {
      throw ValidationError({"unknown-concept", item.concept_id,
                             "'" + selection.owner +
                                 "' selects unknown concept '" + item.concept_id +
                                 "'"});
    }
  }
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::computed:
      return "computed";
    case Provenance::bid_override:
      return "bid_override";
    case Provenance::conflict:
      return "conflict";
  }
  return "computed";
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> papers,
                                   std::vector<std::string> reviewers)
    : papers_(std::move(papers)),
      reviewers_(std::move(reviewers)),
      paper_by_id_(index_ids(papers_, "paper")),
      reviewer_by_id_(index_ids(reviewers_, "reviewer")),
      cells_(papers_.size() * reviewers_.size()) {}

MatrixCell& SimilarityMatrix::at(std::size_t paper, std::size_t reviewer) {
  return cells_[paper * reviewers_.size() + reviewer];
}

const MatrixCell& SimilarityMatrix::at(std::size_t paper,
                                       std::size_t reviewer) const {
  return cells_[paper * reviewers_.size() + reviewer];
}

std::size_t SimilarityMatrix::paper_index(std::string_view id) const {
  return lookup(paper_by_id_, id, "paper");
}

std::size_t SimilarityMatrix::reviewer_index(std::string_view id) const {
  return lookup(reviewer_by_id_, id, "reviewer");
}

bool SimilarityMatrix::has_paper(std::string_view id) const {
  return paper_by_id_.count(std::string(id)) != 0;
}

bool SimilarityMatrix::has_reviewer(std::string_view id) const {
  return reviewer_by_id_.count(std::string(id)) != 0;
}

BidOption bid_option_from_int(int value) {
  if (value < 1 || value > 5) {
    throw ValidationError({"bad-bid-option", std::to_string(value),
                           "bid option must be 1..5, got " +
                               std::to_string(value)});
  }
  return static_cast<BidOption>(value);
}

double BidValueMap::value_for(BidOption option) const {
  switch (option) {
    case BidOption::expert_eager:
      return expert_eager;
    case BidOption::expert:
      return expert;
    case BidOption::capable:
      return capable;
    case BidOption::outside:
      return outside;
    case BidOption::conflict:
      break;  // conflict empties the cell; there is no value
  }
  return 0.0;
}

void BidValueMap::validate() const {
  const std::pair<const char*, double> values[] = {
      {"expert_eager", expert_eager},
      {"expert", expert},
      {"capable", capable},
      {"outside", outside},
  };
  for (const auto& [name, value] : values) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError({"bad-bid-value", name,
                             std::string("bid value for '") + name +
                                 "' must lie in [0,1]"});
    }
  }
}

SimilarityMatrix build_matrix(std::span<const KeywordSelection> papers,
                              std::span<const KeywordSelection> reviewers,
                              const Taxonomy& taxonomy,
                              const MatrixConfig& config) {
  std::vector<std::string> paper_ids;
  paper_ids.reserve(papers.size());
  for (const auto& p : papers) {
    check_selection(p, taxonomy);
    paper_ids.push_back(p.owner);
  }
  std::vector<std::string> reviewer_ids;
  reviewer_ids.reserve(reviewers.size());
  for (const auto& r : reviewers) {
    check_selection(r, taxonomy);
    reviewer_ids.push_back(r.owner);
  }

  ProbabilityTable table;
  const ProbabilityTable* table_ptr = nullptr;
  if (config.measure == ConceptMeasure::lin) {
    std::vector<KeywordSelection> pooled(papers.begin(), papers.end());
    pooled.insert(pooled.end(), reviewers.begin(), reviewers.end());
    table = estimate_probabilities(taxonomy, pooled, config.smoothing);
    table_ptr = &table;
  }
  ConceptSimilarity sim(taxonomy, {config.measure, config.weighting},
                        table_ptr);

  SimilarityMatrix matrix(std::move(paper_ids), std::move(reviewer_ids));
  for (std::size_t i = 0; i < papers.size(); ++i) {
    for (std::size_t j = 0; j < reviewers.size(); ++j) {
      matrix.at(i, j) = {
          similarity_factor(papers[i], reviewers[j], config.set_measure, sim),
          Provenance::computed};
    }
  }
  return matrix;
}

SimilarityMatrix apply_bids(SimilarityMatrix matrix, std::span<const Bid> bids,
                            const BidValueMap& mapping) {
  mapping.validate();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& bid : bids) {
    std::size_t p = matrix.paper_index(bid.paper);
    std::size_t r = matrix.reviewer_index(bid.reviewer);
    if (!seen.emplace(p, r).second) {
      throw ValidationError({"duplicate-bid", bid.reviewer + "/" + bid.paper,
                             "reviewer '" + bid.reviewer +
                                 "' bids more than once on paper '" +
                                 bid.paper + "'"});
    }
    if (bid.option == BidOption::conflict) {
      matrix.at(p, r) = {0.0, Provenance::conflict};
    } else {
      matrix.at(p, r) = {mapping.value_for(bid.option),
                         Provenance::bid_override};
    }
  }
  return matrix;
}

SimilarityMatrix apply_conflicts(SimilarityMatrix matrix,
                                 std::span<const ConflictPair> conflicts) {
  for (const auto& conflict : conflicts) {
    std::size_t p = matrix.paper_index(conflict.paper);
    std::size_t r = matrix.reviewer_index(conflict.reviewer);
    matrix.at(p, r) = {0.0, Provenance::conflict};
  }
  return matrix;
}

double total_weight(const SimilarityMatrix& matrix,
                    const Assignment& assignment) {
  double total = 0.0;
  for (const auto& edge : assignment.edges) {
    total += matrix.at(matrix.paper_index(edge.paper),
                       matrix.reviewer_index(edge.reviewer))
                 .value;
  }
  return total;
}

namespace {

void check_demand(const SimilarityMatrix& matrix, int k, int capacity) {
  if (k < 0) {
    throw ValidationError(
        {"bad-k", std::to_string(k), "reviewers per paper must be >= 0"});
  }
  if (capacity < 0) {
    throw ValidationError({"bad-capacity", std::to_string(capacity),
                           "reviewer capacity must be >= 0"});
  }
  long long demand = static_cast<long long>(k) * matrix.paper_count();
  long long supply = static_cast<long long>(capacity) * matrix.reviewer_count();
  if (demand > supply) {
    throw InfeasibleError(
        "demand " + std::to_string(demand) + " exceeds supply " +
            std::to_string(supply),
        "k*|papers| = " + std::to_string(demand) +
            " assignments required but reviewers offer only capacity*"
            "|reviewers| = " +
            std::to_string(supply));
  }
  for (std::size_t i = 0; i < matrix.paper_count(); ++i) {
    int eligible = 0;
    for (std::size_t j = 0; j < matrix.reviewer_count(); ++j) {
      if (matrix.at(i, j).provenance != Provenance::conflict) ++eligible;
    }
    if (eligible < k) {
      throw InfeasibleError(
          "paper '" + matrix.papers()[i] + "' has " + std::to_string(eligible) +
              " eligible reviewers, needs " + std::to_string(k),
          "paper '" + matrix.papers()[i] +
              "' cannot receive enough non-conflict reviewers");
    }
  }
}

// Successive-shortest-paths min-cost flow on the fixed bipartite layout:
// node 0 = source, 1..P = papers, P+1..P+R = reviewers, P+R+1 = sink.
struct FlowEdge {
  int to;
  int rev;  // index of the reverse edge inside graph[to]
  int cap;
  double cost;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : graph_(nodes) {}

  void add_edge(int from, int to, int cap, double cost) {
    graph_[from].push_back(
        {to, static_cast<int>(graph_[to].size()), cap, cost});
    graph_[to].push_back(
        {from, static_cast<int>(graph_[from].size()) - 1, 0, -cost});
  }

  const std::vector<FlowEdge>& edges_from(int node) const {
    return graph_[node];
  }

  // Augments one shortest path per round until `want` units are routed or
  // the sink becomes unreachable. Returns the units actually routed.
  int route(int source, int sink, int want) {
    int n = static_cast<int>(graph_.size());
    std::vector<double> potential(n, 0.0);
    int routed = 0;
    while (routed < want) {
      constexpr double kInf = std::numeric_limits<double>::infinity();
      std::vector<double> dist(n, kInf);
      std::vector<int> prev_node(n, -1);
      std::vector<int> prev_edge(n, -1);
      std::priority_queue<std::pair<double, int>,
                          std::vector<std::pair<double, int>>,
                          std::greater<>>
          queue;
      dist[source] = 0.0;
      queue.emplace(0.0, source);
      while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (std::size_t e = 0; e < graph_[u].size(); ++e) {
          const FlowEdge& edge = graph_[u][e];
          if (edge.cap <= 0) continue;
          double next = d + edge.cost + potential[u] - potential[edge.to];
          if (next < dist[edge.to]) {
            dist[edge.to] = next;
            prev_node[edge.to] = u;
            prev_edge[edge.to] = static_cast<int>(e);
            queue.emplace(next, edge.to);
          }
        }
      }
      if (dist[sink] == kInf) break;
      for (int v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      int bottleneck = want - routed;
      for (int v = sink; v != source; v = prev_node[v]) {
        bottleneck =
            std::min(bottleneck, graph_[prev_node[v]][prev_edge[v]].cap);
      }
      for (int v = sink; v != source; v = prev_node[v]) {
        FlowEdge& edge = graph_[prev_node[v]][prev_edge[v]];
        edge.cap -= bottleneck;
        graph_[edge.to][edge.rev].cap += bottleneck;
      }
      routed += bottleneck;
    }
    return routed;
  }

 private:
  std::vector<std::vector<FlowEdge>> graph_;
};

}  // namespace

Assignment assign_optimal(const SimilarityMatrix& matrix, int k, int capacity) {
  check_demand(matrix, k, capacity);
  Assignment assignment{{}, k, capacity};
  if (k == 0 || matrix.paper_count() == 0) return assignment;

  int papers = static_cast<int>(matrix.paper_count());
  int reviewers = static_cast<int>(matrix.reviewer_count());
  int source = 0;
  int sink = papers + reviewers + 1;
  FlowNetwork network(sink + 1);
  for (int i = 0; i < papers; ++i) network.add_edge(source, 1 + i, k, 0.0);
  for (int i = 0; i < papers; ++i) {
    for (int j = 0; j < reviewers; ++j) {
      const MatrixCell& cell = matrix.at(i, j);
      if (cell.provenance == Provenance::conflict) continue;
      // Maximizing total value == minimizing total (1 - value); costs stay
      // non-negative so Dijkstra needs no initial reweighting.
      network.add_edge(1 + i, 1 + papers + j, 1, 1.0 - cell.value);
    }
  }
  for (int j = 0; j < reviewers; ++j) {
    network.add_edge(1 + papers + j, sink, capacity, 0.0);
  }

  int want = k * papers;
  int routed = network.route(source, sink, want);
  if (routed < want) {
    std::string paper = "?";
    int received = 0;
    for (const FlowEdge& edge : network.edges_from(source)) {
      if (edge.cap > 0) {
        paper = matrix.papers()[edge.to - 1];
        received = k - edge.cap;
        break;
      }
    }
    throw InfeasibleError(
        "paper '" + paper + "' receives only " + std::to_string(received) +
            " of " + std::to_string(k) + " required reviewers",
        "eligible reviewer capacity cannot satisfy every paper");
  }

  for (int i = 0; i < papers; ++i) {
    for (const FlowEdge& edge : network.edges_from(1 + i)) {
      bool to_reviewer =
          edge.to > papers && edge.to <= papers + reviewers;
      if (to_reviewer && edge.cap == 0) {
        assignment.edges.push_back(
            {matrix.papers()[i], matrix.reviewers()[edge.to - 1 - papers]});
      }
    }
  }
  return assignment;
}

Assignment assign_greedy(const SimilarityMatrix& matrix, int k, int capacity) {
  check_demand(matrix, k, capacity);
  Assignment assignment{{}, k, capacity};
  if (k == 0 || matrix.paper_count() == 0) return assignment;

  std::vector<int> remaining(matrix.reviewer_count(), capacity);
  for (std::size_t i = 0; i < matrix.paper_count(); ++i) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < matrix.reviewer_count(); ++j) {
      if (matrix.at(i, j).provenance != Provenance::conflict &&
          remaining[j] > 0) {
        candidates.push_back(j);
      }
    }
    if (candidates.size() < static_cast<std::size_t>(k)) {
      throw InfeasibleError(
          "paper '" + matrix.papers()[i] + "' has " +
              std::to_string(candidates.size()) +
              " eligible reviewers with remaining capacity, needs " +
              std::to_string(k),
          "greedy pass ran out of reviewer capacity");
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) {
                double va = matrix.at(i, a).value;
                double vb = matrix.at(i, b).value;
                if (va != vb) return va > vb;
                return a < b;
              });
    candidates.resize(static_cast<std::size_t>(k));
    std::sort(candidates.begin(), candidates.end());
    for (std::size_t j : candidates) {
      --remaining[j];
      assignment.edges.push_back({matrix.papers()[i], matrix.reviewers()[j]});
    }
  }
  return assignment;
}

}  // namespace taxmatch
