#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxmatch/concept_sim.hpp"
#include "taxmatch/selection.hpp"
#include "taxmatch/set_sim.hpp"
#include "taxmatch/taxonomy.hpp"

namespace taxmatch {

// Where a matrix cell's value came from.
enum class Provenance { computed, bid_override, conflict };

std::string_view to_string(Provenance provenance);

struct MatrixCell {
  double value = 0.0;
  Provenance provenance = Provenance::computed;
};

// The complete weighted bipartite graph between papers and reviewers.
// Row and column order follow the input dataset, so exports and solver
// tie-breaks are reproducible.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<std::string> papers,
                   std::vector<std::string> reviewers);

  std::size_t paper_count() const { return papers_.size(); }
  std::size_t reviewer_count() const { return reviewers_.size(); }
  const std::vector<std::string>& papers() const { return papers_; }
  const std::vector<std::string>& reviewers() const { return reviewers_; }

  MatrixCell& at(std::size_t paper, std::size_t reviewer);
  const MatrixCell& at(std::size_t paper, std::size_t reviewer) const;

  // Lookups throw ValidationError on unknown ids.
  std::size_t paper_index(std::string_view id) const;
  std::size_t reviewer_index(std::string_view id) const;
  bool has_paper(std::string_view id) const;
  bool has_reviewer(std::string_view id) const;

 private:
  std::vector<std::string> papers_;
  std::vector<std::string> reviewers_;
  std::unordered_map<std::string, std::size_t> paper_by_id_;
  std::unordered_map<std::string, std::size_t> reviewer_by_id_;
  std::vector<MatrixCell> cells_;
};

// A reviewer's explicit willingness rating for one paper, ordered from
// eager expert (1) down to a declared conflict of interests (5).
enum class BidOption : int {
  expert_eager = 1,  // expert in the domain and wants the paper
  expert = 2,        // expert in the domain
  capable = 3,       // not an expert but able to review
  outside = 4,       // paper completely outside own expertise
  conflict = 5,      // conflict of interests
};

BidOption bid_option_from_int(int value);  // throws on values outside 1..5

struct Bid {
  std::string reviewer;
  std::string paper;
  BidOption option = BidOption::capable;

  bool operator==(const Bid&) const = default;
};

// Similarity written into a cell when the reviewer rated the paper
// explicitly. Conflict has no value: it empties the cell instead.
struct BidValueMap {
  double expert_eager = 1.0;
  double expert = 0.85;
  double capable = 0.5;
  double outside = 0.0;

  double value_for(BidOption option) const;
  // All four values must lie in [0,1]; throws ValidationError otherwise.
  void validate() const;
};

// A declared conflict of interest, independent of bidding.
struct ConflictPair {
  std::string reviewer;
  std::string paper;

  bool operator==(const ConflictPair&) const = default;
};

struct MatrixConfig {
  SetMeasure set_measure = SetMeasure::symmetric;
  ConceptMeasure measure = ConceptMeasure::wu_palmer;
  Weighting weighting = Weighting::none;
  double smoothing = 1.0;  // pseudo-count for the probability table
};

// Computes every pairwise similarity factor. The probability table for the
// information-content measure is estimated from the pooled paper and
// reviewer selections of this dataset.
SimilarityMatrix build_matrix(std::span<const KeywordSelection> papers,
                              std::span<const KeywordSelection> reviewers,
                              const Taxonomy& taxonomy,
                              const MatrixConfig& config);

// Overwrites bid cells with the mapped value (provenance bid_override);
// a conflict bid zeroes the cell with provenance conflict. Unbid cells
// stay untouched. Duplicate (reviewer, paper) bids are an error.
SimilarityMatrix apply_bids(SimilarityMatrix matrix, std::span<const Bid> bids,
                            const BidValueMap& mapping);

// Marks declared conflict pairs. Applied after bids: an explicit conflict
// wins over any bid value.
SimilarityMatrix apply_conflicts(SimilarityMatrix matrix,
                                 std::span<const ConflictPair> conflicts);

struct AssignmentEdge {
  std::string paper;
  std::string reviewer;

  bool operator==(const AssignmentEdge&) const = default;
};

// Edges are ordered by paper row, then reviewer column, so serialized
// assignments are reproducible. k and capacity record the run parameters;
// solvers guarantee exactly k edges per paper and at most capacity per
// reviewer, or throw InfeasibleError instead.
struct Assignment {
  std::vector<AssignmentEdge> edges;
  int k = 0;
  int capacity = 0;
};

double total_weight(const SimilarityMatrix& matrix,
                    const Assignment& assignment);

// Maximizes total similarity over all feasible assignments, via a
// min-cost-flow reduction. Conflict cells are never used. Deterministic:
// equal-weight optima resolve by paper row and reviewer column order.
Assignment assign_optimal(const SimilarityMatrix& matrix, int k, int capacity);

// Processes papers in row order; each takes its k highest-value eligible
// reviewers with remaining capacity, ties broken by column order.
Assignment assign_greedy(const SimilarityMatrix& matrix, int k, int capacity);

}  // namespace taxmatch
