#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taxmatch/augmentation.hpp"
#include "taxmatch/evaluation.hpp"
#include "taxmatch/matching.hpp"

namespace taxmatch {

// Fixed six decimal places, the serialization precision for every
// similarity value this tool emits.
std::string format_similarity(double value);

// Header row of reviewer ids, one row per paper; values at six decimals.
std::string matrix_to_csv(const SimilarityMatrix& matrix);

// Same shape as the value matrix, provenance names in the cells.
std::string provenance_to_csv(const SimilarityMatrix& matrix);

// One row per edge: paper, reviewer, similarity, provenance.
std::string assignment_to_csv(const SimilarityMatrix& matrix,
                              const Assignment& assignment);

// Parses an assignment export back against a freshly computed matrix.
// Rows must reference known ids, carry the matrix's similarity within the
// serialization precision and agree on provenance; conflict edges are
// rejected. k and capacity are not recorded in the file and stay 0.
Assignment assignment_from_csv(const SimilarityMatrix& matrix,
                               const std::string& text);

struct AssignSummary {
  std::string solver;
  int k = 0;
  int capacity = 0;
  int assigned_edges = 0;
  double total_weight = 0.0;
  int random_assignments = 0;
  std::vector<std::pair<std::string, int>> reviewer_load;  // column order
};

std::string summary_to_json(const AssignSummary& summary);

std::string accuracy_to_json(const AccuracyReport& report);

// bin_start, bin_end, low, medium, high; one row per bin.
std::string histogram_to_csv(const LevelHistogram& histogram);

std::string augmentation_diff_to_json(
    const std::vector<DepthViolation>& violations,
    const std::vector<AddedKeyword>& additions);

}  // namespace taxmatch
