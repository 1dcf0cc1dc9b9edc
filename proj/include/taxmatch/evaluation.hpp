#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxmatch/matching.hpp"

namespace taxmatch {

enum class ExpertiseLevel { low, medium, high };

std::string_view to_string(ExpertiseLevel level);
ExpertiseLevel expertise_level_from_string(std::string_view text);

// A reviewer's post-review declaration of expertise in one assigned paper.
struct SelfEvaluation {
  std::string reviewer;
  std::string paper;
  ExpertiseLevel level = ExpertiseLevel::medium;

  bool operator==(const SelfEvaluation&) const = default;
};

// Counts per expertise level over value bins [0,w), [w,2w), ...; a value
// of exactly 1.0 joins the final bin.
struct LevelHistogram {
  double bin_width = 0.1;
  std::vector<int> low;
  std::vector<int> medium;
  std::vector<int> high;

  std::size_t bin_count() const { return low.size(); }
};

struct PaperAccuracy {
  std::string paper;
  int correct = 0;
  int total = 0;
};

// One evaluated cell that fell outside the paper's accepted ordering.
struct IncorrectCell {
  std::string paper;
  std::string reviewer;
  ExpertiseLevel level = ExpertiseLevel::medium;
  double value = 0.0;
  std::string tag;  // free-text diagnostic, not machine-interpreted
};

struct AccuracyReport {
  std::vector<PaperAccuracy> papers;  // papers with evaluations, row order
  int correct_total = 0;
  int evaluated_total = 0;
  double aggregate_fraction = 0.0;  // 0 when nothing was evaluated
  std::vector<IncorrectCell> incorrect;
  LevelHistogram histogram;
};

// Scores the calculated factors against self-evaluations, paper by paper.
// A paper's correct set is its largest subset of evaluated factors in which
// every Low factor is strictly below every Medium factor, every Medium
// strictly below every High, and every Medium/High factor is nonzero.
// Ties between equally large subsets prefer more High members, then the
// subset found first in (value, level, input) order. Factors outside the
// chosen subset are reported incorrect with a diagnostic tag.
AccuracyReport score_accuracy(const SimilarityMatrix& matrix,
                              const Assignment& assignment,
                              std::span<const SelfEvaluation> evals);

// Buckets every evaluated factor by value. bin_width must divide 1.0.
LevelHistogram histogram(const SimilarityMatrix& matrix,
                         std::span<const SelfEvaluation> evals,
                         double bin_width = 0.1);

// Assigned pairs the system knew nothing about: computed cells whose value
// is exactly zero. Overridden and conflict cells never count.
int count_random(const SimilarityMatrix& matrix, const Assignment& assignment);

}  // namespace taxmatch
