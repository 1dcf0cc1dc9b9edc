#include "taxmatch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "taxmatch/errors.hpp"

namespace taxmatch {

std::string_view to_string(ExpertiseLevel level) {
  switch (level) {
    case ExpertiseLevel::low:
      return "low";
    case ExpertiseLevel::medium:
      return "medium";
    case ExpertiseLevel::high:
      return "high";
  }
  return "medium";
}

ExpertiseLevel expertise_level_from_string(std::string_view text) {
  if (text == "low") return ExpertiseLevel::low;
  if (text == "medium") return ExpertiseLevel::medium;
  if (text == "high") return ExpertiseLevel::high;
  throw ValidationError({"bad-level", std::string(text),
                         "expertise level must be low, medium or high"});
}

namespace {

struct EvalItem {
  std::size_t reviewer;  // column index
  ExpertiseLevel level;
  double value;
  bool admissible;  // Medium/High with a zero factor can never be correct
};

// Largest subset whose factors respect the strict per-level ordering,
// preferring more High members among equally large subsets. Items arrive
// sorted by (value, level, input order); any valid subset read in that
// order has non-decreasing levels with strict value increases across level
// changes, so longest-chain DP over that order searches exactly the valid
// subsets.
std::vector<std::size_t> best_consistent_subset(
    const std::vector<EvalItem>& items) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].admissible) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(items[a].value, items[a].level, a) <
           std::make_tuple(items[b].value, items[b].level, b);
  });

  std::size_t n = order.size();
  std::vector<int> len(n, 0), highs(n, 0), pred(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const EvalItem& item = items[order[i]];
    int self_high = item.level == ExpertiseLevel::high ? 1 : 0;
    len[i] = 1;
    highs[i] = self_high;
    for (std::size_t j = 0; j < i; ++j) {
      const EvalItem& prev = items[order[j]];
      bool valid = prev.level == item.level ||
                   (prev.level < item.level && prev.value < item.value);
      if (!valid) continue;
      if (std::make_pair(len[j] + 1, highs[j] + self_high) >
          std::make_pair(len[i], highs[i])) {
        len[i] = len[j] + 1;
        highs[i] = highs[j] + self_high;
        pred[i] = static_cast<int>(j);
      }
    }
  }

  std::vector<std::size_t> chosen;
  if (n == 0) return chosen;
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::make_pair(len[i], highs[i]) >
        std::make_pair(len[best], highs[best])) {
      best = i;
    }
  }
  for (int i = static_cast<int>(best); i != -1; i = pred[i]) {
    chosen.push_back(order[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

AccuracyReport score_accuracy(const SimilarityMatrix& matrix,
                              const Assignment& assignment,
                              std::span<const SelfEvaluation> evals) {
  std::set<std::pair<std::size_t, std::size_t>> assigned;
  for (const auto& edge : assignment.edges) {
    assigned.emplace(matrix.paper_index(edge.paper),
                     matrix.reviewer_index(edge.reviewer));
  }

  // paper row -> evaluated items in eval input order
  std::map<std::size_t, std::vector<EvalItem>> by_paper;
  for (const auto& eval : evals) {
    std::size_t p = matrix.paper_index(eval.paper);
    std::size_t r = matrix.reviewer_index(eval.reviewer);
    if (!assigned.count({p, r})) {
      throw ValidationError(
          {"unassigned-eval", eval.reviewer + "/" + eval.paper,
           "reviewer '" + eval.reviewer + "' evaluated paper '" + eval.paper +
               "' but that pair is not assigned"});
    }
    double value = matrix.at(p, r).value;
    bool admissible = eval.level == ExpertiseLevel::low || value != 0.0;
    by_paper[p].push_back({r, eval.level, value, admissible});
  }

  AccuracyReport report;
  for (const auto& [p, items] : by_paper) {
    std::vector<std::size_t> chosen = best_consistent_subset(items);
    PaperAccuracy accuracy{matrix.papers()[p],
                           static_cast<int>(chosen.size()),
                           static_cast<int>(items.size())};
    report.papers.push_back(accuracy);
    report.correct_total += accuracy.correct;
    report.evaluated_total += accuracy.total;

    std::set<std::size_t> chosen_set(chosen.begin(), chosen.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (chosen_set.count(i)) continue;
      const EvalItem& item = items[i];
      report.incorrect.push_back(
          {matrix.papers()[p], matrix.reviewers()[item.reviewer], item.level,
           item.value,
           item.admissible ? "out of order with the accepted factors"
                           : "zero factor for a Medium/High evaluation"});
    }
  }
  report.aggregate_fraction =
      report.evaluated_total == 0
          ? 0.0
          : static_cast<double>(report.correct_total) / report.evaluated_total;
  report.histogram = histogram(matrix, evals);
  return report;
}

LevelHistogram histogram(const SimilarityMatrix& matrix,
                         std::span<const SelfEvaluation> evals,
                         double bin_width) {
  if (!(bin_width > 0.0) ||
      std::abs(std::round(1.0 / bin_width) * bin_width - 1.0) > 1e-9) {
    throw ValidationError({"bad-bin-width", std::to_string(bin_width),
                           "bin width must divide 1.0"});
  }
  std::size_t bins = static_cast<std::size_t>(std::round(1.0 / bin_width));
  LevelHistogram result;
  result.bin_width = bin_width;
  result.low.assign(bins, 0);
  result.medium.assign(bins, 0);
  result.high.assign(bins, 0);
  for (const auto& eval : evals) {
    double value = matrix
                       .at(matrix.paper_index(eval.paper),
                           matrix.reviewer_index(eval.reviewer))
                       .value;
    std::size_t bin = std::min(
        bins - 1, static_cast<std::size_t>(std::floor(value / bin_width)));
    switch (eval.level) {
      case ExpertiseLevel::low:
        ++result.low[bin];
        break;
      case ExpertiseLevel::medium:
        ++result.medium[bin];
        break;
      case ExpertiseLevel::high:
        ++result.high[bin];
        break;
    }
  }
  return result;
}

int count_random(const SimilarityMatrix& matrix,
                 const Assignment& assignment) {
  int count = 0;
  for (const auto& edge : assignment.edges) {
    const MatrixCell& cell = matrix.at(matrix.paper_index(edge.paper),
                                       matrix.reviewer_index(edge.reviewer));
    if (cell.provenance == Provenance::computed && cell.value == 0.0) ++count;
  }
  return count;
}

}  // namespace taxmatch
