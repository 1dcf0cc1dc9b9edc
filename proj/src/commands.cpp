#include "taxmatch/commands.hpp"

#include <filesystem>
#include <utility>

#include "taxmatch/errors.hpp"
#include "taxmatch/io.hpp"

namespace taxmatch {

namespace {

SimilarityMatrix pipeline_matrix(const ConferenceDataset& dataset,
                                 const RunConfig& config) {
  SimilarityMatrix matrix =
      build_matrix(dataset.paper_selections(), dataset.reviewer_selections(),
                   dataset.taxonomy, config.matrix_config());
  matrix = apply_bids(std::move(matrix), dataset.bids, config.bid_values);
  matrix = apply_conflicts(std::move(matrix), dataset.conflicts);
  return matrix;
}

std::filesystem::path write_report(const std::filesystem::path& out_dir,
                                   const char* name,
                                   const std::string& content) {
  std::filesystem::create_directories(out_dir);
  std::filesystem::path path = out_dir / name;
  write_text_file(path, content);
  return path;
}

}  // namespace

std::vector<std::filesystem::path> cmd_similarity(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir) {
  validate_dataset(dataset);
  SimilarityMatrix matrix = pipeline_matrix(dataset, config);
  return {write_report(out_dir, "matrix.csv", matrix_to_csv(matrix)),
          write_report(out_dir, "provenance.csv", provenance_to_csv(matrix))};
}

std::vector<std::filesystem::path> cmd_assign(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir) {
  validate_dataset(dataset);
  SimilarityMatrix matrix = pipeline_matrix(dataset, config);
  int capacity = config.resolved_capacity(matrix.paper_count(),
                                          matrix.reviewer_count());
  Assignment assignment =
      config.solver == Solver::optimal
          ? assign_optimal(matrix, config.k, capacity)
          : assign_greedy(matrix, config.k, capacity);

  AssignSummary summary;
  summary.solver = to_string(config.solver);
  summary.k = config.k;
  summary.capacity = capacity;
  summary.assigned_edges = static_cast<int>(assignment.edges.size());
  summary.total_weight = total_weight(matrix, assignment);
  summary.random_assignments = count_random(matrix, assignment);
  std::vector<int> load(matrix.reviewer_count(), 0);
  for (const auto& edge : assignment.edges) {
    ++load[matrix.reviewer_index(edge.reviewer)];
  }
  for (std::size_t j = 0; j < matrix.reviewer_count(); ++j) {
    summary.reviewer_load.emplace_back(matrix.reviewers()[j], load[j]);
  }

  return {write_report(out_dir, "assignment.csv",
                       assignment_to_csv(matrix, assignment)),
          write_report(out_dir, "summary.json", summary_to_json(summary))};
}

std::vector<std::filesystem::path> cmd_evaluate(
    const ConferenceDataset& dataset,
    const std::filesystem::path& assignment_file, const RunConfig& config,
    const std::filesystem::path& out_dir) {
  validate_dataset(dataset);
  SimilarityMatrix matrix = pipeline_matrix(dataset, config);
  Assignment assignment =
      assignment_from_csv(matrix, read_text_file(assignment_file));
  AccuracyReport report = score_accuracy(matrix, assignment, dataset.evals);
  return {write_report(out_dir, "accuracy.json", accuracy_to_json(report)),
          write_report(out_dir, "histogram.csv",
                       histogram_to_csv(report.histogram))};
}

std::vector<std::filesystem::path> cmd_augment(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir) {
  validate_dataset(dataset);
  config.augmentation.validate(dataset.taxonomy);

  std::vector<DepthViolation> violations;
  for (const auto& paper : dataset.papers) {
    auto found = validate_selection_depth(paper.keywords, dataset.taxonomy,
                                          config.augmentation);
    violations.insert(violations.end(), found.begin(), found.end());
  }
  for (const auto& reviewer : dataset.reviewers) {
    auto found = validate_selection_depth(reviewer.keywords, dataset.taxonomy,
                                          config.augmentation);
    violations.insert(violations.end(), found.begin(), found.end());
  }

  std::vector<KeywordSelection> paper_selections = dataset.paper_selections();
  std::vector<KeywordSelection> reviewer_selections =
      dataset.reviewer_selections();
  std::vector<ReviewerRecord> augmented = dataset.reviewers;
  std::vector<AddedKeyword> additions;
  for (auto& reviewer : augmented) {
    AugmentedSelection propagated =
        propagate_from_bids(reviewer.keywords, paper_selections, dataset.bids,
                            reviewer_selections, config.augmentation);
    AugmentedSelection expanded = expand_generalized(
        propagated.selection, dataset.taxonomy, config.augmentation);
    reviewer.keywords = std::move(expanded.selection);
    additions.insert(additions.end(), propagated.added.begin(),
                     propagated.added.end());
    additions.insert(additions.end(), expanded.added.begin(),
                     expanded.added.end());
  }

  return {write_report(out_dir, "reviewers_augmented.json",
                       serialize_reviewers(augmented)),
          write_report(out_dir, "augmentation_diff.json",
                       augmentation_diff_to_json(violations, additions))};
}

}  // namespace taxmatch
