#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "taxmatch/augmentation.hpp"
#include "taxmatch/evaluation.hpp"
#include "taxmatch/matching.hpp"
#include "taxmatch/taxonomy.hpp"

namespace taxmatch {

struct PaperRecord {
  std::string id;
  std::string title;
  KeywordSelection keywords;  // owner == id

  bool operator==(const PaperRecord&) const = default;
};

struct ReviewerRecord {
  std::string id;
  std::string name;
  KeywordSelection keywords;  // owner == id

  bool operator==(const ReviewerRecord&) const = default;
};

// Everything one conference submits to the pipeline.
struct ConferenceDataset {
  Taxonomy taxonomy;
  std::vector<PaperRecord> papers;
  std::vector<ReviewerRecord> reviewers;
  std::vector<Bid> bids;
  std::vector<SelfEvaluation> evals;
  std::vector<ConflictPair> conflicts;

  std::vector<KeywordSelection> paper_selections() const;
  std::vector<KeywordSelection> reviewer_selections() const;
};

enum class Solver { optimal, greedy };

struct RunConfig {
  ConceptMeasure measure = ConceptMeasure::wu_palmer;
  SetMeasure set_measure = SetMeasure::symmetric;
  Weighting weighting = Weighting::none;
  Solver solver = Solver::optimal;
  int k = 3;
  int capacity = 0;  // 0 derives ceil(k * papers / reviewers)
  double smoothing = 1.0;
  BidValueMap bid_values;
  AugmentationConfig augmentation;
  std::uint64_t seed = 0;  // reserved for synthetic data generation

  MatrixConfig matrix_config() const;
  int resolved_capacity(std::size_t papers, std::size_t reviewers) const;
};

ConceptMeasure concept_measure_from_string(std::string_view text);
SetMeasure set_measure_from_string(std::string_view text);
Weighting weighting_from_string(std::string_view text);
Solver solver_from_string(std::string_view text);

std::string_view to_string(ConceptMeasure measure);
std::string_view to_string(SetMeasure measure);
std::string_view to_string(Weighting weighting);
std::string_view to_string(Solver solver);

// Parsers take whole-document JSON text and throw ValidationError with
// the offending location on malformed input.
std::vector<PaperRecord> parse_papers(const std::string& text);
std::vector<ReviewerRecord> parse_reviewers(const std::string& text);
std::vector<Bid> parse_bids(const std::string& text);
std::vector<SelfEvaluation> parse_evals(const std::string& text);
std::vector<ConflictPair> parse_conflicts(const std::string& text);
// Overlays the document's fields onto `base`; absent fields keep base
// values, so defaults, file config and command-line overrides stack.
RunConfig parse_config(const std::string& text, RunConfig base = {});

std::string serialize_papers(const std::vector<PaperRecord>& papers);
std::string serialize_reviewers(const std::vector<ReviewerRecord>& reviewers);
std::string serialize_bids(const std::vector<Bid>& bids);
std::string serialize_evals(const std::vector<SelfEvaluation>& evals);
std::string serialize_conflicts(const std::vector<ConflictPair>& conflicts);
std::string serialize_config(const RunConfig& config);

// Cross-checks the whole dataset and reports every problem at once:
// unique non-empty ids, non-empty selections of known concepts with
// weights in [0,1], bids/evals/conflicts referencing known ids, at most
// one bid and one evaluation per (reviewer, paper) pair.
void validate_dataset(const ConferenceDataset& dataset);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace taxmatch
