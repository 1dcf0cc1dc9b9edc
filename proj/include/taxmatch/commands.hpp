#pragma once

#include <filesystem>
#include <vector>

#include "taxmatch/dataset.hpp"

namespace taxmatch {

// Each command validates the dataset, runs its slice of the pipeline and
// writes its reports into out_dir, returning the written paths in a fixed
// order. Bad input raises ValidationError, unsolvable instances
// InfeasibleError; the CLI maps those to exit codes 2 and 3.

// matrix.csv, provenance.csv
std::vector<std::filesystem::path> cmd_similarity(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir);

// assignment.csv, summary.json
std::vector<std::filesystem::path> cmd_assign(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir);

// accuracy.json, histogram.csv; the assignment file must match what the
// dataset and config produce.
std::vector<std::filesystem::path> cmd_evaluate(
    const ConferenceDataset& dataset,
    const std::filesystem::path& assignment_file, const RunConfig& config,
    const std::filesystem::path& out_dir);

// reviewers_augmented.json, augmentation_diff.json
std::vector<std::filesystem::path> cmd_augment(
    const ConferenceDataset& dataset, const RunConfig& config,
    const std::filesystem::path& out_dir);

}  // namespace taxmatch
