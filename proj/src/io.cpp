#include "taxmatch/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "taxmatch/errors.hpp"

namespace taxmatch {

using ordered_json = nlohmann::ordered_json;

std::string format_similarity(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

namespace {

// JSON similarity values are rounded to the same six-decimal precision as
// the CSV exports.
double round6(double value) { return std::round(value * 1e6) / 1e6; }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream stream(text);
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string matrix_to_csv(const SimilarityMatrix& matrix) {
  std::string out = "paper";
  for (const auto& reviewer : matrix.reviewers()) {
    out += ',';
    out += csv_field(reviewer);
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.paper_count(); ++i) {
    out += csv_field(matrix.papers()[i]);
    for (std::size_t j = 0; j < matrix.reviewer_count(); ++j) {
      out += ',';
      out += format_similarity(matrix.at(i, j).value);
    }
    out += '\n';
  }
  return out;
}

std::string provenance_to_csv(const SimilarityMatrix& matrix) {
  std::string out = "paper";
  for (const auto& reviewer : matrix.reviewers()) {
    out += ',';
    out += csv_field(reviewer);
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.paper_count(); ++i) {
    out += csv_field(matrix.papers()[i]);
    for (std::size_t j = 0; j < matrix.reviewer_count(); ++j) {
      out += ',';
      out += to_string(matrix.at(i, j).provenance);
    }
    out += '\n';
  }
  return out;
}

std::string assignment_to_csv(const SimilarityMatrix& matrix,
                              const Assignment& assignment) {
  std::string out = "paper,reviewer,similarity,provenance\n";
  for (const auto& edge : assignment.edges) {
    const MatrixCell& cell = matrix.at(matrix.paper_index(edge.paper),
                                       matrix.reviewer_index(edge.reviewer));
    out += csv_field(edge.paper);
    out += ',';
    out += csv_field(edge.reviewer);
    out += ',';
    out += format_similarity(cell.value);
    out += ',';
    out += to_string(cell.provenance);
    out += '\n';
  }
  return out;
}

Assignment assignment_from_csv(const SimilarityMatrix& matrix,
                               const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != "paper,reviewer,similarity,provenance") {
    throw ValidationError(
        {"bad-csv", "assignment",
         "assignment file must start with the header "
         "'paper,reviewer,similarity,provenance'"});
  }
  // Serialized at six decimals, so a faithful value is within half an ulp
  // of that precision.
  constexpr double kTolerance = 5e-7;

  Assignment assignment;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    if (lines[row].empty()) continue;
    std::vector<std::string> fields = split_csv_row(lines[row]);
    if (fields.size() != 4) {
      throw ValidationError({"bad-csv", lines[row],
                             "assignment rows need exactly four fields"});
    }
    std::size_t p = matrix.paper_index(fields[0]);
    std::size_t r = matrix.reviewer_index(fields[1]);
    if (!seen.emplace(p, r).second) {
      throw ValidationError({"duplicate-edge", fields[0] + "/" + fields[1],
                             "assignment lists the pair twice"});
    }
    double value = 0.0;
    try {
      value = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError(
          {"bad-csv", fields[2], "similarity is not a number"});
    }
    const MatrixCell& cell = matrix.at(p, r);
    if (std::abs(value - cell.value) > kTolerance) {
      throw ValidationError(
          {"mismatched-assignment", fields[0] + "/" + fields[1],
           "similarity " + fields[2] + " does not match the computed " +
               format_similarity(cell.value)});
    }
    if (fields[3] != to_string(cell.provenance)) {
      throw ValidationError(
          {"mismatched-assignment", fields[0] + "/" + fields[1],
           "provenance '" + fields[3] + "' does not match the computed '" +
               std::string(to_string(cell.provenance)) + "'"});
    }
    if (cell.provenance == Provenance::conflict) {
      throw ValidationError({"conflict-edge", fields[0] + "/" + fields[1],
                             "assignment uses a conflict pair"});
    }
    assignment.edges.push_back({fields[0], fields[1]});
  }
  return assignment;
}

std::string summary_to_json(const AssignSummary& summary) {
  ordered_json load = ordered_json::object();
  for (const auto& [reviewer, count] : summary.reviewer_load) {
    load[reviewer] = count;
  }
  ordered_json document = {
      {"solver", summary.solver},
      {"k", summary.k},
      {"capacity", summary.capacity},
      {"assigned_edges", summary.assigned_edges},
      {"total_weight", round6(summary.total_weight)},
      {"random_assignments", summary.random_assignments},
      {"reviewer_load", load}};
  return document.dump(2) + "\n";
}

std::string accuracy_to_json(const AccuracyReport& report) {
  ordered_json papers = ordered_json::array();
  for (const auto& paper : report.papers) {
    papers.push_back({{"paper", paper.paper},
                      {"correct", paper.correct},
                      {"total", paper.total}});
  }
  ordered_json incorrect = ordered_json::array();
  for (const auto& cell : report.incorrect) {
    incorrect.push_back({{"paper", cell.paper},
                         {"reviewer", cell.reviewer},
                         {"level", std::string(to_string(cell.level))},
                         {"similarity", round6(cell.value)},
                         {"tag", cell.tag}});
  }
  ordered_json document = {
      {"aggregate_fraction", round6(report.aggregate_fraction)},
      {"correct", report.correct_total},
      {"evaluated", report.evaluated_total},
      {"papers", papers},
      {"incorrect", incorrect},
      {"histogram",
       {{"bin_width", report.histogram.bin_width},
        {"low", report.histogram.low},
        {"medium", report.histogram.medium},
        {"high", report.histogram.high}}}};
  return document.dump(2) + "\n";
}

std::string histogram_to_csv(const LevelHistogram& histogram) {
  std::string out = "bin_start,bin_end,low,medium,high\n";
  for (std::size_t bin = 0; bin < histogram.bin_count(); ++bin) {
    out += format_similarity(bin * histogram.bin_width);
    out += ',';
    out += format_similarity((bin + 1) * histogram.bin_width);
    out += ',';
    out += std::to_string(histogram.low[bin]);
    out += ',';
    out += std::to_string(histogram.medium[bin]);
    out += ',';
    out += std::to_string(histogram.high[bin]);
    out += '\n';
  }
  return out;
}

std::string augmentation_diff_to_json(
    const std::vector<DepthViolation>& violations,
    const std::vector<AddedKeyword>& additions) {
  ordered_json violation_list = ordered_json::array();
  for (const auto& violation : violations) {
    violation_list.push_back({{"owner", violation.owner},
                              {"concept", violation.concept_id},
                              {"depth", violation.depth},
                              {"required", violation.required}});
  }
  ordered_json addition_list = ordered_json::array();
  for (const auto& added : additions) {
    addition_list.push_back({{"reviewer", added.reviewer},
                             {"concept", added.concept_id},
                             {"weight", round6(added.weight)},
                             {"rule", std::string(to_string(added.rule))},
                             {"justification", added.justification}});
  }
  ordered_json document = {{"depth_violations", violation_list},
                           {"additions", addition_list}};
  return document.dump(2) + "\n";
}

}  // namespace taxmatch
