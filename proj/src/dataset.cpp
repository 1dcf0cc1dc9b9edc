#include "taxmatch/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "taxmatch/errors.hpp"

namespace taxmatch {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<KeywordSelection> ConferenceDataset::paper_selections() const {
  std::vector<KeywordSelection> selections;
  selections.reserve(papers.size());
  for (const auto& paper : papers) selections.push_back(paper.keywords);
  return selections;
}

std::vector<KeywordSelection> ConferenceDataset::reviewer_selections() const {
  std::vector<KeywordSelection> selections;
  selections.reserve(reviewers.size());
  for (const auto& reviewer : reviewers) {
    selections.push_back(reviewer.keywords);
  }
  return selections;
}

MatrixConfig RunConfig::matrix_config() const {
  return {set_measure, measure, weighting, smoothing};
}

int RunConfig::resolved_capacity(std::size_t papers,
                                 std::size_t reviewers) const {
  if (capacity > 0) return capacity;
  if (k <= 0 || reviewers == 0) return 0;
  long long demand = static_cast<long long>(k) * static_cast<long long>(papers);
  return static_cast<int>((demand + reviewers - 1) / reviewers);
}

namespace {

[[noreturn]] void bad_value(const std::string& kind, const std::string& got,
                            const std::string& expected) {
  throw ValidationError(
      {"bad-" + kind, got, kind + " must be one of " + expected});
}

}  // namespace

ConceptMeasure concept_measure_from_string(std::string_view text) {
  if (text == "wu_palmer") return ConceptMeasure::wu_palmer;
  if (text == "lin") return ConceptMeasure::lin;
  bad_value("measure", std::string(text), "wu_palmer, lin");
}

SetMeasure set_measure_from_string(std::string_view text) {
  if (text == "jaccard") return SetMeasure::jaccard;
  if (text == "dice") return SetMeasure::dice;
  if (text == "symmetric") return SetMeasure::symmetric;
  if (text == "asymmetric") return SetMeasure::asymmetric;
  bad_value("set-measure", std::string(text),
            "jaccard, dice, symmetric, asymmetric");
}

Weighting weighting_from_string(std::string_view text) {
  if (text == "none") return Weighting::none;
  if (text == "relative") return Weighting::relative_level;
  if (text == "absolute") return Weighting::absolute_level;
  bad_value("weighting", std::string(text), "none, relative, absolute");
}

Solver solver_from_string(std::string_view text) {
  if (text == "optimal") return Solver::optimal;
  if (text == "greedy") return Solver::greedy;
  bad_value("solver", std::string(text), "optimal, greedy");
}

std::string_view to_string(ConceptMeasure measure) {
  return measure == ConceptMeasure::wu_palmer ? "wu_palmer" : "lin";
}

std::string_view to_string(SetMeasure measure) {
  switch (measure) {
    case SetMeasure::jaccard:
      return "jaccard";
    case SetMeasure::dice:
      return "dice";
    case SetMeasure::symmetric:
      return "symmetric";
    case SetMeasure::asymmetric:
      return "asymmetric";
  }
  return "symmetric";
}

std::string_view to_string(Weighting weighting) {
  switch (weighting) {
    case Weighting::none:
      return "none";
    case Weighting::relative_level:
      return "relative";
    case Weighting::absolute_level:
      return "absolute";
  }
  return "none";
}

std::string_view to_string(Solver solver) {
  return solver == Solver::optimal ? "optimal" : "greedy";
}

namespace {

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError({"bad-json", what, e.what()});
  }
}

const json& require_array(const json& document, const char* key) {
  if (!document.is_object() || !document.contains(key) ||
      !document[key].is_array()) {
    throw ValidationError(
        {"bad-structure", key,
         std::string("expected a top-level object with array field '") + key +
             "'"});
  }
  return document[key];
}

std::string get_string(const json& node, const char* key,
                       const std::string& context) {
  if (!node.is_object() || !node.contains(key) || !node[key].is_string()) {
    throw ValidationError({"bad-field", context,
                           context + " needs string field '" + key + "'"});
  }
  return node[key].get<std::string>();
}

std::string get_string_or(const json& node, const char* key,
                          const std::string& fallback,
                          const std::string& context) {
  if (!node.is_object() || !node.contains(key)) return fallback;
  if (!node[key].is_string()) {
    throw ValidationError({"bad-field", context,
                           context + " field '" + key + "' must be a string"});
  }
  return node[key].get<std::string>();
}

double get_number(const json& node, const char* key, double fallback,
                  const std::string& context) {
  if (!node.is_object() || !node.contains(key)) return fallback;
  if (!node[key].is_number()) {
    throw ValidationError({"bad-field", context,
                           context + " field '" + key + "' must be a number"});
  }
  return node[key].get<double>();
}

KeywordSelection parse_keywords(const json& node, const std::string& owner) {
  if (!node.is_object() || !node.contains("keywords") ||
      !node["keywords"].is_array()) {
    throw ValidationError({"bad-field", owner,
                           "'" + owner + "' needs array field 'keywords'"});
  }
  KeywordSelection selection{owner, {}};
  for (const json& entry : node["keywords"]) {
    if (entry.is_string()) {
      selection.items.push_back({entry.get<std::string>(), 1.0});
    } else if (entry.is_object()) {
      std::string context = "keyword of '" + owner + "'";
      selection.items.push_back(
          {get_string(entry, "concept", context),
           get_number(entry, "weight", 1.0, context)});
    } else {
      throw ValidationError(
          {"bad-field", owner,
           "keywords of '" + owner +
               "' must be concept-id strings or {concept, weight} objects"});
    }
  }
  return selection;
}

}  // namespace

std::vector<PaperRecord> parse_papers(const std::string& text) {
  json document = parse_document(text, "papers");
  std::vector<PaperRecord> papers;
  for (const json& node : require_array(document, "papers")) {
    std::string id = get_string(node, "id", "paper");
    papers.push_back({id, get_string_or(node, "title", "", "paper '" + id + "'"),
                      parse_keywords(node, id)});
  }
  return papers;
}

std::vector<ReviewerRecord> parse_reviewers(const std::string& text) {
  json document = parse_document(text, "reviewers");
  std::vector<ReviewerRecord> reviewers;
  for (const json& node : require_array(document, "reviewers")) {
    std::string id = get_string(node, "id", "reviewer");
    reviewers.push_back(
        {id, get_string_or(node, "name", "", "reviewer '" + id + "'"),
         parse_keywords(node, id)});
  }
  return reviewers;
}

std::vector<Bid> parse_bids(const std::string& text) {
  json document = parse_document(text, "bids");
  std::vector<Bid> bids;
  for (const json& node : require_array(document, "bids")) {
    std::string reviewer = get_string(node, "reviewer", "bid");
    std::string paper = get_string(node, "paper", "bid");
    std::string context = "bid " + reviewer + "/" + paper;
    double option = get_number(node, "option", 0.0, context);
    if (option != std::floor(option)) {
      throw ValidationError(
          {"bad-bid-option", context, "bid option must be an integer 1..5"});
    }
    bids.push_back(
        {reviewer, paper, bid_option_from_int(static_cast<int>(option))});
  }
  return bids;
}

std::vector<SelfEvaluation> parse_evals(const std::string& text) {
  json document = parse_document(text, "evaluations");
  std::vector<SelfEvaluation> evals;
  for (const json& node : require_array(document, "evaluations")) {
    std::string reviewer = get_string(node, "reviewer", "evaluation");
    std::string paper = get_string(node, "paper", "evaluation");
    evals.push_back({reviewer, paper,
                     expertise_level_from_string(get_string(
                         node, "level", "evaluation " + reviewer + "/" + paper))});
  }
  return evals;
}

std::vector<ConflictPair> parse_conflicts(const std::string& text) {
  json document = parse_document(text, "conflicts");
  std::vector<ConflictPair> conflicts;
  for (const json& node : require_array(document, "conflicts")) {
    conflicts.push_back({get_string(node, "reviewer", "conflict"),
                         get_string(node, "paper", "conflict")});
  }
  return conflicts;
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  json document = parse_document(text, "config");
  if (!document.is_object()) {
    throw ValidationError(
        {"bad-structure", "config", "config must be a JSON object"});
  }
  RunConfig config = std::move(base);
  if (document.contains("measure")) {
    config.measure =
        concept_measure_from_string(get_string(document, "measure", "config"));
  }
  if (document.contains("set_measure")) {
    config.set_measure =
        set_measure_from_string(get_string(document, "set_measure", "config"));
  }
  if (document.contains("weighting")) {
    config.weighting =
        weighting_from_string(get_string(document, "weighting", "config"));
  }
  if (document.contains("solver")) {
    config.solver =
        solver_from_string(get_string(document, "solver", "config"));
  }
  config.k = static_cast<int>(get_number(document, "k", config.k, "config"));
  config.capacity = static_cast<int>(
      get_number(document, "capacity", config.capacity, "config"));
  config.smoothing =
      get_number(document, "smoothing", config.smoothing, "config");
  config.seed = static_cast<std::uint64_t>(
      get_number(document, "seed", static_cast<double>(config.seed), "config"));
  if (config.k < 0) {
    throw ValidationError({"bad-k", std::to_string(config.k),
                           "reviewers per paper must be >= 0"});
  }
  if (config.capacity < 0) {
    throw ValidationError({"bad-capacity", std::to_string(config.capacity),
                           "reviewer capacity must be >= 0"});
  }
  if (config.smoothing < 0.0) {
    throw ValidationError({"bad-smoothing", std::to_string(config.smoothing),
                           "smoothing pseudo-count must be >= 0"});
  }
  if (document.contains("bid_values")) {
    const json& values = document["bid_values"];
    if (!values.is_object()) {
      throw ValidationError({"bad-field", "bid_values",
                             "bid_values must be an object of option names"});
    }
    config.bid_values.expert_eager = get_number(
        values, "expert_eager", config.bid_values.expert_eager, "bid_values");
    config.bid_values.expert =
        get_number(values, "expert", config.bid_values.expert, "bid_values");
    config.bid_values.capable =
        get_number(values, "capable", config.bid_values.capable, "bid_values");
    config.bid_values.outside =
        get_number(values, "outside", config.bid_values.outside, "bid_values");
    config.bid_values.validate();
  }
  if (document.contains("augmentation")) {
    const json& aug = document["augmentation"];
    if (!aug.is_object()) {
      throw ValidationError({"bad-field", "augmentation",
                             "augmentation must be an object"});
    }
    AugmentationConfig& out = config.augmentation;
    out.min_selectable_depth = static_cast<int>(get_number(
        aug, "min_selectable_depth", out.min_selectable_depth, "augmentation"));
    if (aug.is_object() && aug.contains("band")) {
      const json& band = aug["band"];
      if (!band.is_array() || band.size() != 2 || !band[0].is_number() ||
          !band[1].is_number()) {
        throw ValidationError({"bad-band", "augmentation",
                               "band must be a [min, max] number pair"});
      }
      out.band_min = band[0].get<int>();
      out.band_max = band[1].get<int>();
    }
    if (aug.is_object() && aug.contains("expert_bid_options")) {
      const json& options = aug["expert_bid_options"];
      if (!options.is_array()) {
        throw ValidationError({"bad-field", "expert_bid_options",
                               "expert_bid_options must be an array of 1..5"});
      }
      out.expert_bid_options.clear();
      for (const json& value : options) {
        if (!value.is_number_integer()) {
          throw ValidationError(
              {"bad-field", "expert_bid_options",
               "expert_bid_options must be an array of 1..5"});
        }
        out.expert_bid_options.push_back(
            bid_option_from_int(value.get<int>()));
      }
    }
    out.high_competence_threshold =
        get_number(aug, "high_competence_threshold",
                   out.high_competence_threshold, "augmentation");
  }
  return config;
}

namespace {

ordered_json keywords_to_json(const KeywordSelection& selection) {
  ordered_json keywords = ordered_json::array();
  for (const auto& item : selection.items) {
    keywords.push_back({{"concept", item.concept_id}, {"weight", item.weight}});
  }
  return keywords;
}

std::string dump(const ordered_json& document) {
  return document.dump(2) + "\n";
}

}  // namespace

std::string serialize_papers(const std::vector<PaperRecord>& papers) {
  ordered_json list = ordered_json::array();
  for (const auto& paper : papers) {
    list.push_back({{"id", paper.id},
                    {"title", paper.title},
                    {"keywords", keywords_to_json(paper.keywords)}});
  }
  return dump({{"papers", list}});
}

std::string serialize_reviewers(const std::vector<ReviewerRecord>& reviewers) {
  ordered_json list = ordered_json::array();
  for (const auto& reviewer : reviewers) {
    list.push_back({{"id", reviewer.id},
                    {"name", reviewer.name},
                    {"keywords", keywords_to_json(reviewer.keywords)}});
  }
  return dump({{"reviewers", list}});
}

std::string serialize_bids(const std::vector<Bid>& bids) {
  ordered_json list = ordered_json::array();
  for (const auto& bid : bids) {
    list.push_back({{"reviewer", bid.reviewer},
                    {"paper", bid.paper},
                    {"option", static_cast<int>(bid.option)}});
  }
  return dump({{"bids", list}});
}

std::string serialize_evals(const std::vector<SelfEvaluation>& evals) {
  ordered_json list = ordered_json::array();
  for (const auto& eval : evals) {
    list.push_back({{"reviewer", eval.reviewer},
                    {"paper", eval.paper},
                    {"level", std::string(to_string(eval.level))}});
  }
  return dump({{"evaluations", list}});
}

std::string serialize_conflicts(const std::vector<ConflictPair>& conflicts) {
  ordered_json list = ordered_json::array();
  for (const auto& conflict : conflicts) {
    list.push_back({{"reviewer", conflict.reviewer},
                    {"paper", conflict.paper}});
  }
  return dump({{"conflicts", list}});
}

std::string serialize_config(const RunConfig& config) {
  ordered_json options = ordered_json::array();
  for (BidOption option : config.augmentation.expert_bid_options) {
    options.push_back(static_cast<int>(option));
  }
  return dump(
      {{"measure", std::string(to_string(config.measure))},
       {"set_measure", std::string(to_string(config.set_measure))},
       {"weighting", std::string(to_string(config.weighting))},
       {"solver", std::string(to_string(config.solver))},
       {"k", config.k},
       {"capacity", config.capacity},
       {"smoothing", config.smoothing},
       {"seed", config.seed},
       {"bid_values",
        {{"expert_eager", config.bid_values.expert_eager},
         {"expert", config.bid_values.expert},
         {"capable", config.bid_values.capable},
         {"outside", config.bid_values.outside}}},
       {"augmentation",
        {{"min_selectable_depth", config.augmentation.min_selectable_depth},
         {"band",
          {config.augmentation.band_min, config.augmentation.band_max}},
         {"expert_bid_options", options},
         {"high_competence_threshold",
          config.augmentation.high_competence_threshold}}}});
}

namespace {

void check_selection_issues(const KeywordSelection& selection,
                            const Taxonomy& taxonomy,
                            std::vector<Issue>& issues) {
  if (selection.empty()) {
    issues.push_back({"empty-selection", selection.owner,
                      "'" + selection.owner + "' has no keywords"});
    return;
  }
  std::set<std::string> seen;
  for (const auto& item : selection.items) {
    if (!taxonomy.contains(item.concept_id)) {
      issues.push_back({"unknown-concept", item.concept_id,
                        "'" + selection.owner + "' selects unknown concept '" +
                            item.concept_id + "'"});
    }
    if (!seen.insert(item.concept_id).second) {
      issues.push_back({"duplicate-keyword", item.concept_id,
                        "'" + selection.owner + "' selects '" + item.concept_id +
                            "' more than once"});
    }
    if (!(item.weight >= 0.0 && item.weight <= 1.0)) {
      issues.push_back({"bad-weight", item.concept_id,
                        "weight of '" + item.concept_id + "' on '" +
                            selection.owner + "' must lie in [0,1]"});
    }
  }
}

}  // namespace

void validate_dataset(const ConferenceDataset& dataset) {
  std::vector<Issue> issues;

  if (dataset.papers.empty()) {
    issues.push_back({"no-papers", "", "dataset contains no papers"});
  }
  if (dataset.reviewers.empty()) {
    issues.push_back({"no-reviewers", "", "dataset contains no reviewers"});
  }

  std::set<std::string> paper_ids;
  for (const auto& paper : dataset.papers) {
    if (paper.id.empty()) {
      issues.push_back({"empty-id", "", "paper with empty id"});
      continue;
    }
    if (!paper_ids.insert(paper.id).second) {
      issues.push_back({"duplicate-id", paper.id,
                        "paper '" + paper.id + "' appears more than once"});
    }
    check_selection_issues(paper.keywords, dataset.taxonomy, issues);
  }
  std::set<std::string> reviewer_ids;
  for (const auto& reviewer : dataset.reviewers) {
    if (reviewer.id.empty()) {
      issues.push_back({"empty-id", "", "reviewer with empty id"});
      continue;
    }
    if (!reviewer_ids.insert(reviewer.id).second) {
      issues.push_back(
          {"duplicate-id", reviewer.id,
           "reviewer '" + reviewer.id + "' appears more than once"});
    }
    check_selection_issues(reviewer.keywords, dataset.taxonomy, issues);
  }

  auto check_pair = [&](const std::string& reviewer, const std::string& paper,
                        const char* what) {
    if (!reviewer_ids.count(reviewer)) {
      issues.push_back({"unknown-reviewer", reviewer,
                        std::string(what) + " references unknown reviewer '" +
                            reviewer + "'"});
    }
    if (!paper_ids.count(paper)) {
      issues.push_back({"unknown-paper", paper,
                        std::string(what) + " references unknown paper '" +
                            paper + "'"});
    }
  };

  std::set<std::pair<std::string, std::string>> bid_pairs;
  for (const auto& bid : dataset.bids) {
    check_pair(bid.reviewer, bid.paper, "bid");
    if (!bid_pairs.emplace(bid.reviewer, bid.paper).second) {
      issues.push_back({"duplicate-bid", bid.reviewer + "/" + bid.paper,
                        "reviewer '" + bid.reviewer +
                            "' bids more than once on paper '" + bid.paper +
                            "'"});
    }
  }
  std::set<std::pair<std::string, std::string>> eval_pairs;
  for (const auto& eval : dataset.evals) {
    check_pair(eval.reviewer, eval.paper, "evaluation");
    if (!eval_pairs.emplace(eval.reviewer, eval.paper).second) {
      issues.push_back({"duplicate-eval", eval.reviewer + "/" + eval.paper,
                        "reviewer '" + eval.reviewer +
                            "' evaluates paper '" + eval.paper +
                            "' more than once"});
    }
  }
  for (const auto& conflict : dataset.conflicts) {
    check_pair(conflict.reviewer, conflict.paper, "conflict");
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw ValidationError({"missing-file", path.string(),
                           "cannot open '" + path.string() + "' for reading"});
  }
  std::ostringstream content;
  content << stream.rdbuf();
  return std::move(content).str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream stream(path, std::ios::binary);
  stream.write(content.data(),
               static_cast<std::streamsize>(content.size()));
  if (!stream) {
    throw ValidationError({"write-failed", path.string(),
                           "cannot write '" + path.string() + "'"});
  }
}

}  // namespace taxmatch
