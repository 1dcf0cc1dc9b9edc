#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "taxmatch/commands.hpp"
#include "taxmatch/errors.hpp"

namespace {

struct CliOptions {
  std::string taxonomy;
  std::string papers;
  std::string reviewers;
  std::string bids;
  std::string evals;
  std::string conflicts;
  std::string config;
  std::string assignment;
  std::string out_dir = ".";
  std::string measure;
  std::string set_measure;
  std::string weighting;
  std::string solver;
  int k = 0;
  int capacity = 0;
};

void add_common_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--taxonomy", opt.taxonomy, "concept tree JSON file")
      ->required();
  sub->add_option("--papers", opt.papers, "papers JSON file")->required();
  sub->add_option("--reviewers", opt.reviewers, "reviewers JSON file")
      ->required();
  sub->add_option("--bids", opt.bids, "bids JSON file");
  sub->add_option("--evals", opt.evals, "self-evaluations JSON file");
  sub->add_option("--conflicts", opt.conflicts, "conflicts JSON file");
  sub->add_option("--config", opt.config, "run configuration JSON file");
  sub->add_option("--measure", opt.measure, "wu_palmer or lin");
  sub->add_option("--set-measure", opt.set_measure,
                  "jaccard, dice, symmetric or asymmetric");
  sub->add_option("--weighting", opt.weighting, "none, relative or absolute");
  sub->add_option("--k", opt.k, "reviewers per paper");
  sub->add_option("--capacity", opt.capacity,
                  "papers per reviewer (0 derives it)");
  sub->add_option("--solver", opt.solver, "optimal or greedy");
  sub->add_option("--out-dir", opt.out_dir, "report directory");
}

taxmatch::ConferenceDataset load_dataset(const CliOptions& opt) {
  taxmatch::ConferenceDataset dataset{
      taxmatch::Taxonomy::from_json_text(
          taxmatch::read_text_file(opt.taxonomy)),
      {}, {}, {}, {}, {}};
  dataset.papers = taxmatch::parse_papers(taxmatch::read_text_file(opt.papers));
  dataset.reviewers =
      taxmatch::parse_reviewers(taxmatch::read_text_file(opt.reviewers));
  if (!opt.bids.empty()) {
    dataset.bids = taxmatch::parse_bids(taxmatch::read_text_file(opt.bids));
  }
  if (!opt.evals.empty()) {
    dataset.evals = taxmatch::parse_evals(taxmatch::read_text_file(opt.evals));
  }
  if (!opt.conflicts.empty()) {
    dataset.conflicts =
        taxmatch::parse_conflicts(taxmatch::read_text_file(opt.conflicts));
  }
  return dataset;
}

taxmatch::RunConfig load_config(const CLI::App* sub, const CliOptions& opt) {
  taxmatch::RunConfig config;
  if (!opt.config.empty()) {
    config = taxmatch::parse_config(taxmatch::read_text_file(opt.config),
                                    config);
  }
  if (sub->count("--measure")) {
    config.measure = taxmatch::concept_measure_from_string(opt.measure);
  }
  if (sub->count("--set-measure")) {
    config.set_measure = taxmatch::set_measure_from_string(opt.set_measure);
  }
  if (sub->count("--weighting")) {
    config.weighting = taxmatch::weighting_from_string(opt.weighting);
  }
  if (sub->count("--solver")) {
    config.solver = taxmatch::solver_from_string(opt.solver);
  }
  if (sub->count("--k")) config.k = opt.k;
  if (sub->count("--capacity")) config.capacity = opt.capacity;
  return config;
}

void report_errors(const std::vector<taxmatch::Issue>& issues) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& issue : issues) {
    list.push_back({{"kind", issue.kind},
                    {"subject", issue.subject},
                    {"message", issue.message}});
  }
  std::cerr << nlohmann::ordered_json{{"errors", list}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taxonomy-based matching of reviewers to papers"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* similarity = app.add_subcommand(
      "similarity", "write the similarity and provenance matrices");
  add_common_options(similarity, opt);
  CLI::App* assign =
      app.add_subcommand("assign", "compute a capacity-constrained assignment");
  add_common_options(assign, opt);
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score an assignment against reviewer self-evaluations");
  add_common_options(evaluate, opt);
  evaluate->add_option("--assignment", opt.assignment, "assignment CSV file")
      ->required();
  CLI::App* augment = app.add_subcommand(
      "augment", "apply the keyword augmentation rules to reviewers");
  add_common_options(augment, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_errors({{"bad-arguments", e.get_name(), e.what()}});
    return 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    taxmatch::ConferenceDataset dataset = load_dataset(opt);
    taxmatch::RunConfig config = load_config(sub, opt);
    std::vector<std::filesystem::path> written;
    if (sub == similarity) {
      written = taxmatch::cmd_similarity(dataset, config, opt.out_dir);
    } else if (sub == assign) {
      written = taxmatch::cmd_assign(dataset, config, opt.out_dir);
    } else if (sub == evaluate) {
      written =
          taxmatch::cmd_evaluate(dataset, opt.assignment, config, opt.out_dir);
    } else {
      written = taxmatch::cmd_augment(dataset, config, opt.out_dir);
    }
    for (const auto& path : written) std::cout << path.string() << "\n";
    return 0;
  } catch (const taxmatch::ValidationError& e) {
    report_errors(e.issues());
    return 2;
  } catch (const taxmatch::InfeasibleError& e) {
    report_errors({{"infeasible", e.constraint(), e.what()}});
    return 3;
  }
}
