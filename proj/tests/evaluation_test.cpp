#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taxmatch/errors.hpp"
#include "taxmatch/evaluation.hpp"
#include "taxmatch/matching.hpp"

using taxmatch::AccuracyReport;
using taxmatch::Assignment;
using taxmatch::ExpertiseLevel;
using taxmatch::Provenance;
using taxmatch::SelfEvaluation;
using taxmatch::SimilarityMatrix;
using taxmatch::ValidationError;

namespace {

// One paper, n reviewers, every reviewer assigned and evaluated.
struct SinglePaper {
  SimilarityMatrix matrix;
  Assignment assignment;
  std::vector<SelfEvaluation> evals;
};

SinglePaper single_paper(
    const std::vector<std::pair<ExpertiseLevel, double>>& cells) {
  std::vector<std::string> reviewers;
  for (std::size_t i = 1; i <= cells.size(); ++i) {
    reviewers.push_back("r" + std::to_string(i));
  }
  SinglePaper s{SimilarityMatrix({"p1"}, reviewers),
                {{}, static_cast<int>(cells.size()), 1},
                {}};
  for (std::size_t j = 0; j < cells.size(); ++j) {
    s.matrix.at(0, j).value = cells[j].second;
    s.assignment.edges.push_back({"p1", reviewers[j]});
    s.evals.push_back({reviewers[j], "p1", cells[j].first});
  }
  return s;
}

// Exhaustive reference: the largest (then High-richest) subset in which
// every lower level's value stays strictly below every higher level's and
// Medium/High factors are nonzero.
std::pair<int, int> best_subset_exhaustive(
    const std::vector<std::pair<ExpertiseLevel, double>>& cells) {
  int n = static_cast<int>(cells.size());
  std::pair<int, int> best{0, 0};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool valid = true;
    int highs = 0;
    for (int i = 0; i < n && valid; ++i) {
      if (!(mask >> i & 1u)) continue;
      const auto& [level_i, value_i] = cells[i];
      if (level_i != ExpertiseLevel::low && value_i == 0.0) valid = false;
      if (level_i == ExpertiseLevel::high) ++highs;
      for (int j = 0; j < n && valid; ++j) {
        if (i == j || !(mask >> j & 1u)) continue;
        if (cells[i].first < cells[j].first && !(value_i < cells[j].second)) {
          valid = false;
        }
      }
    }
    if (!valid) continue;
    best = std::max(best, std::make_pair(std::popcount(mask), highs));
  }
  return best;
}

int chosen_highs(const SinglePaper& s, const AccuracyReport& report) {
  std::set<std::string> wrong;
  for (const auto& cell : report.incorrect) wrong.insert(cell.reviewer);
  int highs = 0;
  for (const auto& eval : s.evals) {
    if (eval.level == ExpertiseLevel::high && !wrong.count(eval.reviewer)) {
      ++highs;
    }
  }
  return highs;
}

}  // namespace

TEST_CASE("expertise levels round-trip through text") {
  CHECK(taxmatch::to_string(ExpertiseLevel::low) == "low");
  CHECK(taxmatch::expertise_level_from_string("high") ==
        ExpertiseLevel::high);
  CHECK(taxmatch::expertise_level_from_string("medium") ==
        ExpertiseLevel::medium);
  CHECK_THROWS_AS(taxmatch::expertise_level_from_string("guru"),
                  ValidationError);
}

TEST_CASE("accuracy on the hand examples") {
  SUBCASE("a fully consistent paper") {
    auto s = single_paper({{ExpertiseLevel::high, 0.8},
                           {ExpertiseLevel::medium, 0.6},
                           {ExpertiseLevel::low, 0.3}});
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    REQUIRE(report.papers.size() == 1);
    CHECK(report.papers[0].correct == 3);
    CHECK(report.papers[0].total == 3);
    CHECK(report.incorrect.empty());
    CHECK(report.aggregate_fraction == 1.0);
  }

  SUBCASE("an inverted pair keeps the High factor") {
    // {L 0.2, H 0.4} and {L 0.2, M 0.6} are both maximal; the High-richer
    // subset wins, so the Medium cell is the incorrect one.
    auto s = single_paper({{ExpertiseLevel::low, 0.2},
                           {ExpertiseLevel::medium, 0.6},
                           {ExpertiseLevel::high, 0.4}});
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    CHECK(report.papers[0].correct == 2);
    CHECK(report.papers[0].total == 3);
    REQUIRE(report.incorrect.size() == 1);
    CHECK(report.incorrect[0].reviewer == "r2");
    CHECK(report.incorrect[0].level == ExpertiseLevel::medium);
    CHECK(report.incorrect[0].value == 0.6);
    CHECK(report.incorrect[0].tag == "out of order with the accepted factors");
  }

  SUBCASE("an expert the system never saw") {
    auto s = single_paper({{ExpertiseLevel::high, 0.0}});
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    CHECK(report.papers[0].correct == 0);
    CHECK(report.papers[0].total == 1);
    REQUIRE(report.incorrect.size() == 1);
    CHECK(report.incorrect[0].tag ==
          "zero factor for a Medium/High evaluation");
  }

  SUBCASE("a zero Low factor is fine") {
    auto s = single_paper({{ExpertiseLevel::low, 0.0},
                           {ExpertiseLevel::high, 0.4}});
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    CHECK(report.papers[0].correct == 2);
  }

  SUBCASE("equal values across levels cannot both be correct") {
    auto s = single_paper({{ExpertiseLevel::low, 0.5},
                           {ExpertiseLevel::high, 0.5}});
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    CHECK(report.papers[0].correct == 1);
  }
}

TEST_CASE("accuracy aggregates per paper in row order") {
  SimilarityMatrix m({"p1", "p2"}, {"r1", "r2"});
  m.at(0, 0).value = 0.8;
  m.at(0, 1).value = 0.2;
  m.at(1, 0).value = 0.1;
  m.at(1, 1).value = 0.9;
  Assignment a{{{"p1", "r1"}, {"p1", "r2"}, {"p2", "r1"}, {"p2", "r2"}}, 2, 2};
  std::vector<SelfEvaluation> evals = {
      {"r2", "p2", ExpertiseLevel::high},    // consistent with r1 below
      {"r1", "p2", ExpertiseLevel::low},
      {"r1", "p1", ExpertiseLevel::low},     // inverted against r2
      {"r2", "p1", ExpertiseLevel::high},
  };
  AccuracyReport report = score_accuracy(m, a, evals);
  REQUIRE(report.papers.size() == 2);
  CHECK(report.papers[0].paper == "p1");
  CHECK(report.papers[0].correct == 1);
  CHECK(report.papers[1].paper == "p2");
  CHECK(report.papers[1].correct == 2);
  CHECK(report.correct_total == 3);
  CHECK(report.evaluated_total == 4);
  CHECK(report.aggregate_fraction == 0.75);
  CHECK(report.histogram.bin_count() == 10);

  std::vector<SelfEvaluation> none;
  AccuracyReport empty = score_accuracy(m, a, none);
  CHECK(empty.papers.empty());
  CHECK(empty.evaluated_total == 0);
  CHECK(empty.aggregate_fraction == 0.0);

  std::vector<SelfEvaluation> stray = {{"r1", "p1", ExpertiseLevel::low}};
  Assignment partial{{{"p1", "r2"}}, 1, 1};
  CHECK_THROWS_AS(score_accuracy(m, partial, stray), ValidationError);
}

TEST_CASE("accuracy matches exhaustive subset search") {
  std::mt19937 rng(112233);
  for (int round = 0; round < 1000; ++round) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<ExpertiseLevel, double>> cells;
    for (int i = 0; i < n; ++i) {
      auto level = static_cast<ExpertiseLevel>(rng() % 3);
      // Coarse grid with repeats and zeros to stress ties and
      // admissibility.
      double value = static_cast<double>(rng() % 9) / 8.0;
      cells.push_back({level, value});
    }
    auto s = single_paper(cells);
    AccuracyReport report = score_accuracy(s.matrix, s.assignment, s.evals);
    auto [best_size, best_highs] = best_subset_exhaustive(cells);
    REQUIRE(report.papers[0].correct == best_size);
    REQUIRE(chosen_highs(s, report) == best_highs);
  }
}

TEST_CASE("accuracy is invariant under monotone zero-preserving rescaling") {
  std::mt19937 rng(445566);
  auto transforms = std::vector<double (*)(double)>{
      [](double x) { return x / 2.0; },
      [](double x) { return x * x; },
      [](double x) { return x / (1.0 + x); },
  };
  for (int round = 0; round < 200; ++round) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<ExpertiseLevel, double>> cells;
    for (int i = 0; i < n; ++i) {
      cells.push_back({static_cast<ExpertiseLevel>(rng() % 3),
                       static_cast<double>(rng() % 9) / 8.0});
    }
    auto s = single_paper(cells);
    AccuracyReport base = score_accuracy(s.matrix, s.assignment, s.evals);

    for (auto f : transforms) {
      auto scaled = cells;
      for (auto& [level, value] : scaled) value = f(value);
      auto s2 = single_paper(scaled);
      AccuracyReport report =
          score_accuracy(s2.matrix, s2.assignment, s2.evals);
      REQUIRE(report.papers[0].correct == base.papers[0].correct);
      REQUIRE(chosen_highs(s2, report) == chosen_highs(s, base));
    }
  }
}

TEST_CASE("histogram bins by value and level") {
  auto s = single_paper({{ExpertiseLevel::high, 0.85},
                         {ExpertiseLevel::high, 1.0},
                         {ExpertiseLevel::medium, 0.0},
                         {ExpertiseLevel::low, 0.05},
                         {ExpertiseLevel::low, 0.85}});
  auto h = taxmatch::histogram(s.matrix, s.evals);
  REQUIRE(h.bin_count() == 10);
  CHECK(h.high[8] == 1);   // 0.85 lands in [0.8, 0.9)
  CHECK(h.high[9] == 1);   // exactly 1.0 joins the final bin
  CHECK(h.medium[0] == 1);
  CHECK(h.low[0] == 1);
  CHECK(h.low[8] == 1);
  int total = 0;
  for (std::size_t b = 0; b < h.bin_count(); ++b) {
    total += h.low[b] + h.medium[b] + h.high[b];
  }
  CHECK(total == 5);

  auto quarters = taxmatch::histogram(s.matrix, s.evals, 0.25);
  REQUIRE(quarters.bin_count() == 4);
  CHECK(quarters.high[3] == 2);  // 0.85 and 1.0 both in [0.75, 1.0]

  CHECK_THROWS_AS(taxmatch::histogram(s.matrix, s.evals, 0.3),
                  ValidationError);
  CHECK_THROWS_AS(taxmatch::histogram(s.matrix, s.evals, 0.0),
                  ValidationError);
  CHECK_THROWS_AS(taxmatch::histogram(s.matrix, s.evals, -0.1),
                  ValidationError);
}

TEST_CASE("random assignments are computed zero-valued cells only") {
  SimilarityMatrix m({"p1"}, {"r1", "r2", "r3", "r4"});
  m.at(0, 0).value = 0.0;  // computed zero: random
  m.at(0, 1).value = 0.4;  // computed nonzero
  m.at(0, 2) = {0.0, Provenance::bid_override};  // explicit "outside" bid
  m.at(0, 3).value = 0.0;  // random again, but unassigned below
  Assignment a{{{"p1", "r1"}, {"p1", "r2"}, {"p1", "r3"}}, 3, 1};
  CHECK(count_random(m, a) == 1);

  Assignment empty{{}, 0, 0};
  CHECK(count_random(m, empty) == 0);
}
