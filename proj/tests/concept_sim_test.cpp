#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "taxmatch/concept_sim.hpp"
#include "taxmatch/errors.hpp"
#include "taxmatch/taxonomy.hpp"
#include "test_util.hpp"

using taxmatch::ConceptMeasure;
using taxmatch::ConceptSimilarity;
using taxmatch::ConceptSimilarityConfig;
using taxmatch::KeywordSelection;
using taxmatch::LcaResult;
using taxmatch::SelectedKeyword;
using taxmatch::Taxonomy;
using taxmatch::ValidationError;
using taxmatch::Weighting;

TEST_CASE("structural similarity on the hand examples") {
  Taxonomy t = test_util::example_tree();

  // Siblings one level below a depth-1 ancestor: 2*1 / (2*1 + 1 + 1).
  CHECK(taxmatch::wu_palmer(t.lca("A1", "A2")) == 0.5);
  // Only common ancestor is the root.
  CHECK(taxmatch::wu_palmer(t.lca("A1", "B1")) == 0.0);
  // Parent and child: 2*1 / (2*1 + 0 + 1).
  CHECK(taxmatch::wu_palmer(t.lca("A", "A1")) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Identical concepts, including the root's 0/0 corner.
  CHECK(taxmatch::wu_palmer(t.lca("A1", "A1")) == 1.0);
  CHECK(taxmatch::wu_palmer(t.lca("root", "root")) == 1.0);
  CHECK(taxmatch::wu_palmer(t.lca("root", "A1")) == 0.0);
}

TEST_CASE("structural similarity is symmetric and bounded on random trees") {
  std::mt19937 rng(4242);
  for (int round = 0; round < 6; ++round) {
    int nodes = 2 + static_cast<int>(rng() % 60);
    Taxonomy t =
        Taxonomy::from_node_list(test_util::random_tree_specs(rng, nodes));
    for (int i = 0; i < nodes; ++i) {
      for (int j = i; j < nodes; ++j) {
        std::string a = "n" + std::to_string(i);
        std::string b = "n" + std::to_string(j);
        double forward = taxmatch::wu_palmer(t.lca(a, b));
        double backward = taxmatch::wu_palmer(t.lca(b, a));
        REQUIRE(forward == backward);
        REQUIRE(forward >= 0.0);
        REQUIRE(forward <= 1.0);
        if (i == j) REQUIRE(forward == 1.0);
      }
    }
  }
}

TEST_CASE("information-content similarity on a counted example") {
  Taxonomy t = test_util::example_tree();
  // Counts A1:1, A2:1, B1:2 give p(A1)=p(A2)=0.25, p(A)=0.5, p(B1)=0.5.
  std::vector<KeywordSelection> selections = {
      {"p1", {{"A1"}, {"B1"}}},
      {"p2", {{"A2"}, {"B1"}}},
  };
  auto table = taxmatch::estimate_probabilities(t, selections, 0.0);
  REQUIRE(table.probability("A") == doctest::Approx(0.5).epsilon(1e-12));

  // 2*log(0.5) / (log(0.25) + log(0.25)) = 0.5.
  CHECK(taxmatch::lin(table, "A1", "A2", t.lca("A1", "A2")) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Identical concepts score 1 no matter the probability.
  CHECK(taxmatch::lin(table, "A1", "A1", t.lca("A1", "A1")) == 1.0);
  CHECK(taxmatch::lin(table, "root", "root", t.lca("root", "root")) == 1.0);
  // Common ancestor is the root, log p(root) = 0.
  CHECK(taxmatch::lin(table, "A1", "B1", t.lca("A1", "B1")) == 0.0);
}

TEST_CASE("information-content similarity pins its degenerate cases") {
  Taxonomy t = test_util::example_tree();
  // Only B1 is ever selected: p(B1)=p(B)=p(root)=1, the A side gets 0.
  std::vector<KeywordSelection> selections = {{"p1", {{"B1"}}}};
  auto table = taxmatch::estimate_probabilities(t, selections, 0.0);
  REQUIRE(table.probability("B1") == 1.0);
  REQUIRE(table.probability("A1") == 0.0);

  // Distinct zero-information concepts: denominator would be 0/0.
  CHECK(taxmatch::lin(table, "B1", "B", t.lca("B1", "B")) == 0.0);
  // A concept never encountered has no information to share.
  CHECK(taxmatch::lin(table, "A1", "B1", t.lca("A1", "B1")) == 0.0);
  CHECK(taxmatch::lin(table, "A1", "A2", t.lca("A1", "A2")) == 0.0);
}

TEST_CASE("information-content similarity is symmetric and bounded") {
  std::mt19937 rng(777);
  for (int round = 0; round < 5; ++round) {
    int nodes = 3 + static_cast<int>(rng() % 40);
    Taxonomy t =
        Taxonomy::from_node_list(test_util::random_tree_specs(rng, nodes));

    std::vector<KeywordSelection> selections;
    for (int s = 0; s < 5; ++s) {
      KeywordSelection sel{"owner" + std::to_string(s), {}};
      for (int k = 0; k < 3; ++k) {
        std::string id = "n" + std::to_string(rng() % nodes);
        if (!sel.contains(id)) sel.items.push_back({id, 1.0});
      }
      selections.push_back(std::move(sel));
    }
    auto table = taxmatch::estimate_probabilities(t, selections, 1.0);

    for (int i = 0; i < nodes; ++i) {
      for (int j = i; j < nodes; ++j) {
        std::string a = "n" + std::to_string(i);
        std::string b = "n" + std::to_string(j);
        double forward = taxmatch::lin(table, a, b, t.lca(a, b));
        double backward = taxmatch::lin(table, b, a, t.lca(b, a));
        REQUIRE(forward == backward);
        REQUIRE(forward >= 0.0);
        REQUIRE(forward <= 1.0 + 1e-12);
        if (i == j) REQUIRE(forward == 1.0);
      }
    }
  }
}

TEST_CASE("competence-level modifiers follow their contracts") {
  // Reviewer below the paper's level: scale by 1 - (0.8 - 0.5).
  CHECK(taxmatch::weighted_relative(0.5, 0.8, 0.5) ==
        doctest::Approx(0.35).epsilon(1e-12));
  // Reviewer at or above the paper's level: unchanged.
  CHECK(taxmatch::weighted_relative(0.5, 0.5, 0.8) == 0.5);
  CHECK(taxmatch::weighted_relative(0.5, 0.6, 0.6) == 0.5);
  // Absolute competence always scales.
  CHECK(taxmatch::weighted_absolute(0.5, 0.5) == 0.25);
  CHECK(taxmatch::weighted_absolute(0.7, 1.0) == 0.7);
  CHECK(taxmatch::weighted_absolute(0.7, 0.0) == 0.0);

  // Sweep a 0.05 grid: results stay in range and never exceed the raw
  // similarity, and the branch condition is exactly w_r >= w_p.
  for (int s = 0; s <= 20; ++s) {
    for (int p = 0; p <= 20; ++p) {
      for (int r = 0; r <= 20; ++r) {
        double sim = s * 0.05;
        double wp = p * 0.05;
        double wr = r * 0.05;
        double rel = taxmatch::weighted_relative(sim, wp, wr);
        double abs = taxmatch::weighted_absolute(sim, wr);
        REQUIRE(rel >= -1e-12);
        REQUIRE(rel <= sim + 1e-12);
        REQUIRE(abs >= 0.0);
        REQUIRE(abs <= sim + 1e-12);
        if (wr >= wp) {
          REQUIRE(rel == sim);
        } else {
          REQUIRE(rel == doctest::Approx(sim * (1.0 - (wp - wr)))
                             .epsilon(1e-12));
        }
        REQUIRE(abs == doctest::Approx(sim * wr).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bound similarity object dispatches measure and weighting") {
  Taxonomy t = test_util::example_tree();
  std::vector<KeywordSelection> selections = {
      {"p1", {{"A1"}, {"B1"}}},
      {"p2", {{"A2"}, {"B1"}}},
  };
  auto table = taxmatch::estimate_probabilities(t, selections, 0.0);

  ConceptSimilarity structural(t, {ConceptMeasure::wu_palmer,
                                   Weighting::none});
  CHECK(structural.between("A1", "A2") == 0.5);

  ConceptSimilarity info(t, {ConceptMeasure::lin, Weighting::none}, &table);
  CHECK(info.between("A1", "A2") == doctest::Approx(0.5).epsilon(1e-12));

  // The information-content measure refuses to run without a table.
  CHECK_THROWS_AS(
      ConceptSimilarity(t, {ConceptMeasure::lin, Weighting::none}),
      ValidationError);

  // Roles are fixed: first argument is the paper's keyword. An eager
  // reviewer (0.8 vs the paper's 0.5) keeps the full similarity; the
  // reverse ordering is penalized.
  ConceptSimilarity relative(t, {ConceptMeasure::wu_palmer,
                                 Weighting::relative_level});
  SelectedKeyword low{"A1", 0.5};
  SelectedKeyword high{"A1", 0.8};
  CHECK(relative.weighted(low, high) == 1.0);
  CHECK(relative.weighted(high, low) == doctest::Approx(0.7).epsilon(1e-12));

  ConceptSimilarity absolute(t, {ConceptMeasure::wu_palmer,
                                 Weighting::absolute_level});
  CHECK(absolute.weighted(high, low) == 0.5);   // 1.0 * reviewer 0.5
  CHECK(absolute.weighted(low, high) == 0.8);   // paper weight ignored

  ConceptSimilarity none(t, {ConceptMeasure::wu_palmer, Weighting::none});
  CHECK(none.weighted(high, low) == 1.0);  // weights ignored entirely
}
