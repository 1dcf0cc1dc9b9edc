#include "taxmatch/set_sim.hpp"

#include <algorithm>

#include "taxmatch/errors.hpp"

namespace taxmatch {

namespace {

void require_non_empty(const KeywordSelection& selection) {
  if (selection.empty()) {
    throw ValidationError({"empty-selection", selection.owner,
                           "'" + selection.owner +
                               "' has no keywords; an undescribed object "
                               "cannot be matched"});
  }
}

std::size_t intersection_size(const KeywordSelection& a,
                              const KeywordSelection& b) {
  std::size_t count = 0;
  for (const auto& item : a.items) {
    if (b.contains(item.concept_id)) ++count;
  }
  return count;
}

}  // namespace

double jaccard(const KeywordSelection& paper_kws,
               const KeywordSelection& reviewer_kws) {
  require_non_empty(paper_kws);
  require_non_empty(reviewer_kws);
  double inter = static_cast<double>(intersection_size(paper_kws, reviewer_kws));
  double uni =
      static_cast<double>(paper_kws.size() + reviewer_kws.size()) - inter;
  return inter / uni;
}

double dice(const KeywordSelection& paper_kws,
            const KeywordSelection& reviewer_kws) {
  require_non_empty(paper_kws);
  require_non_empty(reviewer_kws);
  double inter = static_cast<double>(intersection_size(paper_kws, reviewer_kws));
  return 2.0 * inter /
         static_cast<double>(paper_kws.size() + reviewer_kws.size());
}

double semantic_commonality(const KeywordSelection& from,
                            const KeywordSelection& to,
                            const PairSimilarity& sim) {
  require_non_empty(from);
  require_non_empty(to);
  double total = 0.0;
  for (const auto& kw : from.items) {
    double best = 0.0;
    for (const auto& other : to.items) {
      best = std::max(best, sim(kw, other));
    }
    total += best;
  }
  return total;
}

double symmetric_sf(const KeywordSelection& paper_kws,
                    const KeywordSelection& reviewer_kws,
                    const PairSimilarity& sim) {
  require_non_empty(paper_kws);
  require_non_empty(reviewer_kws);
  double forward = 0.0;
  for (const auto& paper_kw : paper_kws.items) {
    double best = 0.0;
    for (const auto& reviewer_kw : reviewer_kws.items) {
      best = std::max(best, sim(paper_kw, reviewer_kw));
    }
    forward += best;
  }
  double reverse = 0.0;
  for (const auto& reviewer_kw : reviewer_kws.items) {
    double best = 0.0;
    for (const auto& paper_kw : paper_kws.items) {
      best = std::max(best, sim(paper_kw, reviewer_kw));
    }
    reverse += best;
  }
  return (forward + reverse) /
         static_cast<double>(paper_kws.size() + reviewer_kws.size());
}

double asymmetric_sf(const KeywordSelection& paper_kws,
                     const KeywordSelection& reviewer_kws,
                     const PairSimilarity& sim) {
  return semantic_commonality(paper_kws, reviewer_kws, sim) /
         static_cast<double>(paper_kws.size());
}

double similarity_factor(const KeywordSelection& paper_kws,
                         const KeywordSelection& reviewer_kws,
                         SetMeasure measure, const ConceptSimilarity& sim) {
  switch (measure) {
    case SetMeasure::jaccard:
      return jaccard(paper_kws, reviewer_kws);
    case SetMeasure::dice:
      return dice(paper_kws, reviewer_kws);
    case SetMeasure::symmetric:
    case SetMeasure::asymmetric: {
      PairSimilarity pair = [&sim](const SelectedKeyword& p,
                                   const SelectedKeyword& r) {
        return sim.weighted(p, r);
      };
      return measure == SetMeasure::symmetric
                 ? symmetric_sf(paper_kws, reviewer_kws, pair)
                 : asymmetric_sf(paper_kws, reviewer_kws, pair);
    }
  }
  return 0.0;
}

}  // namespace taxmatch
