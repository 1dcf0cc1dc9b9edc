#pragma once

#include <functional>

#include "taxmatch/concept_sim.hpp"
#include "taxmatch/selection.hpp"

namespace taxmatch {

enum class SetMeasure { jaccard, dice, symmetric, asymmetric };

// Similarity between one of the paper's keywords and one of the
// reviewer's. Implementations keep ownership roles fixed regardless of
// which sum they are evaluated in.
using PairSimilarity = std::function<double(const SelectedKeyword& paper_kw,
                                            const SelectedKeyword& reviewer_kw)>;

// |intersection| / |union| over concept ids; weights are ignored.
double jaccard(const KeywordSelection& paper_kws,
               const KeywordSelection& reviewer_kws);

// 2 * |intersection| / (|paper| + |reviewer|); weights are ignored.
double dice(const KeywordSelection& paper_kws,
            const KeywordSelection& reviewer_kws);

// Sum over the first set's keywords of each keyword's best similarity to
// the second set. Not commutative: the number of summed terms follows the
// first argument.
double semantic_commonality(const KeywordSelection& from,
                            const KeywordSelection& to,
                            const PairSimilarity& sim);

// (commonality(paper->reviewer) + commonality(reviewer->paper)) /
// (|paper| + |reviewer|). Both sums evaluate sim with the paper keyword
// first, so weighting stays tied to ownership.
double symmetric_sf(const KeywordSelection& paper_kws,
                    const KeywordSelection& reviewer_kws,
                    const PairSimilarity& sim);

// commonality(paper->reviewer) / |paper|: only how well the reviewer
// covers the paper, not how focused the reviewer is.
double asymmetric_sf(const KeywordSelection& paper_kws,
                     const KeywordSelection& reviewer_kws,
                     const PairSimilarity& sim);

// The configured set-level similarity factor for one paper/reviewer pair.
// Flat measures ignore the concept similarity; taxonomy measures evaluate
// it through ConceptSimilarity::weighted.
double similarity_factor(const KeywordSelection& paper_kws,
                         const KeywordSelection& reviewer_kws,
                         SetMeasure measure, const ConceptSimilarity& sim);

}  // namespace taxmatch
