// refine.hpp - diversifiers that re-run the ranking k times, mutating
// the graph view (sink conversion, vertex removal) or the restart
// prior between rounds.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "citerank/graph.hpp"
#include "citerank/ranking.hpp"
#include "citerank/select.hpp"

namespace citerank {

struct RefinementRound {
    NodeId pick = -1;
    double score = 0.0;
    int iterations = 0;
    std::string modification;        // human-readable state change
    std::vector<double> seed_prior;  // FEED: per-seed weights this round
    NodeId final_iterate_pick = -1;  // GRASSHOPPER: argmax of p_T, for comparison
};

struct RefinementTrace {
    std::vector<RefinementRound> rounds;
};

void dump_trace(const RefinementTrace& trace, std::ostream& out);

// Absorbing-walk style refinement: after each pick the chosen vertex
// becomes a sink, and later rounds rank by cumulative scores over the
// round-0 iteration horizon.
RecommendationSet grasshopper(const CitationGraph& g, std::span<const NodeId> seeds,
                              const RankParams& params, int k,
                              RefinementTrace* trace = nullptr);

// Sparsification refinement: each picked vertex is removed together
// with its incident edges before the next full ranking.
RecommendationSet gsparse(const CitationGraph& g, std::span<const NodeId> seeds,
                          const RankParams& params, int k,
                          RefinementTrace* trace = nullptr);

// Prior-feedback refinement: seed weights are re-derived each round
// from the median graph distance between the seed and the picks so
// far, shifting restart mass toward seeds far from covered territory.
RecommendationSet feed(const CitationGraph& g, std::span<const NodeId> seeds,
                       const RankParams& params, int k,
                       RefinementTrace* trace = nullptr);

// One FEED prior update: seed_dists[i][v] are hop distances from seed i
// (sentinel = n for unreachable). Returns per-seed weights normalized
// to sum 1; sets *fallback if the normalizer vanished and the uniform
// prior was substituted.
std::vector<double> feed_prior(std::span<const std::vector<NodeId>> seed_dists,
                               std::span<const NodeId> picks, bool* fallback = nullptr);

}  // namespace citerank
