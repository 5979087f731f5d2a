// ranking.hpp - power-iteration ranking: PageRank, personalized
// PageRank, and the direction-aware random walk with restart (DARWR).
//
// DARWR splits the walker's mass between following references (weight
// 1-kappa, toward older papers) and following citations (weight kappa,
// toward newer ones). The restart term carries a (1-d) factor: scores
// sum to 1 on leak-free graphs and stay comparable across damping
// values. Ranking order is unaffected by the factor.

#pragma once

#include <span>
#include <vector>

#include "citerank/graph.hpp"

namespace citerank {

struct RankParams {
    double damping = 0.9;    // d, in (0, 1]
    double kappa = 0.75;     // direction awareness, in [0, 1]
    double epsilon = 1e-8;   // L2 convergence threshold
    int max_iters = 1000;
    // With the flag set, a node missing one direction channel
    // redistributes that channel's weight to the surviving one.
    // Default follows the transition weights literally: the missing
    // channel's mass is simply not emitted.
    bool renormalize_dangling = false;

    void validate() const;
};

struct RankVector {
    std::vector<double> scores;       // per node, nonnegative
    int iterations = 0;               // update steps performed
    bool converged = false;
    double residual = 0.0;            // final L2 step difference
    std::vector<double> residuals;    // per-iteration history
};

// Uniform restart distribution over the seed set.
std::vector<double> seed_prior(NodeId n, std::span<const NodeId> seeds);

// Direction-aware random walk with restart. Iterates
//   p[v] <- (1-d) prior[v] + sum_u a(u,v) p[u]
// with a(u,v) = d(1-kappa)/outdeg(u) along references and
// d kappa/indeg(u) along citations, until the L2 step difference drops
// below epsilon or max_iters is hit (converged=false then).
RankVector darwr(const GraphView& g, std::span<const NodeId> seeds,
                 const RankParams& params);
RankVector darwr(const CitationGraph& g, std::span<const NodeId> seeds,
                 const RankParams& params);

// Same iteration with an arbitrary nonnegative restart vector.
RankVector darwr_with_prior(const GraphView& g, std::span<const double> prior,
                            const RankParams& params);

// Fixed-horizon run accumulating the per-iteration rank vectors; used
// by refinement methods that estimate visit counts with cumulative
// ranks instead of waiting for the steady state.
struct CumulativeRank {
    std::vector<double> cumulative;  // sum of p_t over t = 0..horizon
    RankVector final_iterate;
};
CumulativeRank darwr_cumulative(const GraphView& g, std::span<const double> prior,
                                const RankParams& params, int horizon);

// Classic PageRank on the undirected view: uniform teleport, stationary
// distribution sums to 1.
RankVector pagerank(const CitationGraph& g, const RankParams& params);

// Personalized PageRank on the undirected view: teleport restricted to
// the seed set.
RankVector ppr(const CitationGraph& g, std::span<const NodeId> seeds,
               const RankParams& params);

}  // namespace citerank
