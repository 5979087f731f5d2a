// select.hpp - one-shot diversifiers working off a single ranking run:
// plain top-k, expansion-set filtering (IL1/IL2), local maxima (LM),
// relaxed local maxima (gamma-RLM), greedy goodness maximization
// (DRAGON), and the vertex-reinforced-walk variants (PDivRank /
// CDivRank) which run their own reinforced walk.
//
// Tie rule everywhere: descending score, then ascending node id.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "citerank/graph.hpp"
#include "citerank/ranking.hpp"

namespace citerank {

struct Recommendation {
    NodeId node;
    double score;  // the selecting algorithm's own score
};

struct RecommendationSet {
    std::vector<Recommendation> items;  // disjoint from seeds, no duplicates
    std::string algorithm;
    RankParams params;
    int k_requested = 0;
    bool partial = false;    // fewer than k eligible candidates
    bool converged = true;   // false if an internal ranking hit max_iters
    std::vector<std::string> notes;

    std::vector<NodeId> nodes() const {
        std::vector<NodeId> out;
        out.reserve(items.size());
        for (const auto& it : items) out.push_back(it.node);
        return out;
    }
};

// The k highest-scored non-seed nodes.
RecommendationSet top_k(const RankVector& pi, std::span<const NodeId> seeds, int k);

// Greedy scan in score order skipping anything inside the `steps`-hop
// expansion set of the nodes accepted so far (IL1 for steps=1, IL2 for
// steps=2).
RecommendationSet il_select(const CitationGraph& g, const RankVector& pi,
                            std::span<const NodeId> seeds, int k, int steps);

// Undirected local maxima of the score field, seeds excluded, best k.
RecommendationSet local_maxima_select(const CitationGraph& g, const RankVector& pi,
                                      std::span<const NodeId> seeds, int k);

// Per-pass diagnostics for rlm_select (used by reduction tests).
struct RlmTrace {
    std::vector<std::vector<NodeId>> pass_maxima;  // maxima found each pass
};

// Relaxed local maxima: restrict to the top gamma*k candidates, then
// repeatedly harvest the local maxima of the candidate-induced subgraph
// until k nodes are selected. gamma=1 degenerates to top_k; large gamma
// approaches local_maxima_select.
RecommendationSet rlm_select(const CitationGraph& g, const RankVector& pi,
                             std::span<const NodeId> seeds, int k, int gamma,
                             RlmTrace* trace = nullptr);

// Greedy maximization of the goodness objective (relevance minus a
// damped penalty for intra-set citation edges); marginal gains are
// maintained incrementally in O(deg) per accepted node.
RecommendationSet dragon_select(const CitationGraph& g, const RankVector& pi,
                                std::span<const NodeId> seeds, int k,
                                const RankParams& params);

enum class DivRankMode { kPointwise, kCumulative };

// Reinforced-walk state: visit estimates per node, either the current
// rank vector (pointwise) or the running sum of rank vectors
// (cumulative, nondecreasing per node).
struct VrrwState {
    std::vector<double> visit_estimate;
    DivRankMode mode = DivRankMode::kCumulative;
    double alpha = 0.25;
};

// Per-iteration state snapshots for tests.
struct VrrwTrace {
    std::vector<VrrwState> states;
};

// Direction-aware DivRank: a walk whose transition weights are
// reweighted each iteration by accumulated visit estimates, so mass
// concentrates on separated prestige centers. Seeds carry no organic
// self-link; non-seeds keep theirs with weight 1-alpha. Returns the
// top-k non-seeds of the converged reinforced walk.
RecommendationSet divrank(const CitationGraph& g, std::span<const NodeId> seeds,
                          const RankParams& params, DivRankMode mode, int k,
                          double alpha = 0.25, VrrwTrace* trace = nullptr);

// Shared ordering helper: score descending, node id ascending.
bool score_order(double score_a, NodeId a, double score_b, NodeId b);

}  // namespace citerank
