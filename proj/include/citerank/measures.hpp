// measures.hpp - relevancy, diversity and auxiliary measures evaluated
// on one (query, recommendation set, baseline ranking) triple.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citerank/graph.hpp"
#include "citerank/ranking.hpp"
#include "citerank/select.hpp"

namespace citerank {

enum class UsefulnessVariant {
    kWithinTopRange,  // count members scoring at least the rank-10k score
    kAsPrinted,       // count members scoring at most that threshold
};

struct MetricsReport {
    double rel = 0.0;
    double diff = 0.0;
    double use = 0.0;
    double goodness = 0.0;
    std::array<double, 3> dens{};   // steps 1..3
    std::array<double, 3> sigma{};  // steps 1..3
    std::optional<double> avg_year;
    double avg_pairwise_dist = 0.0;
    double avg_min_dist_to_seeds = 0.0;
    double runtime_ms = 0.0;
    std::vector<std::string> flags;
};

// Sum of the set's baseline scores over the best achievable top-|S|
// sum (seeds excluded from the reference ranking).
double normalized_relevance(std::span<const NodeId> s, const std::vector<double>& pi,
                            std::span<const NodeId> seeds, bool* warned = nullptr);

// 1 - |S ∩ S_top| / |S|.
double difference_ratio(std::span<const NodeId> s, std::span<const NodeId> s_top);

// Fraction of the set ranked within the top 10*|S| of the baseline
// (1.0 when fewer than 10*|S| candidates exist).
double usefulness(std::span<const NodeId> s, const std::vector<double>& pi,
                  std::span<const NodeId> seeds,
                  UsefulnessVariant variant = UsefulnessVariant::kWithinTopRange);

// Combined relevance/diversity objective maximized by dragon_select:
// twice the set's score mass minus damped penalties for intra-set
// citation edges (out-degree-normalized).
double goodness(const CitationGraph& g, std::span<const NodeId> s,
                const std::vector<double>& pi, double damping, double kappa);

// Fraction of ordered pairs within `steps` undirected hops.
double step_density(const CitationGraph& g, std::span<const NodeId> s, int steps,
                    bool* warned = nullptr);

// |N_steps(S)| / n.
double expansion_ratio(const CitationGraph& g, std::span<const NodeId> s, int steps);

struct DistanceStats {
    double avg_pairwise = 0.0;      // mean pairwise hop distance, sentinel n if apart
    double avg_min_to_seeds = 0.0;  // mean distance to the closest seed
    std::optional<double> avg_year; // absent when no member has a year
};

DistanceStats distance_stats(const CitationGraph& g, std::span<const NodeId> s,
                             std::span<const NodeId> seeds);

// Full report for one recommendation set. Partial sets are scored at
// their actual size; runtime_ms is left for the caller to fill.
MetricsReport compute_metrics(const CitationGraph& g, const RecommendationSet& rec,
                              const RankVector& baseline, std::span<const NodeId> seeds,
                              const RankParams& params,
                              UsefulnessVariant variant = UsefulnessVariant::kWithinTopRange);

}  // namespace citerank
