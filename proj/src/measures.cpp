#include "citerank/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace citerank {

namespace {

std::vector<std::uint8_t> seed_mask(NodeId n, std::span<const NodeId> seeds) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (NodeId s : seeds) {
        if (s < 0 || s >= n)
            throw std::invalid_argument("seed id " + std::to_string(s) + " out of range");
        mask[s] = 1;
    }
    return mask;
}

// Non-seed scores sorted descending.
std::vector<double> ranked_scores(const std::vector<double>& pi,
                                  const std::vector<std::uint8_t>& is_seed) {
    std::vector<double> out;
    out.reserve(pi.size());
    for (std::size_t v = 0; v < pi.size(); ++v)
        if (!is_seed[v]) out.push_back(pi[v]);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace

double normalized_relevance(std::span<const NodeId> s, const std::vector<double>& pi,
                            std::span<const NodeId> seeds, bool* warned) {
    if (warned) *warned = false;
    if (s.empty()) return 0.0;
    auto is_seed = seed_mask(static_cast<NodeId>(pi.size()), seeds);
    auto ranked = ranked_scores(pi, is_seed);

    double denom = 0.0;
    for (std::size_t i = 0; i < s.size() && i < ranked.size(); ++i) denom += ranked[i];
    double num = 0.0;
    for (NodeId v : s) num += pi[v];
    if (denom == 0.0) {
        if (warned) *warned = true;
        return 0.0;
    }
    return num / denom;
}

double difference_ratio(std::span<const NodeId> s, std::span<const NodeId> s_top) {
    if (s.empty()) return 0.0;
    std::vector<NodeId> a(s.begin(), s.end());
    std::vector<NodeId> b(s_top.begin(), s_top.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<NodeId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    return 1.0 - static_cast<double>(common.size()) / static_cast<double>(s.size());
}

double usefulness(std::span<const NodeId> s, const std::vector<double>& pi,
                  std::span<const NodeId> seeds, UsefulnessVariant variant) {
    if (s.empty()) return 0.0;
    auto is_seed = seed_mask(static_cast<NodeId>(pi.size()), seeds);
    auto ranked = ranked_scores(pi, is_seed);

    std::size_t cutoff = 10 * s.size();
    if (cutoff > ranked.size()) return 1.0;
    double threshold = ranked[cutoff - 1];
    std::size_t count = 0;
    for (NodeId v : s) {
        bool within = variant == UsefulnessVariant::kWithinTopRange
                          ? pi[v] >= threshold
                          : pi[v] <= threshold;
        if (within) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(s.size());
}

double goodness(const CitationGraph& g, std::span<const NodeId> s,
                const std::vector<double>& pi, double damping, double kappa) {
    std::vector<std::uint8_t> in_s(static_cast<std::size_t>(g.num_nodes()), 0);
    for (NodeId v : s) {
        g.check_node(v);
        in_s[v] = 1;
    }
    double score_mass = 0.0;
    for (NodeId v : s) score_mass += pi[v];

    // Both penalty sums range over ordered in-set pairs joined by a
    // citation edge, weighted by the citing side's normalized score.
    double intra = 0.0;
    for (NodeId u : s) {
        if (g.out_degree(u) == 0) continue;
        double w = pi[u] / g.out_degree(u);
        for (NodeId v : g.references(u))
            if (in_s[v]) intra += w;
    }
    return 2.0 * score_mass - damping * kappa * intra -
           damping * (1.0 - kappa) * intra;
}

double step_density(const CitationGraph& g, std::span<const NodeId> s, int steps,
                    bool* warned) {
    if (warned) *warned = false;
    if (s.size() < 2) {
        if (warned) *warned = true;
        return 0.0;
    }
    std::int64_t close = 0;
    for (NodeId u : s) {
        auto dist = bfs_undirected(g, u).dist;
        for (NodeId v : s)
            if (v != u && dist[v] <= steps) ++close;
    }
    auto k = static_cast<std::int64_t>(s.size());
    return static_cast<double>(close) / static_cast<double>(k * (k - 1));
}

double expansion_ratio(const CitationGraph& g, std::span<const NodeId> s, int steps) {
    if (s.empty()) return 0.0;
    auto expanded = expansion_set(g, s, steps);
    return static_cast<double>(expanded.size()) / static_cast<double>(g.num_nodes());
}

DistanceStats distance_stats(const CitationGraph& g, std::span<const NodeId> s,
                             std::span<const NodeId> seeds) {
    DistanceStats stats;
    if (s.empty()) return stats;

    if (s.size() >= 2) {
        double total = 0.0;
        for (NodeId u : s) {
            auto dist = bfs_undirected(g, u).dist;
            for (NodeId v : s)
                if (v != u) total += dist[v];  // unreachable already carries sentinel n
        }
        auto k = static_cast<double>(s.size());
        stats.avg_pairwise = total / (k * (k - 1));
    }

    if (!seeds.empty()) {
        auto dist = bfs_undirected_multi(g, seeds);
        double total = 0.0;
        for (NodeId v : s) total += dist[v];
        stats.avg_min_to_seeds = total / static_cast<double>(s.size());
    }

    double year_sum = 0.0;
    int year_count = 0;
    for (NodeId v : s) {
        if (g.has_year(v)) {
            year_sum += g.year(v);
            ++year_count;
        }
    }
    if (year_count > 0) stats.avg_year = year_sum / year_count;
    return stats;
}

MetricsReport compute_metrics(const CitationGraph& g, const RecommendationSet& rec,
                              const RankVector& baseline, std::span<const NodeId> seeds,
                              const RankParams& params, UsefulnessVariant variant) {
    MetricsReport report;
    auto s = rec.nodes();
    if (rec.partial) report.flags.push_back("partial");
    if (!rec.converged) report.flags.push_back("not_converged");
    for (const auto& note : rec.notes) report.flags.push_back(note);
    if (s.empty()) {
        report.flags.push_back("empty_set");
        return report;
    }

    auto s_top = top_k(baseline, seeds, static_cast<int>(s.size()));

    bool warned = false;
    report.rel = normalized_relevance(s, baseline.scores, seeds, &warned);
    if (warned) report.flags.push_back("zero_score_baseline");
    report.diff = difference_ratio(s, s_top.nodes());
    report.use = usefulness(s, baseline.scores, seeds, variant);
    report.goodness = goodness(g, s, baseline.scores, params.damping, params.kappa);

    // One BFS per member covers every pairwise statistic; one
    // multi-source BFS covers every expansion radius.
    const NodeId n = g.num_nodes();
    std::array<std::int64_t, 3> close{};
    double pairwise_total = 0.0;
    for (NodeId u : s) {
        auto dist = bfs_undirected(g, u).dist;
        for (NodeId v : s) {
            if (v == u) continue;
            pairwise_total += dist[v];
            for (int step = 1; step <= 3; ++step)
                if (dist[v] <= step) ++close[step - 1];
        }
    }
    auto k = static_cast<std::int64_t>(s.size());
    if (k >= 2) {
        for (int step = 1; step <= 3; ++step)
            report.dens[step - 1] =
                static_cast<double>(close[step - 1]) / static_cast<double>(k * (k - 1));
        report.avg_pairwise_dist = pairwise_total / static_cast<double>(k * (k - 1));
    } else {
        report.flags.push_back("singleton_set");
    }

    auto from_s = bfs_undirected_multi(g, s);
    std::array<std::int64_t, 3> covered{};
    for (NodeId v = 0; v < n; ++v) {
        if (from_s[v] >= n) continue;
        for (int step = 1; step <= 3; ++step)
            if (from_s[v] <= step) ++covered[step - 1];
    }
    for (int step = 1; step <= 3; ++step)
        report.sigma[step - 1] = static_cast<double>(covered[step - 1]) / n;

    if (!seeds.empty()) {
        auto dist = bfs_undirected_multi(g, seeds);
        double total = 0.0;
        for (NodeId v : s) total += dist[v];
        report.avg_min_dist_to_seeds = total / static_cast<double>(s.size());
    }

    double year_sum = 0.0;
    int year_count = 0;
    for (NodeId v : s) {
        if (g.has_year(v)) {
            year_sum += g.year(v);
            ++year_count;
        }
    }
    if (year_count > 0) report.avg_year = year_sum / year_count;
    return report;
}

}  // namespace citerank
