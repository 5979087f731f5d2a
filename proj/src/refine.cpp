#include "citerank/refine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace citerank {

namespace {

// Best eligible node under (score desc, id asc); -1 if none.
NodeId argmax_eligible(const std::vector<double>& scores,
                       const std::vector<std::uint8_t>& excluded) {
    NodeId best = -1;
    for (NodeId v = 0; v < static_cast<NodeId>(scores.size()); ++v) {
        if (excluded[v]) continue;
        if (best < 0 || score_order(scores[v], v, scores[best], best)) best = v;
    }
    return best;
}

std::vector<std::uint8_t> seed_mask(NodeId n, std::span<const NodeId> seeds) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (NodeId s : seeds) {
        if (s < 0 || s >= n)
            throw std::invalid_argument("seed id " + std::to_string(s) + " out of range");
        mask[s] = 1;
    }
    return mask;
}

void require_k(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

}  // namespace

void dump_trace(const RefinementTrace& trace, std::ostream& out) {
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        const auto& round = trace.rounds[r];
        out << "round " << r << ": pick=" << round.pick << " score=" << round.score
            << " iters=" << round.iterations;
        if (!round.modification.empty()) out << " state=" << round.modification;
        if (round.final_iterate_pick >= 0)
            out << " final_iterate_pick=" << round.final_iterate_pick;
        if (!round.seed_prior.empty()) {
            out << " prior=[";
            for (std::size_t i = 0; i < round.seed_prior.size(); ++i)
                out << (i ? "," : "") << round.seed_prior[i];
            out << "]";
        }
        out << '\n';
    }
}

RecommendationSet grasshopper(const CitationGraph& g, std::span<const NodeId> seeds,
                              const RankParams& params, int k,
                              RefinementTrace* trace) {
    require_k(k);
    NodeId n = g.num_nodes();
    auto excluded = seed_mask(n, seeds);
    auto prior = seed_prior(n, seeds);

    RecommendationSet rec;
    rec.algorithm = "grasshopper";
    rec.params = params;

    GraphView view(g);
    RankVector base = darwr(view, seeds, params);
    rec.converged = base.converged;
    int horizon = std::max(base.iterations, 1);

    NodeId pick = argmax_eligible(base.scores, excluded);
    if (pick >= 0) {
        rec.items.push_back({pick, base.scores[pick]});
        excluded[pick] = 1;
        if (trace)
            trace->rounds.push_back({pick, base.scores[pick], base.iterations,
                                     "full ranking", {}, pick});
    }

    while (pick >= 0 && static_cast<int>(rec.items.size()) < k) {
        view.make_sink(pick);
        CumulativeRank cum = darwr_cumulative(view, prior, params, horizon);
        pick = argmax_eligible(cum.cumulative, excluded);
        if (pick < 0) break;
        if (trace) {
            NodeId alt = argmax_eligible(cum.final_iterate.scores, excluded);
            trace->rounds.push_back({pick, cum.cumulative[pick],
                                     cum.final_iterate.iterations,
                                     std::to_string(rec.items.size()) + " sink(s)",
                                     {},
                                     alt});
        }
        rec.items.push_back({pick, cum.cumulative[pick]});
        excluded[pick] = 1;
    }
    rec.k_requested = k;
    rec.partial = static_cast<int>(rec.items.size()) < k;
    return rec;
}

RecommendationSet gsparse(const CitationGraph& g, std::span<const NodeId> seeds,
                          const RankParams& params, int k, RefinementTrace* trace) {
    require_k(k);
    NodeId n = g.num_nodes();
    auto excluded = seed_mask(n, seeds);

    RecommendationSet rec;
    rec.algorithm = "gsparse";
    rec.params = params;
    rec.converged = true;

    GraphView view(g);
    for (int round = 0; round < k; ++round) {
        RankVector pi = darwr(view, seeds, params);
        rec.converged = rec.converged && pi.converged;
        NodeId pick = argmax_eligible(pi.scores, excluded);
        if (pick < 0) break;
        rec.items.push_back({pick, pi.scores[pick]});
        excluded[pick] = 1;
        view.remove_vertex(pick);
        if (trace)
            trace->rounds.push_back({pick, pi.scores[pick], pi.iterations,
                                     std::to_string(view.num_edges()) + " edges left",
                                     {},
                                     -1});
    }
    rec.k_requested = k;
    rec.partial = static_cast<int>(rec.items.size()) < k;
    return rec;
}

std::vector<double> feed_prior(std::span<const std::vector<NodeId>> seed_dists,
                               std::span<const NodeId> picks, bool* fallback) {
    if (fallback) *fallback = false;
    std::size_t m = seed_dists.size();
    std::vector<double> weights(m, 0.0);
    std::vector<NodeId> d(picks.size());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < picks.size(); ++j) d[j] = seed_dists[i][picks[j]];
        std::sort(d.begin(), d.end());
        std::size_t mid = d.size() / 2;
        // even count: mean of the middle pair
        weights[i] = d.size() % 2 == 1
                         ? static_cast<double>(d[mid])
                         : (static_cast<double>(d[mid - 1]) + d[mid]) / 2.0;
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) {
        if (fallback) *fallback = true;
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(m));
        return weights;
    }
    for (double& w : weights) w /= total;
    return weights;
}

RecommendationSet feed(const CitationGraph& g, std::span<const NodeId> seeds,
                       const RankParams& params, int k, RefinementTrace* trace) {
    require_k(k);
    if (seeds.empty()) throw std::invalid_argument("seed set is empty");
    NodeId n = g.num_nodes();
    auto excluded = seed_mask(n, seeds);

    // Dedup seeds but keep a stable order for the per-seed weights.
    std::vector<NodeId> m_list;
    for (NodeId s : seeds)
        if (std::find(m_list.begin(), m_list.end(), s) == m_list.end())
            m_list.push_back(s);

    std::vector<std::vector<NodeId>> seed_dists;
    seed_dists.reserve(m_list.size());
    for (NodeId s : m_list) seed_dists.push_back(bfs_undirected(g, s).dist);

    RecommendationSet rec;
    rec.algorithm = "feed";
    rec.params = params;
    rec.converged = true;

    GraphView view(g);
    std::vector<NodeId> picks;
    std::vector<double> prior(static_cast<std::size_t>(n), 0.0);
    for (int round = 0; round < k; ++round) {
        std::vector<double> weights;
        if (picks.empty()) {
            weights.assign(m_list.size(), 1.0 / static_cast<double>(m_list.size()));
        } else {
            bool fallback = false;
            weights = feed_prior(seed_dists, picks, &fallback);
            if (fallback) rec.notes.push_back("feed prior fell back to uniform");
        }
        std::fill(prior.begin(), prior.end(), 0.0);
        for (std::size_t i = 0; i < m_list.size(); ++i) prior[m_list[i]] = weights[i];

        RankVector pi = darwr_with_prior(view, prior, params);
        rec.converged = rec.converged && pi.converged;
        NodeId pick = argmax_eligible(pi.scores, excluded);
        if (pick < 0) break;
        rec.items.push_back({pick, pi.scores[pick]});
        excluded[pick] = 1;
        picks.push_back(pick);
        if (trace)
            trace->rounds.push_back(
                {pick, pi.scores[pick], pi.iterations, "prior update", weights, -1});
    }
    rec.k_requested = k;
    rec.partial = static_cast<int>(rec.items.size()) < k;
    return rec;
}

}  // namespace citerank
