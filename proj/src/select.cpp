#include "citerank/select.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace citerank {

bool score_order(double score_a, NodeId a, double score_b, NodeId b) {
    if (score_a != score_b) return score_a > score_b;
    return a < b;
}

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

// Non-seed node ids sorted by (score desc, id asc).
std::vector<NodeId> ranked_candidates(const std::vector<double>& scores,
                                      const std::vector<std::uint8_t>& is_seed) {
    std::vector<NodeId> order;
    order.reserve(scores.size());
    for (NodeId v = 0; v < static_cast<NodeId>(scores.size()); ++v)
        if (!is_seed[v]) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return score_order(scores[a], a, scores[b], b);
    });
    return order;
}

void require_k(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

void require_scores(const CitationGraph& g, const RankVector& pi) {
    if (static_cast<NodeId>(pi.scores.size()) != g.num_nodes())
        throw std::invalid_argument("score vector size does not match node count");
}

void finalize(RecommendationSet& rec, int k) {
    rec.k_requested = k;
    rec.partial = static_cast<int>(rec.items.size()) < k;
}

// Strict local maxima of the score field over undirected adjacency,
// restricted to nodes with in_pool set (pass nullptr for all nodes).
// Follows the marking scan: a scanned candidate demotes strictly
// smaller neighbors and is itself demoted by any neighbor scoring >= it,
// so a tied adjacent pair never survives together.
std::vector<NodeId> marked_local_maxima(const CitationGraph& g,
                                        const std::vector<double>& scores,
                                        const std::vector<std::uint8_t>* in_pool) {
    NodeId n = g.num_nodes();
    std::vector<std::uint8_t> is_max(static_cast<std::size_t>(n), 1);
    std::vector<NodeId> maxima;
    for (NodeId v = 0; v < n; ++v) {
        if (in_pool && !(*in_pool)[v]) continue;
        if (!is_max[v]) continue;
        for (NodeId w : g.neighbors(v)) {
            if (in_pool && !(*in_pool)[w]) continue;
            if (scores[w] < scores[v]) {
                is_max[w] = 0;
            } else {
                is_max[v] = 0;
                break;
            }
        }
        if (is_max[v]) maxima.push_back(v);
    }
    return maxima;
}

}  // namespace

RecommendationSet top_k(const RankVector& pi, std::span<const NodeId> seeds, int k) {
    require_k(k);
    NodeId n = static_cast<NodeId>(pi.scores.size());
    auto is_seed = seed_mask(n, seeds);
    auto order = ranked_candidates(pi.scores, is_seed);

    RecommendationSet rec;
    rec.algorithm = "topk";
    rec.converged = pi.converged;
    for (NodeId v : order) {
        if (static_cast<int>(rec.items.size()) == k) break;
        rec.items.push_back({v, pi.scores[v]});
    }
    finalize(rec, k);
    return rec;
}

RecommendationSet il_select(const CitationGraph& g, const RankVector& pi,
                            std::span<const NodeId> seeds, int k, int steps) {
    require_k(k);
    require_scores(g, pi);
    if (steps < 1) throw std::invalid_argument("expansion steps must be >= 1");
    NodeId n = g.num_nodes();
    auto is_seed = seed_mask(n, seeds);
    auto order = ranked_candidates(pi.scores, is_seed);

    RecommendationSet rec;
    rec.algorithm = "il" + std::to_string(steps);
    rec.converged = pi.converged;

    // blocked_dist[v] = min hops to any accepted node, capped at steps.
    // Each accepted node relaxes the field with a truncated BFS; a node
    // that cannot improve the field cannot improve anything beyond it.
    const NodeId kFar = n + 1;
    std::vector<NodeId> blocked_dist(static_cast<std::size_t>(n), kFar);
    std::deque<NodeId> queue;
    auto block_ball = [&](NodeId center) {
        queue.clear();
        blocked_dist[center] = 0;
        queue.push_back(center);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            if (blocked_dist[u] == steps) continue;
            for (NodeId w : g.neighbors(u)) {
                if (blocked_dist[u] + 1 < blocked_dist[w]) {
                    blocked_dist[w] = blocked_dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    };

    for (NodeId v : order) {
        if (static_cast<int>(rec.items.size()) == k) break;
        if (blocked_dist[v] <= steps) continue;
        rec.items.push_back({v, pi.scores[v]});
        block_ball(v);
    }
    finalize(rec, k);
    return rec;
}

RecommendationSet local_maxima_select(const CitationGraph& g, const RankVector& pi,
                                      std::span<const NodeId> seeds, int k) {
    require_k(k);
    require_scores(g, pi);
    auto is_seed = seed_mask(g.num_nodes(), seeds);
    auto maxima = marked_local_maxima(g, pi.scores, nullptr);

    std::erase_if(maxima, [&](NodeId v) { return is_seed[v] != 0; });
    std::stable_sort(maxima.begin(), maxima.end(), [&](NodeId a, NodeId b) {
        return score_order(pi.scores[a], a, pi.scores[b], b);
    });
    if (static_cast<int>(maxima.size()) > k) maxima.resize(k);

    RecommendationSet rec;
    rec.algorithm = "lm";
    rec.converged = pi.converged;
    for (NodeId v : maxima) rec.items.push_back({v, pi.scores[v]});
    finalize(rec, k);
    return rec;
}

RecommendationSet rlm_select(const CitationGraph& g, const RankVector& pi,
                             std::span<const NodeId> seeds, int k, int gamma,
                             RlmTrace* trace) {
    require_k(k);
    require_scores(g, pi);
    if (gamma < 1) throw std::invalid_argument("gamma must be >= 1");
    NodeId n = g.num_nodes();
    auto is_seed = seed_mask(n, seeds);
    auto order = ranked_candidates(pi.scores, is_seed);

    std::int64_t pool_size =
        std::min<std::int64_t>(static_cast<std::int64_t>(gamma) * k,
                               static_cast<std::int64_t>(order.size()));
    std::vector<std::uint8_t> in_pool(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < pool_size; ++i) in_pool[order[i]] = 1;
    std::int64_t remaining = pool_size;

    RecommendationSet rec;
    rec.algorithm = "rlm";
    rec.converged = pi.converged;

    auto by_score = [&](NodeId a, NodeId b) {
        return score_order(pi.scores[a], a, pi.scores[b], b);
    };

    while (static_cast<int>(rec.items.size()) < k && remaining > 0) {
        auto maxima = marked_local_maxima(g, pi.scores, &in_pool);
        if (trace) trace->pass_maxima.push_back(maxima);
        if (maxima.empty()) {
            // Tied adjacent candidates can demote each other until no
            // strict maximum is left; fall back to the best remaining
            // candidate so the pass always makes progress.
            NodeId best = -1;
            for (NodeId v = 0; v < n; ++v)
                if (in_pool[v] && (best < 0 || by_score(v, best))) best = v;
            maxima.push_back(best);
        }
        std::stable_sort(maxima.begin(), maxima.end(), by_score);
        int quota = k - static_cast<int>(rec.items.size());
        if (static_cast<int>(maxima.size()) > quota) maxima.resize(quota);
        for (NodeId v : maxima) {
            rec.items.push_back({v, pi.scores[v]});
            in_pool[v] = 0;
            --remaining;
        }
    }
    // output follows the global (score, id) order
    std::stable_sort(rec.items.begin(), rec.items.end(),
                     [&](const Recommendation& a, const Recommendation& b) {
                         return score_order(a.score, a.node, b.score, b.node);
                     });
    finalize(rec, k);
    return rec;
}

RecommendationSet dragon_select(const CitationGraph& g, const RankVector& pi,
                                std::span<const NodeId> seeds, int k,
                                const RankParams& params) {
    require_k(k);
    require_scores(g, pi);
    NodeId n = g.num_nodes();
    auto is_seed = seed_mask(n, seeds);
    const auto& scores = pi.scores;
    const double d = params.damping;

    // Marginal gain of v given the current set S:
    //   2 pi(v) - d * (sum_{j in S, j->v} pi(j)/outdeg(j)
    //                  + pi(v) * |{j in S : v->j}| / outdeg(v))
    std::vector<double> in_part(static_cast<std::size_t>(n), 0.0);
    std::vector<NodeId> out_cnt(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> taken(static_cast<std::size_t>(n), 0);

    auto gain = [&](NodeId v) {
        double cross = in_part[v];
        if (g.out_degree(v) > 0)
            cross += scores[v] * static_cast<double>(out_cnt[v]) / g.out_degree(v);
        return 2.0 * scores[v] - d * cross;
    };

    RecommendationSet rec;
    rec.algorithm = "dragon";
    rec.params = params;
    rec.converged = pi.converged;
    for (int step = 0; step < k; ++step) {
        NodeId best = -1;
        double best_gain = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            if (is_seed[v] || taken[v]) continue;
            double gv = gain(v);
            if (best < 0 || score_order(gv, v, best_gain, best)) {
                best = v;
                best_gain = gv;
            }
        }
        if (best < 0) break;
        rec.items.push_back({best, best_gain});
        taken[best] = 1;
        if (g.out_degree(best) > 0) {
            double w = scores[best] / g.out_degree(best);
            for (NodeId v : g.references(best)) in_part[v] += w;
        }
        for (NodeId v : g.citers(best)) out_cnt[v]++;
    }
    finalize(rec, k);
    return rec;
}

RecommendationSet divrank(const CitationGraph& g, std::span<const NodeId> seeds,
                          const RankParams& params, DivRankMode mode, int k,
                          double alpha, VrrwTrace* trace) {
    require_k(k);
    params.validate();
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0, 1)");
    NodeId n = g.num_nodes();
    auto is_seed = seed_mask(n, seeds);
    auto prior = seed_prior(n, seeds);

    const double d = params.damping;
    const double kappa = params.kappa;

    // Base transition structure: seeds have no organic self-link and
    // spread their full mass over the direction channels; non-seeds
    // keep 1-alpha on themselves and spread alpha.
    auto organic = [&](NodeId u) { return is_seed[u] ? 0.0 : 1.0 - alpha; };
    auto channel_scale = [&](NodeId u) { return is_seed[u] ? 1.0 : alpha; };

    std::vector<double> cur(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<double> eta = cur;  // visit estimate, both modes start at p_0
    std::vector<double> next(static_cast<std::size_t>(n));

    RecommendationSet rec;
    rec.algorithm = mode == DivRankMode::kPointwise ? "pdivrank" : "cdivrank";
    rec.params = params;

    auto snapshot = [&] {
        if (trace) trace->states.push_back({eta, mode, alpha});
    };
    snapshot();

    bool converged = false;
    for (int t = 1; t <= params.max_iters; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        double teleport_mass = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double pu = cur[u];
            double c = channel_scale(u);
            double w_ref = g.out_degree(u) > 0 ? c * (1.0 - kappa) / g.out_degree(u) : 0.0;
            double w_cit = g.in_degree(u) > 0 ? c * kappa / g.in_degree(u) : 0.0;

            double z = organic(u) * eta[u];
            if (w_ref > 0.0)
                for (NodeId v : g.references(u)) z += w_ref * eta[v];
            if (w_cit > 0.0)
                for (NodeId v : g.citers(u)) z += w_cit * eta[v];

            if (z == 0.0) {
                // No admissible move: the whole row teleports.
                teleport_mass += pu;
                continue;
            }
            teleport_mass += (1.0 - d) * pu;
            double f = d * pu / z;
            next[u] += f * organic(u) * eta[u];
            if (w_ref > 0.0)
                for (NodeId v : g.references(u)) next[v] += f * w_ref * eta[v];
            if (w_cit > 0.0)
                for (NodeId v : g.citers(u)) next[v] += f * w_cit * eta[v];
        }
        for (NodeId v = 0; v < n; ++v) next[v] += teleport_mass * prior[v];

        double res = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double diff = next[v] - cur[v];
            res += diff * diff;
        }
        res = std::sqrt(res);
        cur.swap(next);

        if (mode == DivRankMode::kCumulative) {
            for (NodeId v = 0; v < n; ++v) eta[v] += cur[v];
        } else {
            eta = cur;
        }
        snapshot();

        if (res < params.epsilon) {
            converged = true;
            break;
        }
    }

    rec.converged = converged;
    auto order = ranked_candidates(cur, is_seed);
    for (NodeId v : order) {
        if (static_cast<int>(rec.items.size()) == k) break;
        rec.items.push_back({v, cur[v]});
    }
    finalize(rec, k);
    return rec;
}

}  // namespace citerank
