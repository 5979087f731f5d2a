#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace citerank::oracle {

std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14)
            throw std::runtime_error("singular system in dense solve");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double sum = b[r];
        for (std::size_t c = r + 1; c < n; ++c) sum -= a[r][c] * x[c];
        x[r] = sum / a[r][r];
    }
    return x;
}

namespace {

// Walk transition matrix t[u][v] for the direction-aware walk on a
// view; rows of sinks and removed vertices are zero.
std::vector<std::vector<double>> walk_matrix(const GraphView& g,
                                             const RankParams& params) {
    const CitationGraph& base = g.base();
    const NodeId n = g.num_nodes();
    const double d = params.damping;
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < n; ++u) {
        if (!g.present(u) || g.is_sink(u)) continue;
        double w_ref = d * (1.0 - params.kappa);
        double w_cit = d * params.kappa;
        if (params.renormalize_dangling) {
            if (g.out_degree(u) == 0 && g.in_degree(u) > 0) w_cit = d;
            if (g.in_degree(u) == 0 && g.out_degree(u) > 0) w_ref = d;
        }
        if (g.out_degree(u) > 0)
            for (NodeId v : base.references(u))
                if (g.present(v)) t[u][v] += w_ref / g.out_degree(u);
        if (g.in_degree(u) > 0)
            for (NodeId v : base.citers(u))
                if (g.present(v)) t[u][v] += w_cit / g.in_degree(u);
    }
    return t;
}

}  // namespace

std::vector<double> dense_darwr(const GraphView& g, const std::vector<double>& prior,
                                const RankParams& params) {
    const NodeId n = g.num_nodes();
    auto t = walk_matrix(g, params);
    // (I - T^t) x = (1-d) prior
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        a[i][i] = 1.0;
        for (NodeId j = 0; j < n; ++j) a[i][j] -= t[j][i];
        b[i] = g.present(i) ? (1.0 - params.damping) * prior[i] : 0.0;
    }
    return solve_dense(std::move(a), std::move(b));
}

std::vector<double> dense_darwr(const CitationGraph& g,
                                const std::vector<NodeId>& seeds,
                                const RankParams& params) {
    GraphView view(g);
    return dense_darwr(view, seed_prior(g.num_nodes(), seeds), params);
}

namespace {

std::vector<double> dense_undirected_walk(const CitationGraph& g,
                                          const RankParams& params,
                                          const std::vector<double>& teleport) {
    const NodeId n = g.num_nodes();
    // x(u) = teleport(u) + d * sum_{w ~ u} x(w)/deg(w)
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < n; ++u) {
        a[u][u] = 1.0;
        for (NodeId w : g.neighbors(u)) a[u][w] -= params.damping / g.degree(w);
    }
    return solve_dense(std::move(a), teleport);
}

}  // namespace

std::vector<double> dense_pagerank(const CitationGraph& g, const RankParams& params) {
    std::vector<double> teleport(static_cast<std::size_t>(g.num_nodes()),
                                 (1.0 - params.damping) / g.num_nodes());
    return dense_undirected_walk(g, params, teleport);
}

std::vector<double> dense_ppr(const CitationGraph& g, const std::vector<NodeId>& seeds,
                              const RankParams& params) {
    auto teleport = seed_prior(g.num_nodes(), seeds);
    for (double& t : teleport) t *= 1.0 - params.damping;
    return dense_undirected_walk(g, params, teleport);
}

std::vector<std::vector<NodeId>> floyd_warshall(const CitationGraph& g) {
    const NodeId n = g.num_nodes();
    std::vector<std::vector<NodeId>> dist(n, std::vector<NodeId>(n, n));
    for (NodeId v = 0; v < n; ++v) {
        dist[v][v] = 0;
        for (NodeId w : g.neighbors(v)) dist[v][w] = 1;
    }
    for (NodeId mid = 0; mid < n; ++mid)
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j)
                if (dist[i][mid] < n && dist[mid][j] < n)
                    dist[i][j] = std::min<NodeId>(
                        dist[i][j],
                        std::min<NodeId>(n, dist[i][mid] + dist[mid][j]));
    return dist;
}

std::vector<NodeId> strict_local_maxima(const CitationGraph& g,
                                        const std::vector<double>& scores) {
    std::vector<NodeId> maxima;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        bool is_max = true;
        for (NodeId w : g.neighbors(v))
            if (!(scores[w] < scores[v])) {
                is_max = false;
                break;
            }
        if (is_max) maxima.push_back(v);
    }
    return maxima;
}

std::vector<NodeId> rlm_trace(const CitationGraph& g, const std::vector<double>& scores,
                              const std::vector<NodeId>& seeds, int k, int gamma) {
    const NodeId n = g.num_nodes();
    std::set<NodeId> seed_set(seeds.begin(), seeds.end());

    std::vector<NodeId> order;
    for (NodeId v = 0; v < n; ++v)
        if (!seed_set.count(v)) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
        if (scores[x] != scores[y]) return scores[x] > scores[y];
        return x < y;
    });
    std::int64_t pool_size = std::min<std::int64_t>(
        static_cast<std::int64_t>(gamma) * k, static_cast<std::int64_t>(order.size()));
    std::set<NodeId> pool(order.begin(), order.begin() + pool_size);

    std::vector<NodeId> picks;
    while (static_cast<int>(picks.size()) < k && !pool.empty()) {
        std::vector<NodeId> maxima;
        for (NodeId v : pool) {
            bool is_max = true;
            for (NodeId w : g.neighbors(v))
                if (pool.count(w) && !(scores[w] < scores[v])) {
                    is_max = false;
                    break;
                }
            if (is_max) maxima.push_back(v);
        }
        if (maxima.empty()) {
            // tied neighbors can leave no strict maximum; take the best
            // remaining candidate so the procedure advances
            NodeId best = -1;
            for (NodeId v : pool)
                if (best < 0 || scores[v] > scores[best] ||
                    (scores[v] == scores[best] && v < best))
                    best = v;
            maxima.push_back(best);
        }
        std::stable_sort(maxima.begin(), maxima.end(), [&](NodeId x, NodeId y) {
            if (scores[x] != scores[y]) return scores[x] > scores[y];
            return x < y;
        });
        std::int64_t quota = k - static_cast<std::int64_t>(picks.size());
        if (static_cast<std::int64_t>(maxima.size()) > quota) maxima.resize(quota);
        for (NodeId v : maxima) {
            picks.push_back(v);
            pool.erase(v);
        }
    }
    return picks;
}

VrrwResult dense_vrrw(const CitationGraph& g, const std::vector<NodeId>& seeds,
                      const RankParams& params, bool cumulative, double alpha) {
    const NodeId n = g.num_nodes();
    std::set<NodeId> seed_set(seeds.begin(), seeds.end());
    auto prior = seed_prior(n, seeds);
    const double d = params.damping;
    const double kappa = params.kappa;

    // Base organic-link structure.
    std::vector<std::vector<double>> p0(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < n; ++u) {
        bool seed = seed_set.count(u) > 0;
        double c = seed ? 1.0 : alpha;
        if (!seed) p0[u][u] = 1.0 - alpha;
        if (g.out_degree(u) > 0)
            for (NodeId v : g.references(u)) p0[u][v] += c * (1.0 - kappa) / g.out_degree(u);
        if (g.in_degree(u) > 0)
            for (NodeId v : g.citers(u)) p0[u][v] += c * kappa / g.in_degree(u);
    }

    VrrwResult out;
    std::vector<double> p(n, 1.0 / n);
    std::vector<double> eta = p;
    out.eta_history.push_back(eta);

    for (int t = 1; t <= params.max_iters; ++t) {
        // Full transition matrix for this iteration.
        std::vector<std::vector<double>> pt(n, std::vector<double>(n, 0.0));
        for (NodeId u = 0; u < n; ++u) {
            double z = 0.0;
            for (NodeId v = 0; v < n; ++v) z += p0[u][v] * eta[v];
            if (z == 0.0) {
                for (NodeId v = 0; v < n; ++v) pt[u][v] = prior[v];
            } else {
                for (NodeId v = 0; v < n; ++v)
                    pt[u][v] = (1.0 - d) * prior[v] + d * p0[u][v] * eta[v] / z;
            }
        }
        std::vector<double> next(n, 0.0);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v) next[v] += pt[u][v] * p[u];

        double res = 0.0;
        for (NodeId v = 0; v < n; ++v) res += (next[v] - p[v]) * (next[v] - p[v]);
        res = std::sqrt(res);
        p = next;
        if (cumulative)
            for (NodeId v = 0; v < n; ++v) eta[v] += p[v];
        else
            eta = p;
        out.eta_history.push_back(eta);
        if (res < params.epsilon) {
            out.converged = true;
            break;
        }
    }
    out.scores = p;
    return out;
}

double dense_goodness(const CitationGraph& g, const std::vector<NodeId>& s,
                      const std::vector<double>& pi, double damping, double kappa) {
    const NodeId n = g.num_nodes();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < n; ++u)
        if (g.out_degree(u) > 0)
            for (NodeId v : g.references(u)) a[u][v] = 1.0 / g.out_degree(u);

    double first = 0.0;
    for (NodeId v : s) first += pi[v];
    double cite_term = 0.0, ref_term = 0.0;
    for (NodeId i : s)
        for (NodeId j : s) {
            cite_term += a[j][i] * pi[j];
            ref_term += a[i][j] * pi[i];
        }
    return 2.0 * first - damping * kappa * cite_term -
           damping * (1.0 - kappa) * ref_term;
}

double exhaustive_goodness_opt(const CitationGraph& g, const std::vector<double>& pi,
                               const std::vector<NodeId>& seeds, int k, double damping,
                               double kappa) {
    std::set<NodeId> seed_set(seeds.begin(), seeds.end());
    std::vector<NodeId> candidates;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (!seed_set.count(v)) candidates.push_back(v);
    if (static_cast<int>(candidates.size()) < k)
        throw std::invalid_argument("not enough candidates for exhaustive search");

    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    double best = -1e300;
    for (;;) {
        std::vector<NodeId> subset;
        for (int i : idx) subset.push_back(candidates[i]);
        best = std::max(best, dense_goodness(g, subset, pi, damping, kappa));

        int pos = k - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(candidates.size()) - k + pos)
            --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

double brute_rel(const std::vector<NodeId>& s, const std::vector<double>& pi,
                 const std::vector<NodeId>& seeds) {
    std::set<NodeId> seed_set(seeds.begin(), seeds.end());
    std::vector<double> ranked;
    for (NodeId v = 0; v < static_cast<NodeId>(pi.size()); ++v)
        if (!seed_set.count(v)) ranked.push_back(pi[v]);
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    double denom = 0.0;
    for (std::size_t i = 0; i < s.size() && i < ranked.size(); ++i) denom += ranked[i];
    double num = 0.0;
    for (NodeId v : s) num += pi[v];
    return denom == 0.0 ? 0.0 : num / denom;
}

double brute_diff(const std::vector<NodeId>& s, const std::vector<NodeId>& s_top) {
    int common = 0;
    for (NodeId a : s)
        for (NodeId b : s_top)
            if (a == b) ++common;
    return 1.0 - static_cast<double>(common) / static_cast<double>(s.size());
}

double brute_use(const std::vector<NodeId>& s, const std::vector<double>& pi,
                 const std::vector<NodeId>& seeds, bool as_printed) {
    std::set<NodeId> seed_set(seeds.begin(), seeds.end());
    std::vector<double> ranked;
    for (NodeId v = 0; v < static_cast<NodeId>(pi.size()); ++v)
        if (!seed_set.count(v)) ranked.push_back(pi[v]);
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    std::size_t cutoff = 10 * s.size();
    if (cutoff > ranked.size()) return 1.0;
    double threshold = ranked[cutoff - 1];
    int count = 0;
    for (NodeId v : s)
        if (as_printed ? pi[v] <= threshold : pi[v] >= threshold) ++count;
    return static_cast<double>(count) / static_cast<double>(s.size());
}

double brute_density(const CitationGraph& g, const std::vector<NodeId>& s, int steps) {
    if (s.size() < 2) return 0.0;
    auto dist = floyd_warshall(g);
    std::int64_t close = 0;
    for (NodeId u : s)
        for (NodeId v : s)
            if (u != v && dist[u][v] <= steps) ++close;
    auto k = static_cast<std::int64_t>(s.size());
    return static_cast<double>(close) / static_cast<double>(k * (k - 1));
}

double brute_expansion_ratio(const CitationGraph& g, const std::vector<NodeId>& s,
                             int steps) {
    if (s.empty()) return 0.0;
    auto dist = floyd_warshall(g);
    int covered = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        NodeId best = g.num_nodes();
        for (NodeId u : s) best = std::min(best, dist[u][v]);
        if (best <= steps) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(g.num_nodes());
}

double brute_avg_pairwise(const CitationGraph& g, const std::vector<NodeId>& s) {
    if (s.size() < 2) return 0.0;
    auto dist = floyd_warshall(g);
    double total = 0.0;
    for (NodeId u : s)
        for (NodeId v : s)
            if (u != v) total += dist[u][v];
    auto k = static_cast<double>(s.size());
    return total / (k * (k - 1));
}

double brute_avg_min_to_seeds(const CitationGraph& g, const std::vector<NodeId>& s,
                              const std::vector<NodeId>& seeds) {
    auto dist = floyd_warshall(g);
    double total = 0.0;
    for (NodeId v : s) {
        NodeId best = g.num_nodes();
        for (NodeId m : seeds) best = std::min(best, dist[v][m]);
        total += best;
    }
    return total / static_cast<double>(s.size());
}

std::vector<std::pair<NodeId, NodeId>> random_edges(NodeId n, double avg_out,
                                                    std::mt19937_64& rng) {
    std::set<std::pair<NodeId, NodeId>> edges;
    auto count = static_cast<std::int64_t>(avg_out * n);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    for (std::int64_t i = 0; i < count; ++i) {
        NodeId u = pick(rng), v = pick(rng);
        if (u != v) edges.emplace(u, v);
    }
    // connect anything the sampler left isolated
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (const auto& [u, v] : edges) touched[u] = touched[v] = true;
    for (NodeId v = 0; v < n; ++v)
        if (!touched[v]) edges.emplace(v, (v + 1) % n);
    return {edges.begin(), edges.end()};
}

CitationGraph random_graph(NodeId n, double avg_out, std::mt19937_64& rng) {
    return CitationGraph::from_edges(n, random_edges(n, avg_out, rng));
}

CitationGraph random_dag(NodeId n, double avg_out, std::mt19937_64& rng) {
    std::set<std::pair<NodeId, NodeId>> edges;
    auto count = static_cast<std::int64_t>(avg_out * n);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    for (std::int64_t i = 0; i < count; ++i) {
        NodeId u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u < v) std::swap(u, v);  // newer (higher id) cites older
        edges.emplace(u, v);
    }
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (const auto& [u, v] : edges) touched[u] = touched[v] = true;
    for (NodeId v = 0; v < n; ++v)
        if (!touched[v]) edges.emplace(std::max<NodeId>(v, (v + 1) % n),
                                       std::min<NodeId>(v, (v + 1) % n));
    std::vector<std::pair<NodeId, NodeId>> list(edges.begin(), edges.end());
    return CitationGraph::from_edges(n, std::move(list));
}

CitationGraph reverse_graph(const CitationGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(g.num_edges()));
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.references(u)) edges.emplace_back(v, u);
    std::vector<int> years;
    if (g.has_metadata()) {
        years.resize(static_cast<std::size_t>(g.num_nodes()));
        for (NodeId v = 0; v < g.num_nodes(); ++v) years[v] = g.year(v);
    }
    return CitationGraph::from_edges(g.num_nodes(), std::move(edges), std::move(years));
}

}  // namespace citerank::oracle
