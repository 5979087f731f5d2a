#include "citerank/ranking.hpp"

#include <cmath>
#include <stdexcept>

namespace citerank {

void RankParams::validate() const {
    if (!(damping > 0.0) || damping > 1.0)
        throw std::invalid_argument("damping must be in (0, 1]");
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("kappa must be in [0, 1]");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
}

std::vector<double> seed_prior(NodeId n, std::span<const NodeId> seeds) {
    if (seeds.empty()) throw std::invalid_argument("seed set is empty");
    std::vector<double> prior(static_cast<std::size_t>(n), 0.0);
    for (NodeId s : seeds) {
        if (s < 0 || s >= n)
            throw std::invalid_argument("seed id " + std::to_string(s) + " out of range");
        prior[s] = 1.0;
    }
    double mass = 0.0;
    for (double p : prior) mass += p;  // duplicate seeds collapse
    for (double& p : prior) p /= mass;
    return prior;
}

namespace {

double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

// One scatter step of the direction-aware walk over the overlay view.
void darwr_step(const GraphView& g, const RankParams& params,
                const std::vector<double>& restart, const std::vector<double>& cur,
                std::vector<double>& next) {
    const CitationGraph& base = g.base();
    const double d = params.damping;
    const double kappa = params.kappa;
    next.assign(cur.size(), 0.0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (!g.present(u) || g.is_sink(u)) continue;
        double pu = cur[u];
        if (pu == 0.0) continue;
        NodeId dout = g.out_degree(u);
        NodeId din = g.in_degree(u);
        double w_ref = d * (1.0 - kappa);
        double w_cit = d * kappa;
        if (params.renormalize_dangling) {
            if (dout == 0 && din > 0) w_cit = d;
            if (din == 0 && dout > 0) w_ref = d;
        }
        if (dout > 0 && w_ref > 0.0) {
            double w = w_ref / dout * pu;
            for (NodeId v : base.references(u))
                if (g.present(v)) next[v] += w;
        }
        if (din > 0 && w_cit > 0.0) {
            double w = w_cit / din * pu;
            for (NodeId v : base.citers(u))
                if (g.present(v)) next[v] += w;
        }
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v) next[v] += restart[v];
}

RankVector darwr_iterate(const GraphView& g, std::span<const double> prior,
                         const RankParams& params, int horizon,
                         std::vector<double>* cumulative) {
    params.validate();
    if (static_cast<NodeId>(prior.size()) != g.num_nodes())
        throw std::invalid_argument("prior size does not match node count");

    RankVector out;
    std::vector<double> restart(prior.begin(), prior.end());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (restart[v] < 0.0) throw std::invalid_argument("negative prior entry");
        if (!g.present(v)) restart[v] = 0.0;
        restart[v] *= 1.0 - params.damping;
    }

    std::vector<double> cur = restart;  // p_0
    std::vector<double> next;
    if (cumulative) *cumulative = cur;

    int cap = horizon > 0 ? horizon : params.max_iters;
    for (int t = 1; t <= cap; ++t) {
        darwr_step(g, params, restart, cur, next);
        double res = l2_diff(next, cur);
        cur.swap(next);
        if (cumulative)
            for (std::size_t i = 0; i < cur.size(); ++i) (*cumulative)[i] += cur[i];
        out.iterations = t;
        out.residual = res;
        out.residuals.push_back(res);
        if (horizon <= 0 && res < params.epsilon) {
            out.converged = true;
            break;
        }
    }
    if (horizon > 0) out.converged = out.residual < params.epsilon;
    out.scores = std::move(cur);
    return out;
}

}  // namespace

RankVector darwr(const GraphView& g, std::span<const NodeId> seeds,
                 const RankParams& params) {
    return darwr_with_prior(g, seed_prior(g.num_nodes(), seeds), params);
}

RankVector darwr(const CitationGraph& g, std::span<const NodeId> seeds,
                 const RankParams& params) {
    GraphView view(g);
    return darwr(view, seeds, params);
}

RankVector darwr_with_prior(const GraphView& g, std::span<const double> prior,
                            const RankParams& params) {
    return darwr_iterate(g, prior, params, 0, nullptr);
}

CumulativeRank darwr_cumulative(const GraphView& g, std::span<const double> prior,
                                const RankParams& params, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    CumulativeRank out;
    out.final_iterate = darwr_iterate(g, prior, params, horizon, &out.cumulative);
    return out;
}

namespace {

// Undirected-walk iteration shared by pagerank and ppr: the teleport
// vector already carries its (1-d) factor.
RankVector undirected_walk(const CitationGraph& g, const RankParams& params,
                           const std::vector<double>& teleport,
                           std::vector<double> init) {
    params.validate();
    const double d = params.damping;
    RankVector out;
    std::vector<double> cur = std::move(init);
    std::vector<double> next(cur.size());
    for (int t = 1; t <= params.max_iters; ++t) {
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
            double sum = 0.0;
            for (NodeId w : g.neighbors(u)) sum += cur[w] / g.degree(w);
            next[u] = teleport[u] + d * sum;
        }
        double res = l2_diff(next, cur);
        cur.swap(next);
        out.iterations = t;
        out.residual = res;
        out.residuals.push_back(res);
        if (res < params.epsilon) {
            out.converged = true;
            break;
        }
    }
    out.scores = std::move(cur);
    return out;
}

}  // namespace

RankVector pagerank(const CitationGraph& g, const RankParams& params) {
    NodeId n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("empty graph");
    std::vector<double> teleport(static_cast<std::size_t>(n),
                                 (1.0 - params.damping) / n);
    std::vector<double> init(static_cast<std::size_t>(n), 1.0 / n);
    return undirected_walk(g, params, teleport, std::move(init));
}

RankVector ppr(const CitationGraph& g, std::span<const NodeId> seeds,
               const RankParams& params) {
    auto prior = seed_prior(g.num_nodes(), seeds);
    std::vector<double> teleport(prior);
    for (double& t : teleport) t *= 1.0 - params.damping;
    return undirected_walk(g, params, teleport, std::move(prior));
}

}  // namespace citerank
