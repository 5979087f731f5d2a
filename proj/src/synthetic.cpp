#include "citerank/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace citerank {

// Share of target draws that follow the rich-get-richer ticket pool;
// the rest are uniform within the topic.
constexpr double kPreferentialShare = 0.5;

void SyntheticParams::validate() const {
    if (layers < 2) throw std::invalid_argument("layers must be >= 2");
    if (n < layers) throw std::invalid_argument("n must be >= layers");
    if (!(avg_out_degree > 0.0))
        throw std::invalid_argument("avg_out_degree must be positive");
    if (years_per_layer < 1) throw std::invalid_argument("years_per_layer must be >= 1");
    if (topics < 1) throw std::invalid_argument("topics must be >= 1");
}

CitationGraph generate_synthetic(const SyntheticParams& params) {
    params.validate();
    const NodeId n = params.n;
    const int layers = params.layers;
    const int topics = std::min<int>(params.topics, n);
    std::mt19937_64 rng(params.seed);

    // Nodes 0..n-1 in layer order; the last layer absorbs the remainder.
    const NodeId layer_size = n / layers;
    auto layer_of = [&](NodeId v) {
        return std::min<int>(static_cast<int>(v / layer_size), layers - 1);
    };
    std::vector<NodeId> layer_start(layers + 1, n);
    for (int L = 0; L < layers; ++L) layer_start[L] = static_cast<NodeId>(L) * layer_size;
    layer_start[layers] = n;

    std::vector<int> years(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v)
        years[v] = params.base_year + layer_of(v) * params.years_per_layer;

    std::vector<int> topic(static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> pick_topic(0, topics - 1);
    for (NodeId v = 0; v < n; ++v) topic[v] = pick_topic(rng);

    // Total edge budget spread over citing nodes (layer >= 1), one
    // guaranteed citation each so no node ends up without references.
    const NodeId first_citing = layer_start[1];
    const std::int64_t citing = n - first_citing;
    std::int64_t budget = std::llround(params.avg_out_degree * n);
    budget = std::max(budget, citing);

    // Rich-get-richer per topic: every received citation adds another
    // ticket for the target inside its own topic pool. Half of the
    // draws ignore the tickets and pick uniformly within the topic so
    // hubs stay heavy-tailed without swallowing the whole corpus.
    std::vector<std::vector<NodeId>> tickets(static_cast<std::size_t>(topics));
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(topics));
    for (NodeId v = 0; v < first_citing; ++v) tickets[topic[v]].push_back(v);
    for (NodeId v = 0; v < n; ++v) members[topic[v]].push_back(v);  // id-ordered

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(budget));
    std::unordered_set<NodeId> chosen;
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (NodeId u = first_citing; u < n; ++u) {
        std::int64_t remaining_nodes = n - u;
        std::int64_t want = (budget - static_cast<std::int64_t>(edges.size()) +
                             remaining_nodes - 1) /
                            remaining_nodes;
        const NodeId older = layer_start[layer_of(u)];
        want = std::min<std::int64_t>(std::max<std::int64_t>(want, 1), older);

        chosen.clear();
        std::int64_t attempts = 0;
        while (static_cast<std::int64_t>(chosen.size()) < want &&
               attempts < 30 * want) {
            ++attempts;
            // mostly the own topic, sometimes an adjacent one
            double c = coin(rng);
            int b = topic[u];
            if (topics > 1) {
                if (c < 0.05)
                    b = (b + 1) % topics;
                else if (c < 0.10)
                    b = (b + topics - 1) % topics;
            }
            NodeId target;
            if (coin(rng) < kPreferentialShare) {
                const auto& pool = tickets[b];
                if (pool.empty()) continue;
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                target = pool[pick(rng)];
            } else {
                const auto& mem = members[b];
                auto end = std::lower_bound(mem.begin(), mem.end(), older);
                if (end == mem.begin()) continue;
                std::uniform_int_distribution<std::size_t> pick(
                    0, static_cast<std::size_t>(end - mem.begin()) - 1);
                target = mem[pick(rng)];
            }
            if (target >= older) continue;  // ticket from a layer not older than u
            chosen.insert(target);
        }
        // Fill any shortfall uniformly from older nodes.
        std::uniform_int_distribution<NodeId> uni(0, older - 1);
        while (static_cast<std::int64_t>(chosen.size()) < want)
            chosen.insert(uni(rng));

        std::vector<NodeId> targets(chosen.begin(), chosen.end());
        std::sort(targets.begin(), targets.end());
        for (NodeId v : targets) {
            edges.emplace_back(u, v);
            tickets[topic[v]].push_back(v);
        }
        tickets[topic[u]].push_back(u);  // u becomes citable by newer layers
    }

    // Give never-cited old nodes one citation so nothing is isolated;
    // 0-out-degree nodes exist only in layer 0, which is covered here.
    std::vector<NodeId> in_deg(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> out_deg(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
        out_deg[u]++;
        in_deg[v]++;
    }
    for (NodeId v = 0; v < n; ++v) {
        if (in_deg[v] + out_deg[v] > 0) continue;
        std::uniform_int_distribution<NodeId> uni(layer_start[layer_of(v) + 1], n - 1);
        edges.emplace_back(uni(rng), v);
    }

    return CitationGraph::from_edges(n, std::move(edges), std::move(years));
}

std::vector<std::vector<NodeId>> generate_queries(const CitationGraph& g,
                                                  const QueryGenParams& params) {
    if (params.count < 1) throw std::invalid_argument("query count must be >= 1");
    if (params.min_size < 1 || params.max_size < params.min_size)
        throw std::invalid_argument("invalid query size range");
    std::mt19937_64 rng(params.seed);

    auto in_window = [&](NodeId v) {
        if (!params.year_window) return true;
        if (!g.has_year(v)) return false;
        return g.year(v) >= params.year_window->first &&
               g.year(v) <= params.year_window->second;
    };

    std::vector<NodeId> candidates;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (in_window(v)) candidates.push_back(v);
    if (candidates.empty()) throw std::invalid_argument("no nodes in the year window");

    std::vector<std::vector<NodeId>> queries;
    std::uniform_int_distribution<std::size_t> pick_center(0, candidates.size() - 1);
    std::uniform_int_distribution<int> pick_size(params.min_size, params.max_size);

    while (static_cast<int>(queries.size()) < params.count) {
        NodeId center = candidates[pick_center(rng)];
        // 2-hop neighborhood pool around the center
        std::vector<NodeId> pool;
        for (NodeId v : expansion_set(g, std::span<const NodeId>(&center, 1), 2))
            if (in_window(v)) pool.push_back(v);
        if (pool.empty()) continue;

        int size = std::min<int>(pick_size(rng), static_cast<int>(pool.size()));
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<NodeId> query(pool.begin(), pool.begin() + size);
        std::sort(query.begin(), query.end());
        queries.push_back(std::move(query));
    }
    return queries;
}

}  // namespace citerank
