#include "citerank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <istream>
#include <ostream>

namespace citerank {

namespace {

void build_csr(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges,
               bool reversed, std::vector<std::int64_t>& offsets,
               std::vector<NodeId>& targets) {
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, v] : edges) offsets[(reversed ? v : u) + 1]++;
    for (NodeId i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.resize(edges.size());
    std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : edges) {
        NodeId s = reversed ? v : u;
        NodeId t = reversed ? u : v;
        targets[cursor[s]++] = t;
    }
    for (NodeId i = 0; i < n; ++i)
        std::sort(targets.begin() + offsets[i], targets.begin() + offsets[i + 1]);
}

}  // namespace

CitationGraph CitationGraph::from_edges(NodeId n,
                                        std::vector<std::pair<NodeId, NodeId>> edges,
                                        std::vector<int> years, LoadStats* stats) {
    if (n < 0) throw GraphError("negative node count");
    CitationGraph g;
    g.n_ = n;

    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") out of range [0, " + std::to_string(n) + ")");
    }

    std::int64_t self_loops = 0;
    std::erase_if(edges, [&](const auto& e) {
        if (e.first == e.second) {
            ++self_loops;
            return true;
        }
        return false;
    });

    std::sort(edges.begin(), edges.end());
    std::int64_t before = static_cast<std::int64_t>(edges.size());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (stats) {
        stats->self_loops += self_loops;
        stats->duplicate_edges += before - static_cast<std::int64_t>(edges.size());
    }

    build_csr(n, edges, false, g.fwd_offsets_, g.fwd_targets_);
    build_csr(n, edges, true, g.rev_offsets_, g.rev_targets_);

    // Undirected union, deduplicated where both directions exist.
    {
        std::vector<std::pair<NodeId, NodeId>> und;
        und.reserve(edges.size() * 2);
        for (const auto& [u, v] : edges) {
            und.emplace_back(u, v);
            und.emplace_back(v, u);
        }
        std::sort(und.begin(), und.end());
        und.erase(std::unique(und.begin(), und.end()), und.end());
        build_csr(n, und, false, g.und_offsets_, g.und_targets_);
    }

    std::int64_t isolated = 0;
    NodeId first_isolated = -1;
    for (NodeId v = 0; v < n; ++v) {
        if (g.und_offsets_[v] == g.und_offsets_[v + 1]) {
            if (first_isolated < 0) first_isolated = v;
            ++isolated;
        }
    }
    if (isolated > 0)
        throw GraphError("graph has " + std::to_string(isolated) +
                         " isolated node(s), first id " + std::to_string(first_isolated));

    if (!years.empty()) {
        if (static_cast<NodeId>(years.size()) != n)
            throw GraphError("metadata size mismatch: " + std::to_string(years.size()) +
                             " entries for " + std::to_string(n) + " nodes");
        g.years_ = std::move(years);
    }
    return g;
}

bool CitationGraph::mirror_consistent() const {
    if (fwd_targets_.size() != rev_targets_.size()) return false;
    for (NodeId u = 0; u < n_; ++u) {
        for (NodeId v : references(u)) {
            auto cs = citers(v);
            if (!std::binary_search(cs.begin(), cs.end(), u)) return false;
        }
    }
    return true;
}

namespace {

// Splits a data line into integer fields; returns false for blank or
// comment lines.
bool parse_fields(const std::string& line, std::int64_t lineno, int expected,
                  long long* out) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                     line[pos] == '\r'))
            ++pos;
    };
    skip_ws();
    if (pos >= line.size() || line[pos] == '#') return false;
    for (int f = 0; f < expected; ++f) {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
               line[pos] != '\r')
            ++pos;
        auto res = std::from_chars(line.data() + start, line.data() + pos, out[f]);
        if (res.ec != std::errc() || res.ptr != line.data() + pos || start == pos)
            throw ParseError("malformed field '" + line.substr(start, pos - start) + "'",
                             lineno);
    }
    skip_ws();
    if (pos < line.size() && line[pos] != '#')
        throw ParseError("trailing data '" + line.substr(pos) + "'", lineno);
    return true;
}

}  // namespace

CitationGraph load_edge_list(std::istream& edges, std::istream* meta, LoadStats* stats,
                             std::optional<NodeId> declared_n) {
    std::vector<std::pair<NodeId, NodeId>> parsed;
    std::string line;
    std::int64_t lineno = 0;
    long long max_id = -1;
    long long fields[2];
    while (std::getline(edges, line)) {
        ++lineno;
        if (!parse_fields(line, lineno, 2, fields)) continue;
        long long u = fields[0], v = fields[1];
        if (u < 0 || v < 0) throw ParseError("negative node id", lineno);
        if (declared_n && (u >= *declared_n || v >= *declared_n))
            throw GraphError("edge id " + std::to_string(std::max(u, v)) +
                             " >= declared node count " + std::to_string(*declared_n));
        if (u > std::numeric_limits<NodeId>::max() || v > std::numeric_limits<NodeId>::max())
            throw ParseError("node id too large", lineno);
        max_id = std::max({max_id, u, v});
        parsed.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    NodeId n = declared_n ? *declared_n : static_cast<NodeId>(max_id + 1);

    std::vector<int> years;
    if (meta) {
        years.assign(static_cast<std::size_t>(n), kYearUnknown);
        std::int64_t mline = 0;
        while (std::getline(*meta, line)) {
            ++mline;
            if (!parse_fields(line, mline, 2, fields)) continue;
            long long id = fields[0];
            if (id < 0 || id >= n)
                throw GraphError("metadata id " + std::to_string(id) +
                                 " out of range [0, " + std::to_string(n) + ")");
            if (years[id] != kYearUnknown && stats) stats->meta_overwrites++;
            years[id] = static_cast<int>(fields[1]);
        }
    }
    return CitationGraph::from_edges(n, std::move(parsed), std::move(years), stats);
}

void save_edge_list(const CitationGraph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.references(u)) out << u << ' ' << v << '\n';
}

void save_metadata(const CitationGraph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (g.has_year(u)) out << u << ' ' << g.year(u) << '\n';
}

DistanceField bfs_undirected(const CitationGraph& g, NodeId source) {
    g.check_node(source);
    DistanceField f;
    f.source = source;
    f.unreachable = g.num_nodes();
    f.dist = bfs_undirected_multi(g, std::span<const NodeId>(&source, 1));
    return f;
}

std::vector<NodeId> bfs_undirected_multi(const CitationGraph& g,
                                         std::span<const NodeId> sources) {
    NodeId n = g.num_nodes();
    std::vector<NodeId> dist(static_cast<std::size_t>(n), n);
    std::deque<NodeId> queue;
    for (NodeId s : sources) {
        g.check_node(s);
        if (dist[s] == n) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] == n) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<NodeId> expansion_set(const CitationGraph& g, std::span<const NodeId> s,
                                  int steps) {
    if (steps < 1) throw GraphError("expansion steps must be >= 1");
    NodeId n = g.num_nodes();
    auto dist = bfs_undirected_multi(g, s);
    std::vector<NodeId> result;
    for (NodeId v = 0; v < n; ++v)
        if (dist[v] <= steps && dist[v] < n) result.push_back(v);
    return result;
}

GraphView::GraphView(const CitationGraph& g)
    : base_(&g),
      removed_(static_cast<std::size_t>(g.num_nodes()), 0),
      sink_(static_cast<std::size_t>(g.num_nodes()), 0),
      out_deg_(static_cast<std::size_t>(g.num_nodes())),
      in_deg_(static_cast<std::size_t>(g.num_nodes())),
      present_count_(g.num_nodes()),
      edges_(g.num_edges()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        out_deg_[v] = g.out_degree(v);
        in_deg_[v] = g.in_degree(v);
    }
}

bool GraphView::remove_vertex(NodeId v) {
    base_->check_node(v);
    if (removed_[v]) return false;
    edges_ -= out_deg_[v] + in_deg_[v];
    for (NodeId w : base_->references(v))
        if (!removed_[w]) in_deg_[w]--;
    for (NodeId w : base_->citers(v))
        if (!removed_[w]) out_deg_[w]--;
    out_deg_[v] = 0;
    in_deg_[v] = 0;
    removed_[v] = 1;
    present_count_--;
    return true;
}

void GraphView::make_sink(NodeId v) {
    base_->check_node(v);
    sink_[v] = 1;
}

GraphView remove_vertex(const CitationGraph& g, NodeId v) {
    GraphView view(g);
    view.remove_vertex(v);
    return view;
}

GraphView make_sink(const CitationGraph& g, NodeId v) {
    GraphView view(g);
    view.make_sink(v);
    return view;
}

}  // namespace citerank
