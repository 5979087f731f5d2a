// graph.hpp - immutable directed citation graph in CSR form, plus the
// overlay views (vertex removal, sink conversion) used by the
// query-refinement rankers.
//
// Edge u->v means "u cites v". The reverse lists (citers) and a
// deduplicated undirected neighbor list are built once at load time.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace citerank {

using NodeId = std::int32_t;

// Sentinel for nodes without publication metadata.
inline constexpr int kYearUnknown = std::numeric_limits<int>::min();

// Counters reported by the loaders; real citation dumps contain
// duplicate edges and self-loops, both are dropped silently.
struct LoadStats {
    std::int64_t duplicate_edges = 0;
    std::int64_t self_loops = 0;
    std::int64_t meta_overwrites = 0;
};

// Malformed input line; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::int64_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    std::int64_t line() const { return line_; }

private:
    std::int64_t line_;
};

// Structural violation (out-of-range ID, isolated node, ...).
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable directed citation graph.
///
/// Node IDs are dense integers [0, n). Three sorted adjacency
/// structures are kept: references (out-edges), citers (in-edges) and
/// the deduplicated undirected union. Every node is guaranteed to have
/// at least one incident edge; isolated IDs are rejected at build time.
class CitationGraph {
public:
    CitationGraph() = default;

    // Validates, drops self-loops and duplicates (counted into `stats`),
    // and rejects isolated nodes. `years` may be empty or size n.
    static CitationGraph from_edges(NodeId n,
                                    std::vector<std::pair<NodeId, NodeId>> edges,
                                    std::vector<int> years = {},
                                    LoadStats* stats = nullptr);

    NodeId num_nodes() const { return n_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(fwd_targets_.size()); }

    // Papers cited by u (edge u->v).
    std::span<const NodeId> references(NodeId u) const {
        return row(fwd_offsets_, fwd_targets_, u);
    }
    // Papers citing u (edge v->u).
    std::span<const NodeId> citers(NodeId u) const {
        return row(rev_offsets_, rev_targets_, u);
    }
    // Undirected neighbors, each counted once even if both directions exist.
    std::span<const NodeId> neighbors(NodeId u) const {
        return row(und_offsets_, und_targets_, u);
    }

    NodeId out_degree(NodeId u) const { return static_cast<NodeId>(references(u).size()); }
    NodeId in_degree(NodeId u) const { return static_cast<NodeId>(citers(u).size()); }
    NodeId degree(NodeId u) const { return static_cast<NodeId>(neighbors(u).size()); }

    bool has_year(NodeId u) const { return !years_.empty() && years_[u] != kYearUnknown; }
    int year(NodeId u) const { return years_.empty() ? kYearUnknown : years_[u]; }
    bool has_metadata() const { return !years_.empty(); }

    // O(|E|) mirror check: (u,v) in references[u] <=> u in citers[v].
    bool mirror_consistent() const;

    void check_node(NodeId v) const {
        if (v < 0 || v >= n_)
            throw GraphError("node id " + std::to_string(v) + " out of range [0, " +
                             std::to_string(n_) + ")");
    }

private:
    std::span<const NodeId> row(const std::vector<std::int64_t>& offs,
                                const std::vector<NodeId>& tgts, NodeId u) const {
        check_node(u);
        return {tgts.data() + offs[u], static_cast<std::size_t>(offs[u + 1] - offs[u])};
    }

    NodeId n_ = 0;
    std::vector<std::int64_t> fwd_offsets_, rev_offsets_, und_offsets_;
    std::vector<NodeId> fwd_targets_, rev_targets_, und_targets_;
    std::vector<int> years_;
};

// Edge-list loader: one `src dst` pair per line, whitespace separated,
// `#` comment lines and blank lines ignored. If `declared_n` is given,
// IDs >= n are range errors; otherwise n = max ID + 1. The optional
// metadata stream holds `id year` lines.
CitationGraph load_edge_list(std::istream& edges, std::istream* meta = nullptr,
                             LoadStats* stats = nullptr,
                             std::optional<NodeId> declared_n = std::nullopt);

void save_edge_list(const CitationGraph& g, std::ostream& out);
void save_metadata(const CitationGraph& g, std::ostream& out);

/// Hop distances from one source over the undirected view.
/// Unreachable nodes carry the sentinel n (never a valid hop count).
struct DistanceField {
    NodeId source = 0;
    std::vector<NodeId> dist;
    NodeId unreachable = 0;  // == n
};

DistanceField bfs_undirected(const CitationGraph& g, NodeId source);

// Multi-source variant: dist[v] = min over sources, sentinel n.
std::vector<NodeId> bfs_undirected_multi(const CitationGraph& g,
                                         std::span<const NodeId> sources);

// N_steps(S): S plus every node within `steps` undirected hops of S.
// Returned sorted ascending.
std::vector<NodeId> expansion_set(const CitationGraph& g, std::span<const NodeId> s,
                                  int steps);

/// Cheap overlay over an immutable base graph. Tracks removed vertices
/// (all incident edges gone, degrees of neighbors adjusted) and sink
/// vertices (incoming transitions kept, outgoing suppressed). The base
/// graph is never mutated; a view is confined to one query.
class GraphView {
public:
    explicit GraphView(const CitationGraph& g);

    const CitationGraph& base() const { return *base_; }
    NodeId num_nodes() const { return base_->num_nodes(); }

    bool present(NodeId v) const { return !removed_[v]; }
    bool is_sink(NodeId v) const { return sink_[v] != 0; }
    NodeId out_degree(NodeId v) const { return out_deg_[v]; }
    NodeId in_degree(NodeId v) const { return in_deg_[v]; }

    NodeId present_count() const { return present_count_; }
    std::int64_t num_edges() const { return edges_; }

    // Removes v and its incident edges. Returns false (no-op) if v was
    // already absent.
    bool remove_vertex(NodeId v);

    // Suppresses all outgoing transitions of v; idempotent.
    void make_sink(NodeId v);

private:
    const CitationGraph* base_;
    std::vector<std::uint8_t> removed_, sink_;
    std::vector<NodeId> out_deg_, in_deg_;
    NodeId present_count_ = 0;
    std::int64_t edges_ = 0;
};

GraphView remove_vertex(const CitationGraph& g, NodeId v);
GraphView make_sink(const CitationGraph& g, NodeId v);

}  // namespace citerank
