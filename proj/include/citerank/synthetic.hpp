// synthetic.hpp - deterministic year-layered citation graph generator
// and a matching query sampler, for tests and desk-scale experiments.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "citerank/graph.hpp"

namespace citerank {

struct SyntheticParams {
    NodeId n = 10000;
    int layers = 10;             // year strata, ascending publication year
    double avg_out_degree = 5.0; // over all nodes
    std::uint64_t seed = 1;
    int base_year = 2000;
    int years_per_layer = 1;
    int topics = 32;             // topical clusters citations mostly stay inside

    void validate() const;
};

// Year-layered DAG: layer L carries year base_year + L*years_per_layer,
// nodes cite only strictly older layers, and targets are drawn with
// preferential attachment so citation counts are heavy-tailed.
// Attachment is biased toward the citing node's own topic cluster, so
// hubs form per topic the way fields form in real citation data.
// Deterministic for a fixed parameter set.
CitationGraph generate_synthetic(const SyntheticParams& params);

struct QueryGenParams {
    int count = 50;
    int min_size = 1;
    int max_size = 130;
    std::uint64_t seed = 7;
    // Restrict seed candidates to publication years in [lo, hi].
    std::optional<std::pair<int, int>> year_window;
};

// Each query is sampled from one 2-hop neighborhood, mimicking a
// bibliography centered on a topic.
std::vector<std::vector<NodeId>> generate_queries(const CitationGraph& g,
                                                  const QueryGenParams& params);

}  // namespace citerank
