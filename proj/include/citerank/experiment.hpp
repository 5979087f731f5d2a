// experiment.hpp - batch harness: run every (query, algorithm, k) cell,
// score it, and emit deterministic CSV tables.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citerank/graph.hpp"
#include "citerank/measures.hpp"
#include "citerank/ranking.hpp"
#include "citerank/select.hpp"

namespace citerank {

// Canonical algorithm names accepted by the harness.
const std::vector<std::string>& algorithm_names();
bool is_algorithm(const std::string& name);

// Accepts aliases (top_k, darwr) and returns the canonical name;
// unknown names pass through unchanged.
std::string canonical_algorithm(std::string name);

struct ExperimentConfig {
    std::vector<std::string> algorithms = algorithm_names();
    std::vector<int> k_values{5, 10, 20, 50, 100};
    RankParams rank;             // d=0.9, kappa=0.75, eps=1e-8, max_iters=1000
    double alpha = 0.25;         // DivRank organic-link weight
    int gamma = 0;               // RLM relaxation; 0 means "use k"
    std::vector<int> ell{1, 2, 3};
    UsefulnessVariant use_variant = UsefulnessVariant::kWithinTopRange;
    int threads = 1;

    void validate() const;
};

struct QuerySet {
    std::vector<std::vector<NodeId>> queries;
};

// One query per line, comma-separated seed ids, `#` comments ignored.
QuerySet load_queries(std::istream& in);
void save_queries(const QuerySet& qs, std::ostream& out);

struct ResultRow {
    int query_id = 0;
    std::string algorithm;
    int k = 0;
    std::optional<MetricsReport> metrics;  // empty on per-cell failure
    std::string error;
};

struct RecRow {
    int query_id = 0;
    std::string algorithm;
    int k = 0;
    int rank = 0;  // 1-based position in the recommendation set
    NodeId node = 0;
    double score = 0.0;
};

struct AggregateRow {
    std::string algorithm;
    int k = 0;
    int queries = 0;  // cells that produced metrics
    MetricsReport means;
    bool has_avg_year = false;
};

struct ExperimentResult {
    std::vector<ResultRow> results;        // sorted by (query, algorithm, k)
    std::vector<RecRow> recommendations;   // sorted by (query, algorithm, k, rank)
    std::vector<AggregateRow> aggregates;  // sorted by (algorithm, k)
    std::vector<std::string> warnings;
};

// Runs every cell; failures become error rows and the batch continues.
ExperimentResult run_experiment(const CitationGraph& g, const QuerySet& queries,
                                const ExperimentConfig& config);

// Runs one algorithm end to end (including whatever ranking it needs).
RecommendationSet run_algorithm(const std::string& name, const CitationGraph& g,
                                std::span<const NodeId> seeds,
                                const ExperimentConfig& config, int k);

// CSV emission. Headers are fixed; floats use 9 significant digits.
extern const char* const kResultsHeader;
extern const char* const kRecommendationsHeader;
extern const char* const kAggregateHeader;

void write_results_csv(const ExperimentResult& r, std::ostream& out);
void write_recommendations_csv(const ExperimentResult& r, std::ostream& out);
void write_aggregate_csv(const ExperimentResult& r, std::ostream& out);

// Convenience: writes results.csv, recommendations.csv, aggregate.csv.
void write_experiment(const ExperimentResult& r, const std::filesystem::path& dir);

std::string format_real(double value);  // %.9g

// Wall time of one invocation on the monotonic clock, in milliseconds.
template <typename F>
auto time_algorithm(F&& fn) -> std::pair<decltype(fn()), double> {
    auto start = std::chrono::steady_clock::now();
    auto result = fn();
    auto elapsed = std::chrono::steady_clock::now() - start;
    return {std::move(result),
            std::chrono::duration<double, std::milli>(elapsed).count()};
}

}  // namespace citerank
