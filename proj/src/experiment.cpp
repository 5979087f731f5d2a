#include "citerank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "citerank/refine.hpp"

namespace citerank {

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {
        "topk",   "il1",      "il2",      "lm",      "rlm",    "dragon",
        "pdivrank", "cdivrank", "grasshopper", "gsparse", "feed"};
    return names;
}

bool is_algorithm(const std::string& name) {
    const auto& names = algorithm_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string canonical_algorithm(std::string name) {
    for (char& c : name) c = static_cast<char>(std::tolower(c));
    if (name == "top_k" || name == "darwr") return "topk";
    return name;
}

void ExperimentConfig::validate() const {
    rank.validate();
    if (algorithms.empty()) throw std::invalid_argument("algorithm list is empty");
    for (const auto& a : algorithms)
        if (!is_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
    if (k_values.empty()) throw std::invalid_argument("k list is empty");
    for (int k : k_values)
        if (k < 1) throw std::invalid_argument("k values must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0, 1)");
    if (gamma < 0) throw std::invalid_argument("gamma must be >= 1 (0 selects gamma=k)");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    for (int l : ell)
        if (l < 1 || l > 3) throw std::invalid_argument("ell values must be in {1,2,3}");
}

QuerySet load_queries(std::istream& in) {
    QuerySet qs;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string data = line;
        if (auto hash = data.find('#'); hash != std::string::npos) data.resize(hash);
        // strip whitespace
        auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        std::erase_if(data, is_ws);
        if (data.empty()) continue;

        std::vector<NodeId> seeds;
        std::size_t pos = 0;
        while (pos <= data.size()) {
            std::size_t comma = data.find(',', pos);
            if (comma == std::string::npos) comma = data.size();
            std::string token = data.substr(pos, comma - pos);
            if (token.empty())
                throw ParseError("empty seed id in query", lineno);
            try {
                std::size_t used = 0;
                long long id = std::stoll(token, &used);
                if (used != token.size() || id < 0) throw std::invalid_argument(token);
                seeds.push_back(static_cast<NodeId>(id));
            } catch (const std::exception&) {
                throw ParseError("malformed seed id '" + token + "'", lineno);
            }
            pos = comma + 1;
            if (comma == data.size()) break;
        }
        qs.queries.push_back(std::move(seeds));
    }
    return qs;
}

void save_queries(const QuerySet& qs, std::ostream& out) {
    for (const auto& q : qs.queries) {
        for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << q[i];
        out << '\n';
    }
}

RecommendationSet run_algorithm(const std::string& raw_name, const CitationGraph& g,
                                std::span<const NodeId> seeds,
                                const ExperimentConfig& config, int k) {
    const std::string name = canonical_algorithm(raw_name);
    const RankParams& params = config.rank;
    if (name == "topk") return top_k(darwr(g, seeds, params), seeds, k);
    if (name == "il1") return il_select(g, darwr(g, seeds, params), seeds, k, 1);
    if (name == "il2") return il_select(g, darwr(g, seeds, params), seeds, k, 2);
    if (name == "lm") return local_maxima_select(g, darwr(g, seeds, params), seeds, k);
    if (name == "rlm") {
        int gamma = config.gamma > 0 ? config.gamma : k;
        return rlm_select(g, darwr(g, seeds, params), seeds, k, gamma);
    }
    if (name == "dragon")
        return dragon_select(g, darwr(g, seeds, params), seeds, k, params);
    if (name == "pdivrank")
        return divrank(g, seeds, params, DivRankMode::kPointwise, k, config.alpha);
    if (name == "cdivrank")
        return divrank(g, seeds, params, DivRankMode::kCumulative, k, config.alpha);
    if (name == "grasshopper") return grasshopper(g, seeds, params, k);
    if (name == "gsparse") return gsparse(g, seeds, params, k);
    if (name == "feed") return feed(g, seeds, params, k);
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

struct QueryOutput {
    std::vector<ResultRow> results;
    std::vector<RecRow> recs;
    std::vector<std::string> warnings;
};

QueryOutput run_query(const CitationGraph& g, int query_id,
                      const std::vector<NodeId>& raw_seeds,
                      const ExperimentConfig& config) {
    QueryOutput out;

    std::vector<NodeId> seeds;
    for (NodeId s : raw_seeds) {
        if (s >= 0 && s < g.num_nodes())
            seeds.push_back(s);
        else
            out.warnings.push_back("query " + std::to_string(query_id) +
                                   ": dropped unknown seed " + std::to_string(s));
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    if (seeds.empty()) {
        for (const auto& algo : config.algorithms)
            for (int k : config.k_values)
                out.results.push_back({query_id, algo, k, std::nullopt, "no_valid_seeds"});
        out.warnings.push_back("query " + std::to_string(query_id) +
                               ": skipped, no valid seeds");
        return out;
    }

    RankVector baseline = darwr(g, seeds, config.rank);

    for (const auto& algo : config.algorithms) {
        for (int k : config.k_values) {
            ResultRow row{query_id, algo, k, std::nullopt, ""};
            try {
                auto [rec, ms] = time_algorithm(
                    [&] { return run_algorithm(algo, g, seeds, config, k); });
                MetricsReport report = compute_metrics(g, rec, baseline, seeds,
                                                       config.rank, config.use_variant);
                report.runtime_ms = ms;
                row.metrics = std::move(report);
                int rank = 1;
                for (const auto& item : rec.items)
                    out.recs.push_back({query_id, algo, k, rank++, item.node, item.score});
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            out.results.push_back(std::move(row));
        }
    }
    return out;
}

void sort_rows(ExperimentResult& r) {
    std::sort(r.results.begin(), r.results.end(),
              [](const ResultRow& a, const ResultRow& b) {
                  return std::tie(a.query_id, a.algorithm, a.k) <
                         std::tie(b.query_id, b.algorithm, b.k);
              });
    std::sort(r.recommendations.begin(), r.recommendations.end(),
              [](const RecRow& a, const RecRow& b) {
                  return std::tie(a.query_id, a.algorithm, a.k, a.rank) <
                         std::tie(b.query_id, b.algorithm, b.k, b.rank);
              });
}

void aggregate(ExperimentResult& r) {
    std::map<std::pair<std::string, int>, std::vector<const MetricsReport*>> cells;
    for (const auto& row : r.results)
        if (row.metrics) cells[{row.algorithm, row.k}].push_back(&*row.metrics);

    for (const auto& [key, reports] : cells) {
        AggregateRow agg;
        agg.algorithm = key.first;
        agg.k = key.second;
        agg.queries = static_cast<int>(reports.size());
        double year_sum = 0.0;
        int year_count = 0;
        for (const MetricsReport* m : reports) {
            agg.means.rel += m->rel;
            agg.means.diff += m->diff;
            agg.means.use += m->use;
            agg.means.goodness += m->goodness;
            for (int i = 0; i < 3; ++i) {
                agg.means.dens[i] += m->dens[i];
                agg.means.sigma[i] += m->sigma[i];
            }
            agg.means.avg_pairwise_dist += m->avg_pairwise_dist;
            agg.means.avg_min_dist_to_seeds += m->avg_min_dist_to_seeds;
            agg.means.runtime_ms += m->runtime_ms;
            if (m->avg_year) {
                year_sum += *m->avg_year;
                ++year_count;
            }
        }
        double inv = 1.0 / agg.queries;
        agg.means.rel *= inv;
        agg.means.diff *= inv;
        agg.means.use *= inv;
        agg.means.goodness *= inv;
        for (int i = 0; i < 3; ++i) {
            agg.means.dens[i] *= inv;
            agg.means.sigma[i] *= inv;
        }
        agg.means.avg_pairwise_dist *= inv;
        agg.means.avg_min_dist_to_seeds *= inv;
        agg.means.runtime_ms *= inv;
        if (year_count > 0) {
            agg.means.avg_year = year_sum / year_count;
            agg.has_avg_year = true;
        }
        r.aggregates.push_back(std::move(agg));
    }
}

}  // namespace

ExperimentResult run_experiment(const CitationGraph& g, const QuerySet& queries,
                                const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    if (queries.queries.empty()) {
        result.warnings.push_back("query set is empty; emitting headers only");
        return result;
    }

    std::mutex merge_mutex;
    std::atomic<std::size_t> next_query{0};
    int width = std::min<int>(config.threads, static_cast<int>(queries.queries.size()));

    auto worker = [&] {
        for (;;) {
            std::size_t qi = next_query.fetch_add(1);
            if (qi >= queries.queries.size()) break;
            QueryOutput out =
                run_query(g, static_cast<int>(qi), queries.queries[qi], config);
            std::lock_guard<std::mutex> lock(merge_mutex);
            std::move(out.results.begin(), out.results.end(),
                      std::back_inserter(result.results));
            std::move(out.recs.begin(), out.recs.end(),
                      std::back_inserter(result.recommendations));
            std::move(out.warnings.begin(), out.warnings.end(),
                      std::back_inserter(result.warnings));
        }
    };

    if (width <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < width; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        std::sort(result.warnings.begin(), result.warnings.end());
    }

    sort_rows(result);
    aggregate(result);
    return result;
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

const char* const kResultsHeader =
    "query_id,algorithm,k,rel,diff,use,goodness,dens_1,dens_2,dens_3,"
    "sigma_1,sigma_2,sigma_3,avg_year,avg_pairwise_dist,avg_min_dist_to_M,"
    "runtime_ms,flags";
const char* const kRecommendationsHeader = "query_id,algorithm,k,rank,node,score";
const char* const kAggregateHeader =
    "algorithm,k,queries,rel,diff,use,goodness,dens_1,dens_2,dens_3,"
    "sigma_1,sigma_2,sigma_3,avg_year,avg_pairwise_dist,avg_min_dist_to_M,"
    "runtime_ms";

namespace {

std::string join_flags(const std::vector<std::string>& flags, const std::string& error) {
    std::string out;
    if (!error.empty()) out = "error:" + error;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    // flags must stay a single CSV field
    for (char& c : out)
        if (c == ',' || c == '\n') c = ' ';
    return out;
}

void append_metrics(std::string& line, const MetricsReport& m) {
    line += format_real(m.rel) + ',' + format_real(m.diff) + ',' + format_real(m.use) +
            ',' + format_real(m.goodness);
    for (int i = 0; i < 3; ++i) line += ',' + format_real(m.dens[i]);
    for (int i = 0; i < 3; ++i) line += ',' + format_real(m.sigma[i]);
    line += ',';
    if (m.avg_year) line += format_real(*m.avg_year);
    line += ',' + format_real(m.avg_pairwise_dist) + ',' +
            format_real(m.avg_min_dist_to_seeds) + ',' + format_real(m.runtime_ms);
}

}  // namespace

void write_results_csv(const ExperimentResult& r, std::ostream& out) {
    out << kResultsHeader << '\n';
    for (const auto& row : r.results) {
        std::string line = std::to_string(row.query_id) + ',' + row.algorithm + ',' +
                           std::to_string(row.k) + ',';
        if (row.metrics) {
            std::string metrics;
            append_metrics(metrics, *row.metrics);
            line += metrics + ',' + join_flags(row.metrics->flags, row.error);
        } else {
            line += std::string(13, ',') + ',' + join_flags({}, row.error);
        }
        out << line << '\n';
    }
}

void write_recommendations_csv(const ExperimentResult& r, std::ostream& out) {
    out << kRecommendationsHeader << '\n';
    for (const auto& row : r.recommendations)
        out << row.query_id << ',' << row.algorithm << ',' << row.k << ',' << row.rank
            << ',' << row.node << ',' << format_real(row.score) << '\n';
}

void write_aggregate_csv(const ExperimentResult& r, std::ostream& out) {
    out << kAggregateHeader << '\n';
    for (const auto& row : r.aggregates) {
        std::string line =
            row.algorithm + ',' + std::to_string(row.k) + ',' + std::to_string(row.queries) + ',';
        std::string metrics;
        append_metrics(metrics, row.means);
        out << line << metrics << '\n';
    }
}

void write_experiment(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "results.csv");
        write_results_csv(r, out);
    }
    {
        std::ofstream out(dir / "recommendations.csv");
        write_recommendations_csv(r, out);
    }
    {
        std::ofstream out(dir / "aggregate.csv");
        write_aggregate_csv(r, out);
    }
}

}  // namespace citerank
