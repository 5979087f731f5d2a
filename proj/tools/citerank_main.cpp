// citerank - batch CLI for citation-graph ranking and result
// diversification. Verbs: rank, bench, sweep, synth, measure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "citerank/experiment.hpp"
#include "citerank/graph.hpp"
#include "citerank/measures.hpp"
#include "citerank/refine.hpp"
#include "citerank/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

using namespace citerank;

struct CommonOpts {
    std::string graph_path;
    std::string meta_path;
    ExperimentConfig config;
    std::vector<std::string> algorithms;
};

void add_param_flags(CLI::App* cmd, ExperimentConfig& config) {
    cmd->add_option("-d,--damping", config.rank.damping, "damping factor d in (0,1]");
    cmd->add_option("--kappa", config.rank.kappa, "direction awareness in [0,1]");
    cmd->add_option("--eps", config.rank.epsilon, "L2 convergence threshold");
    cmd->add_option("--max-iters", config.rank.max_iters, "iteration cap");
    cmd->add_option("--alpha", config.alpha, "DivRank organic-link weight");
    cmd->add_option("--gamma", config.gamma, "RLM relaxation (default: gamma = k)");
    cmd->add_flag("--renormalize-dangling", config.rank.renormalize_dangling,
                  "redistribute a missing direction channel to the surviving one");
    cmd->add_option("--ell", config.ell, "expansion steps for density/coverage")
        ->delimiter(',');
}

CitationGraph load_graph(const std::string& graph_path, const std::string& meta_path,
                         std::vector<std::string>* warnings = nullptr) {
    std::ifstream edges(graph_path);
    if (!edges) throw GraphError("cannot open graph file: " + graph_path);
    std::optional<std::ifstream> meta;
    if (!meta_path.empty()) {
        meta.emplace(meta_path);
        if (!*meta) throw GraphError("cannot open metadata file: " + meta_path);
    }
    LoadStats stats;
    CitationGraph g = load_edge_list(edges, meta ? &*meta : nullptr, &stats);
    if (warnings) {
        if (stats.duplicate_edges > 0)
            warnings->push_back("dropped " + std::to_string(stats.duplicate_edges) +
                                " duplicate edge(s)");
        if (stats.self_loops > 0)
            warnings->push_back("dropped " + std::to_string(stats.self_loops) +
                                " self-loop(s)");
    }
    return g;
}

QuerySet load_query_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open query file: " + path);
    return load_queries(in);
}

std::vector<NodeId> parse_seed_list(const std::string& text) {
    std::istringstream in(text);
    QuerySet qs = load_queries(in);
    if (qs.queries.size() != 1)
        throw std::invalid_argument("expected one comma-separated seed list");
    return qs.queries[0];
}

int cmd_rank(const CommonOpts& opts, const std::string& query,
             const std::string& raw_algorithm, int k, bool with_metrics,
             bool with_trace) {
    std::vector<std::string> warnings;
    CitationGraph g = load_graph(opts.graph_path, opts.meta_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    auto seeds = parse_seed_list(query);
    const std::string algorithm = canonical_algorithm(raw_algorithm);
    ExperimentConfig config = opts.config;
    config.algorithms = {algorithm};
    config.k_values = {k};
    config.validate();

    if (with_trace && (algorithm == "grasshopper" || algorithm == "gsparse" ||
                       algorithm == "feed")) {
        RefinementTrace trace;
        if (algorithm == "grasshopper")
            grasshopper(g, seeds, config.rank, k, &trace);
        else if (algorithm == "gsparse")
            gsparse(g, seeds, config.rank, k, &trace);
        else
            feed(g, seeds, config.rank, k, &trace);
        dump_trace(trace, std::cerr);
    }

    auto [rec, ms] =
        time_algorithm([&] { return run_algorithm(algorithm, g, seeds, config, k); });
    std::cout << "# algorithm=" << rec.algorithm << " k=" << k
              << " partial=" << (rec.partial ? 1 : 0) << " runtime_ms=" << format_real(ms)
              << '\n';
    std::cout << "rank,node,score\n";
    int rank = 1;
    for (const auto& item : rec.items)
        std::cout << rank++ << ',' << item.node << ',' << format_real(item.score) << '\n';

    if (with_metrics) {
        RankVector baseline = darwr(g, seeds, config.rank);
        MetricsReport m =
            compute_metrics(g, rec, baseline, seeds, config.rank, config.use_variant);
        std::cout << "# rel=" << format_real(m.rel) << " diff=" << format_real(m.diff)
                  << " use=" << format_real(m.use)
                  << " goodness=" << format_real(m.goodness) << '\n';
        std::cout << "# dens_1.." << "3=" << format_real(m.dens[0]) << ','
                  << format_real(m.dens[1]) << ',' << format_real(m.dens[2])
                  << " sigma_1..3=" << format_real(m.sigma[0]) << ','
                  << format_real(m.sigma[1]) << ',' << format_real(m.sigma[2]) << '\n';
    }
    return kExitOk;
}

int cmd_bench(const CommonOpts& opts, const std::string& query_path,
              const std::string& out_dir) {
    CitationGraph g = load_graph(opts.graph_path, opts.meta_path);
    QuerySet queries = load_query_file(query_path);
    ExperimentConfig config = opts.config;
    for (auto& a : config.algorithms) a = canonical_algorithm(a);
    config.validate();

    ExperimentResult result = run_experiment(g, queries, config);
    write_experiment(result, out_dir);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "wrote " << result.results.size() << " result row(s), "
              << result.recommendations.size() << " recommendation row(s), "
              << result.aggregates.size() << " aggregate row(s) to " << out_dir << '\n';
    return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, const std::string& query_path,
              const std::string& out_dir, const std::string& param,
              const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    CitationGraph g = load_graph(opts.graph_path, opts.meta_path);
    QuerySet queries = load_query_file(query_path);

    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "sweep.csv");
    out << "param,value," << kAggregateHeader << '\n';

    for (double value : values) {
        ExperimentConfig config = opts.config;
        if (param == "gamma") {
            config.gamma = static_cast<int>(value);
            if (config.gamma < 1)
                throw std::invalid_argument("gamma sweep values must be >= 1");
        } else if (param == "kappa") {
            config.rank.kappa = value;
        } else if (param == "d" || param == "damping") {
            config.rank.damping = value;
        } else {
            throw std::invalid_argument("unknown sweep parameter: " + param);
        }
        for (auto& a : config.algorithms) a = canonical_algorithm(a);
        config.validate();
        ExperimentResult result = run_experiment(g, queries, config);
        std::ostringstream agg;
        write_aggregate_csv(result, agg);
        std::istringstream lines(agg.str());
        std::string line;
        std::getline(lines, line);  // skip header
        while (std::getline(lines, line))
            out << param << ',' << format_real(value) << ',' << line << '\n';
    }
    std::cout << "wrote sweep.csv to " << out_dir << '\n';
    return kExitOk;
}

int cmd_synth(const SyntheticParams& params, const std::string& out_prefix,
              int query_count, int query_min, int query_max,
              std::uint64_t query_seed) {
    CitationGraph g = generate_synthetic(params);
    {
        std::ofstream out(out_prefix + ".edges");
        if (!out) throw GraphError("cannot write " + out_prefix + ".edges");
        save_edge_list(g, out);
    }
    {
        std::ofstream out(out_prefix + ".meta");
        save_metadata(g, out);
    }
    std::cout << "generated graph: " << g.num_nodes() << " nodes, " << g.num_edges()
              << " edges\n";
    if (query_count > 0) {
        QueryGenParams qp;
        qp.count = query_count;
        qp.min_size = query_min;
        qp.max_size = query_max;
        qp.seed = query_seed;
        QuerySet qs{generate_queries(g, qp)};
        std::ofstream out(out_prefix + ".queries");
        save_queries(qs, out);
        std::cout << "generated " << qs.queries.size() << " queries\n";
    }
    return kExitOk;
}

int cmd_measure(const CommonOpts& opts, const std::string& query_path,
                const std::string& rec_path, const std::string& out_dir) {
    CitationGraph g = load_graph(opts.graph_path, opts.meta_path);
    QuerySet queries = load_query_file(query_path);
    ExperimentConfig config = opts.config;
    config.rank.validate();

    std::ifstream in(rec_path);
    if (!in) throw GraphError("cannot open recommendations file: " + rec_path);

    // (query_id, algorithm, k) -> ordered picks
    std::map<std::tuple<int, std::string, int>, RecommendationSet> groups;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("query_id,", 0) == 0) continue;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string qid, algo, k, rank, node, score;
        if (!std::getline(fields, qid, ',') || !std::getline(fields, algo, ',') ||
            !std::getline(fields, k, ',') || !std::getline(fields, rank, ',') ||
            !std::getline(fields, node, ',') || !std::getline(fields, score, ','))
            throw ParseError("malformed recommendation row", lineno);
        try {
            auto key = std::make_tuple(std::stoi(qid), algo, std::stoi(k));
            auto& rec = groups[key];
            rec.algorithm = algo;
            rec.k_requested = std::get<2>(key);
            rec.items.push_back({static_cast<NodeId>(std::stol(node)), std::stod(score)});
        } catch (const std::exception&) {
            throw ParseError("malformed recommendation row", lineno);
        }
    }

    ExperimentResult result;
    std::map<int, RankVector> baselines;
    for (auto& [key, rec] : groups) {
        auto [qid, algo, k] = key;
        ResultRow row{qid, algo, k, std::nullopt, ""};
        if (qid < 0 || qid >= static_cast<int>(queries.queries.size())) {
            row.error = "query_id out of range";
        } else {
            rec.partial = static_cast<int>(rec.items.size()) < k;
            auto& seeds = queries.queries[qid];
            try {
                auto it = baselines.find(qid);
                if (it == baselines.end())
                    it = baselines.emplace(qid, darwr(g, seeds, config.rank)).first;
                row.metrics = compute_metrics(g, rec, it->second, seeds, config.rank,
                                              config.use_variant);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
        result.results.push_back(std::move(row));
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "results.csv");
    write_results_csv(result, out);
    std::cout << "re-scored " << result.results.size() << " recommendation set(s)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation-graph ranking and result diversification toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string query_path, out_dir, rec_path;
    std::string query_text, algorithm = "topk";
    int k = 10;
    bool with_metrics = false;
    bool with_trace = false;

    auto add_common = [&](CLI::App* cmd, bool needs_graph = true) {
        if (needs_graph) {
            cmd->add_option("--graph", opts.graph_path, "edge-list file")->required();
            cmd->add_option("--meta", opts.meta_path, "id/year metadata file");
        }
        add_param_flags(cmd, opts.config);
    };

    auto* rank = app.add_subcommand("rank", "run one query through one algorithm");
    add_common(rank);
    rank->add_option("--query", query_text, "comma-separated seed ids")->required();
    rank->add_option("--algorithm", algorithm, "algorithm name");
    rank->add_option("-k", k, "result count");
    rank->add_flag("--metrics", with_metrics, "also print the measure suite");
    rank->add_flag("--trace", with_trace,
                   "refinement algorithms: per-round log on stderr");

    auto* bench = app.add_subcommand("bench", "full experiment over a query file");
    add_common(bench);
    bench->add_option("--queries", query_path, "query file")->required();
    bench->add_option("--out-dir", out_dir, "output directory")->required();
    bench->add_option("--algorithms", opts.config.algorithms, "algorithm list")
        ->delimiter(',');
    bench->add_option("-k,--k-values", opts.config.k_values, "result counts")
        ->delimiter(',');
    bench->add_option("--threads", opts.config.threads, "worker pool width");

    std::string sweep_param = "gamma";
    std::vector<double> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep (gamma, kappa or d)");
    add_common(sweep);
    sweep->add_option("--queries", query_path, "query file")->required();
    sweep->add_option("--out-dir", out_dir, "output directory")->required();
    sweep->add_option("--param", sweep_param, "gamma | kappa | d");
    sweep->add_option("--values", sweep_values, "sweep values")->delimiter(',')->required();
    sweep->add_option("--algorithms", opts.config.algorithms, "algorithm list")
        ->delimiter(',');
    sweep->add_option("-k,--k-values", opts.config.k_values, "result counts")
        ->delimiter(',');
    sweep->add_option("--threads", opts.config.threads, "worker pool width");

    SyntheticParams synth_params;
    std::string out_prefix;
    int query_count = 0, query_min = 1, query_max = 130;
    std::uint64_t query_seed = 7;
    auto* synth = app.add_subcommand("synth", "generate a year-layered citation graph");
    synth->add_option("--n", synth_params.n, "node count")->required();
    synth->add_option("--layers", synth_params.layers, "year strata");
    synth->add_option("--avg-out-degree", synth_params.avg_out_degree, "edge density");
    synth->add_option("--seed", synth_params.seed, "rng seed");
    synth->add_option("--base-year", synth_params.base_year, "year of the oldest layer");
    synth->add_option("--years-per-layer", synth_params.years_per_layer, "layer width");
    synth->add_option("--out-prefix", out_prefix, "output file prefix")->required();
    synth->add_option("--queries", query_count, "also sample this many queries");
    synth->add_option("--query-min", query_min, "minimum seeds per query");
    synth->add_option("--query-max", query_max, "maximum seeds per query");
    synth->add_option("--query-seed", query_seed, "query sampler seed");

    auto* measure = app.add_subcommand("measure", "re-score an existing recommendation CSV");
    add_common(measure);
    measure->add_option("--queries", query_path, "query file")->required();
    measure->add_option("--recommendations", rec_path, "recommendation CSV")->required();
    measure->add_option("--out-dir", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (rank->parsed())
            return cmd_rank(opts, query_text, algorithm, k, with_metrics, with_trace);
        if (bench->parsed()) return cmd_bench(opts, query_path, out_dir);
        if (sweep->parsed())
            return cmd_sweep(opts, query_path, out_dir, sweep_param, sweep_values);
        if (synth->parsed())
            return cmd_synth(synth_params, out_prefix, query_count, query_min, query_max,
                             query_seed);
        if (measure->parsed()) return cmd_measure(opts, query_path, rec_path, out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitConfig;
}
