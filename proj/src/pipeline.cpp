#include "kanon/pipeline.hpp"

#include "kanon/errors.hpp"
#include "kanon/metrics.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace kanon {

namespace {

using ordered_json = nlohmann::ordered_json;

double json_safe(double x) { return x; } // nlohmann serializes NaN/inf as null

ordered_json metrics_json(const GraphMetrics& m) {
    return ordered_json{
        {"lambda_max_adj", json_safe(m.lambda_max_adj)},
        {"lambda2_lap", json_safe(m.lambda2_lap)},
        {"avg_path", json_safe(m.avg_path)},
        {"harmonic_mean_dist", json_safe(m.harmonic_mean_dist)},
        {"modularity", json_safe(m.modularity)},
        {"transitivity", json_safe(m.transitivity)},
        {"subgraph_centrality_mean", json_safe(m.subgraph_centrality_mean)},
        {"avg_path_defined", m.avg_path_defined},
        {"modularity_defined", m.modularity_defined},
    };
}

ordered_json errors_json(const MetricErrors& e) {
    return ordered_json{
        {"lambda_max_adj", json_safe(e.lambda_max_adj)},
        {"lambda2_lap", json_safe(e.lambda2_lap)},
        {"avg_path", json_safe(e.avg_path)},
        {"harmonic_mean_dist", json_safe(e.harmonic_mean_dist)},
        {"modularity", json_safe(e.modularity)},
        {"transitivity", json_safe(e.transitivity)},
        {"subgraph_centrality_mean", json_safe(e.subgraph_centrality_mean)},
    };
}

ordered_json edge_list_json(const std::vector<Edge>& edges) {
    ordered_json arr = ordered_json::array();
    for (const Edge& e : edges) arr.push_back(ordered_json::array({e.u, e.v}));
    return arr;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << text;
    out.flush();
    if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

std::filesystem::path with_k_suffix(const std::filesystem::path& path, int k) {
    std::filesystem::path p = path;
    std::string ext = p.extension().string();
    p.replace_extension();
    p += ".k" + std::to_string(k) + ext;
    return p;
}

struct SingleRun {
    int exit_code = kExitOk;
    std::string line;
    bool produced_output = false;
    UtilityReport report;
    double precision = 1.0;
};

SingleRun run_single(const PipelineConfig& cfg, const Graph& g, int k,
                     const std::filesystem::path& out_graph_path,
                     const std::filesystem::path& report_path) {
    SingleRun run;
    ordered_json doc;
    doc["tool"] = "kanon";
    doc["version"] = kVersion;
    doc["parameters"] = ordered_json{
        {"k", k},
        {"t", cfg.t},
        {"mode", cfg.mode == RealizationKind::strict ? "strict" : "relaxed"},
        {"lambda", cfg.lambda},
        {"time_limit_seconds", cfg.time_limit_seconds},
    };
    doc["input"] = ordered_json{
        {"path", cfg.input.string()},
        {"n", g.vertex_count()},
        {"m", g.edge_count()},
    };

    DegreeSequence seq = degree_sequence(g);
    AnonymizationParams params{k, cfg.t};
    AnonymizedSequence anon = anonymize_sequence(seq, params);
    ChangeVector theta = change_vector(seq, anon.target);

    int n = g.vertex_count();
    VertexCaps caps;
    caps.add.assign(n, 0);
    caps.del.assign(n, 0);
    for (const ChunkParams& chunk : anon.chunks)
        for (int i = chunk.start; i <= chunk.end; ++i) {
            caps.add[seq.order[i]] = chunk.a;
            caps.del[seq.order[i]] = chunk.d;
        }
    if (cfg.a_override) caps.add.assign(n, *cfg.a_override);
    if (cfg.d_override) caps.del.assign(n, *cfg.d_override);

    ordered_json chunks = ordered_json::array();
    for (const ChunkParams& c : anon.chunks)
        chunks.push_back(ordered_json{{"start", c.start},
                                      {"end", c.end},
                                      {"anchor", c.anchor},
                                      {"a", c.a},
                                      {"d", c.d}});
    doc["anonymization"] = ordered_json{
        {"chunks", std::move(chunks)},
        {"theta_total_abs", theta.total_abs()},
        {"theta_sum", theta.sum()},
        {"sequence_k_anonymous_at_t", verify_k_anonymous(anon.target.sorted_values(), k, cfg.t)},
    };

    RealizationMode mode{cfg.mode, cfg.lambda};
    if (!cfg.export_lp.empty()) {
        IlpModel model = cfg.mode == RealizationKind::strict
                             ? build_strict_model(g, theta, caps)
                             : build_relaxed_model(g, theta, caps, mode);
        std::ostringstream lp;
        write_lp(model, lp);
        write_text(cfg.ks.size() > 1 ? with_k_suffix(cfg.export_lp, k) : cfg.export_lp, lp.str());
    }

    SolveLimits limits;
    limits.time_seconds = cfg.time_limit_seconds;
    RealizeResult realized;
    try {
        realized = realize(g, theta, caps, mode, limits);
    } catch (const InfeasibleError& e) {
        doc["realization"] = ordered_json{{"status", "infeasible"}, {"reason", e.what()}};
        write_text(report_path, doc.dump(2) + "\n");
        run.exit_code = kExitInfeasible;
        run.line = std::string("k=") + std::to_string(k) + " " + e.what();
        return run;
    } catch (const TimeoutError& e) {
        doc["realization"] = ordered_json{{"status", "timeout"},
                                          {"bound", e.bound()},
                                          {"has_incumbent", e.has_incumbent()}};
        write_text(report_path, doc.dump(2) + "\n");
        run.exit_code = kExitTimeout;
        run.line = std::string("k=") + std::to_string(k) + " solver timeout";
        return run;
    }

    Graph out_graph = apply_edits(g, realized.plan);
    save_graph(out_graph, out_graph_path);
    run.produced_output = true;

    ordered_json slack_obj = ordered_json::object();
    int max_abs_slack = 0;
    for (int v = 0; v < n; ++v) {
        if (realized.plan.slack_used.empty()) break;
        int s = realized.plan.slack_used[v];
        if (s != 0) slack_obj[std::to_string(v)] = s;
        max_abs_slack = std::max(max_abs_slack, std::abs(s));
    }
    doc["realization"] = ordered_json{
        {"status", "optimal"},
        {"objective", realized.objective},
        {"edit_count", realized.plan.size()},
        {"additions", edge_list_json(realized.plan.additions)},
        {"deletions", edge_list_json(realized.plan.deletions)},
        {"slack", std::move(slack_obj)},
        {"total_slack", realized.total_slack},
        {"nodes_explored", realized.nodes_explored},
    };

    DegreeSequence out_seq = degree_sequence(out_graph);
    doc["verification"] = ordered_json{
        {"output_k_anonymous_at_t", verify_k_anonymous(out_seq, k, cfg.t)},
        {"max_abs_slack", max_abs_slack},
        {"output_k_anonymous_at_t_plus_slack",
         verify_k_anonymous(out_seq, k, cfg.t + max_abs_slack)},
    };

    Clustering p1 = detect_communities(g);
    Clustering p2 = detect_communities(out_graph);
    run.report = utility_error_report(g, out_graph, p1, p2);
    run.precision = precision_index(p1, p2);
    doc["metrics"] = ordered_json{
        {"original", metrics_json(run.report.original)},
        {"anonymized", metrics_json(run.report.anonymized)},
        {"errors", errors_json(run.report.errors)},
    };
    doc["clustering"] = ordered_json{
        {"original_clusters", p1.cluster_count},
        {"anonymized_clusters", p2.cluster_count},
        {"precision_index", run.precision},
        {"precision_error", 1.0 - run.precision},
    };

    write_text(report_path, doc.dump(2) + "\n");

    std::ostringstream line;
    line << "k=" << k << " edits=" << realized.plan.size() << " (add="
         << realized.plan.additions.size() << " del=" << realized.plan.deletions.size()
         << ") slack=" << realized.total_slack << " precision_error=" << (1.0 - run.precision);
    run.line = line.str();
    return run;
}

std::string csv_number(double x) {
    std::ostringstream ss;
    ss.precision(12);
    ss << x;
    return ss.str();
}

} // namespace

RunSummary run_pipeline(const PipelineConfig& cfg) {
    RunSummary summary;
    try {
        if (cfg.ks.empty()) throw ValidationError("at least one k is required");
        for (int k : cfg.ks)
            if (k < 2) throw ValidationError("k must be at least 2");
        if (cfg.t < 0) throw ValidationError("t must be nonnegative");
        if (cfg.time_limit_seconds <= 0) throw ValidationError("time limit must be positive");
        if (cfg.lambda <= 0) throw ValidationError("lambda must be positive");

        LoadResult loaded = load_graph(cfg.input);
        const Graph& g = loaded.graph;

        if (cfg.ks.size() == 1) {
            SingleRun run = run_single(cfg, g, cfg.ks[0], cfg.out_graph, cfg.report);
            summary.exit_code = run.exit_code;
            summary.line = run.line;
            return summary;
        }

        // Batch mode: per-k artifacts plus a cross-k average-error summary
        // and a plot-ready CSV.
        ordered_json per_k = ordered_json::object();
        MetricErrors avg{};
        double avg_precision_error = 0.0;
        int completed = 0;
        int worst_exit = kExitOk;
        std::ostringstream lines;
        std::ostringstream csv;
        csv << "k,lambda_max_adj,lambda2_lap,avg_path,harmonic_mean_dist,modularity,"
               "transitivity,subgraph_centrality_mean,precision_error\n";
        for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
            int k = cfg.ks[i];
            SingleRun run = run_single(cfg, g, k, with_k_suffix(cfg.out_graph, k),
                                       with_k_suffix(cfg.report, k));
            if (i) lines << "; ";
            lines << run.line;
            worst_exit = std::max(worst_exit, run.exit_code);
            if (run.exit_code != kExitOk) continue;
            const MetricErrors& e = run.report.errors;
            per_k[std::to_string(k)] = ordered_json{
                {"errors", errors_json(e)},
                {"precision_error", 1.0 - run.precision},
            };
            avg.lambda_max_adj += e.lambda_max_adj;
            avg.lambda2_lap += e.lambda2_lap;
            avg.avg_path += e.avg_path;
            avg.harmonic_mean_dist += e.harmonic_mean_dist;
            avg.modularity += e.modularity;
            avg.transitivity += e.transitivity;
            avg.subgraph_centrality_mean += e.subgraph_centrality_mean;
            avg_precision_error += 1.0 - run.precision;
            ++completed;
            csv << k << "," << csv_number(e.lambda_max_adj) << "," << csv_number(e.lambda2_lap)
                << "," << csv_number(e.avg_path) << "," << csv_number(e.harmonic_mean_dist) << ","
                << csv_number(e.modularity) << "," << csv_number(e.transitivity) << ","
                << csv_number(e.subgraph_centrality_mean) << "," << csv_number(1.0 - run.precision)
                << "\n";
        }
        if (completed > 0) {
            double inv = 1.0 / completed;
            avg.lambda_max_adj *= inv;
            avg.lambda2_lap *= inv;
            avg.avg_path *= inv;
            avg.harmonic_mean_dist *= inv;
            avg.modularity *= inv;
            avg.transitivity *= inv;
            avg.subgraph_centrality_mean *= inv;
            avg_precision_error *= inv;
        }
        ordered_json doc;
        doc["tool"] = "kanon";
        doc["version"] = kVersion;
        doc["input"] = cfg.input.string();
        doc["k_values"] = cfg.ks;
        doc["t"] = cfg.t;
        doc["per_k"] = std::move(per_k);
        doc["average_errors"] = errors_json(avg);
        doc["average_precision_error"] = avg_precision_error;
        doc["completed_runs"] = completed;
        write_text(cfg.report, doc.dump(2) + "\n");

        std::filesystem::path csv_path = cfg.report;
        csv_path.replace_extension(".csv");
        write_text(csv_path, csv.str());

        summary.exit_code = worst_exit;
        summary.line = lines.str();
        return summary;
    } catch (const ParseError& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("error: ") + e.what();
    } catch (const ValidationError& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("internal error: ") + e.what();
    }
    return summary;
}

RunSummary evaluate(const std::filesystem::path& original, const std::filesystem::path& anonymized,
                    const std::filesystem::path& report) {
    RunSummary summary;
    try {
        LoadResult a = load_graph(original);
        LoadResult b = load_graph(anonymized);
        if (a.graph.vertex_count() != b.graph.vertex_count())
            throw ValidationError("graphs have different vertex counts");

        Clustering p1 = detect_communities(a.graph);
        Clustering p2 = detect_communities(b.graph);
        UtilityReport rep = utility_error_report(a.graph, b.graph, p1, p2);
        double precision = precision_index(p1, p2);

        ordered_json doc;
        doc["tool"] = "kanon";
        doc["version"] = kVersion;
        doc["original"] = original.string();
        doc["anonymized"] = anonymized.string();
        doc["metrics"] = ordered_json{
            {"original", metrics_json(rep.original)},
            {"anonymized", metrics_json(rep.anonymized)},
            {"errors", errors_json(rep.errors)},
        };
        doc["clustering"] = ordered_json{
            {"original_clusters", p1.cluster_count},
            {"anonymized_clusters", p2.cluster_count},
            {"precision_index", precision},
            {"precision_error", 1.0 - precision},
        };
        write_text(report, doc.dump(2) + "\n");

        std::ostringstream line;
        line << "precision_error=" << (1.0 - precision)
             << " lambda_max_err=" << rep.errors.lambda_max_adj;
        summary.line = line.str();
        return summary;
    } catch (const ParseError& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("error: ") + e.what();
    } catch (const ValidationError& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
        summary.exit_code = kExitError;
        summary.line = std::string("internal error: ") + e.what();
    }
    return summary;
}

} // namespace kanon
