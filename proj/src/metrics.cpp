#include "kanon/metrics.hpp"

#include "kanon/errors.hpp"
#include "kanon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace kanon {

std::pair<double, double> eigen_metrics(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return {0.0, 0.0};
    if (n <= kDenseEigenLimit) {
        EigenDecomposition adj = jacobi_eigen(adjacency_matrix(g), n, false);
        EigenDecomposition lap = jacobi_eigen(laplacian_matrix(g), n, false);
        double lambda2 = n >= 2 ? std::max(lap.values[1], 0.0) : 0.0;
        return {adj.values[n - 1], lambda2};
    }
    return {power_lambda_max_adjacency(g), power_lambda2_laplacian(g)};
}

DistanceMetrics distance_metrics(const Graph& g) {
    int n = g.vertex_count();
    DistanceMetrics out;
    long long connected_pairs = 0;
    long long dist_sum = 0;
    double recip_sum = 0.0;

    std::vector<int> dist(n);
    std::vector<int> queue_buf(n);
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        int head = 0, tail = 0;
        queue_buf[tail++] = src;
        while (head < tail) {
            int u = queue_buf[head++];
            for (int nb : g.neighbors(u)) {
                if (dist[nb] < 0) {
                    dist[nb] = dist[u] + 1;
                    queue_buf[tail++] = nb;
                }
            }
        }
        for (int v = src + 1; v < n; ++v) {
            if (dist[v] > 0) {
                ++connected_pairs;
                dist_sum += dist[v];
                recip_sum += 1.0 / dist[v];
            }
        }
    }

    long long all_pairs = static_cast<long long>(n) * (n - 1) / 2;
    out.any_connected_pair = connected_pairs > 0;
    if (connected_pairs > 0) {
        out.avg_path = static_cast<double>(dist_sum) / static_cast<double>(connected_pairs);
        out.harmonic_mean_dist = static_cast<double>(all_pairs) / recip_sum;
    } else {
        out.avg_path = std::numeric_limits<double>::quiet_NaN();
        out.harmonic_mean_dist = std::numeric_limits<double>::infinity();
    }
    return out;
}

namespace {

double global_transitivity(const Graph& g) {
    long long paths2 = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        long long d = g.degree(v);
        paths2 += d * (d - 1) / 2;
    }
    if (paths2 == 0) return 0.0;
    long long triangles3 = 0; // each triangle counted once per edge = 3 times
    for (const Edge& e : g.edges()) {
        auto nu = g.neighbors(e.u);
        auto nv = g.neighbors(e.v);
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i] == nv[j]) {
                ++triangles3;
                ++i;
                ++j;
            } else if (nu[i] < nv[j]) {
                ++i;
            } else {
                ++j;
            }
        }
    }
    // triangles3 = 3 * #triangles, so 3*tri / paths2 == triangles3 / paths2.
    return static_cast<double>(triangles3) / static_cast<double>(paths2);
}

} // namespace

StructureMetrics structure_metrics(const Graph& g, const Clustering& partition) {
    StructureMetrics out;
    out.modularity_defined = g.edge_count() > 0;
    out.modularity = modularity(g, partition);
    out.transitivity = global_transitivity(g);

    int n = g.vertex_count();
    out.subgraph_centrality.assign(n, 0.0);
    if (n > 0) {
        EigenDecomposition eig = jacobi_eigen(adjacency_matrix(g), n, true);
        std::size_t N = static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) {
            double w = std::exp(eig.values[j]);
            const double* vec = eig.vectors.data() + static_cast<std::size_t>(j) * N;
            for (int v = 0; v < n; ++v) out.subgraph_centrality[v] += vec[v] * vec[v] * w;
        }
        double total = 0.0;
        for (double sc : out.subgraph_centrality) total += sc;
        out.subgraph_centrality_mean = total / n;
    }
    return out;
}

GraphMetrics compute_graph_metrics(const Graph& g, const Clustering& partition) {
    GraphMetrics m;
    auto [lmax, l2] = eigen_metrics(g);
    m.lambda_max_adj = lmax;
    m.lambda2_lap = l2;
    DistanceMetrics dm = distance_metrics(g);
    m.avg_path = dm.avg_path;
    m.harmonic_mean_dist = dm.harmonic_mean_dist;
    m.avg_path_defined = dm.any_connected_pair;
    StructureMetrics sm = structure_metrics(g, partition);
    m.modularity = sm.modularity;
    m.modularity_defined = sm.modularity_defined;
    m.transitivity = sm.transitivity;
    m.subgraph_centrality_mean = sm.subgraph_centrality_mean;
    return m;
}

namespace {

double relative_error(double base, double other) {
    return std::abs(other - base) / std::max(std::abs(base), 1e-12);
}

} // namespace

UtilityReport utility_error_report(const Graph& g, const Graph& g2, const Clustering& p1,
                                   const Clustering& p2) {
    if (g.vertex_count() != g2.vertex_count())
        throw ValidationError("graphs have different vertex sets");
    UtilityReport report;
    report.original = compute_graph_metrics(g, p1);
    report.anonymized = compute_graph_metrics(g2, p2);
    const GraphMetrics& a = report.original;
    const GraphMetrics& b = report.anonymized;
    report.errors.lambda_max_adj = relative_error(a.lambda_max_adj, b.lambda_max_adj);
    report.errors.lambda2_lap = relative_error(a.lambda2_lap, b.lambda2_lap);
    report.errors.avg_path = relative_error(a.avg_path, b.avg_path);
    report.errors.harmonic_mean_dist = relative_error(a.harmonic_mean_dist, b.harmonic_mean_dist);
    report.errors.modularity = relative_error(a.modularity, b.modularity);
    report.errors.transitivity = relative_error(a.transitivity, b.transitivity);
    report.errors.subgraph_centrality_mean =
        relative_error(a.subgraph_centrality_mean, b.subgraph_centrality_mean);
    return report;
}

} // namespace kanon
