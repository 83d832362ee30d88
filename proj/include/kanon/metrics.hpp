#ifndef KANON_METRICS_HPP
#define KANON_METRICS_HPP

#include "kanon/clustering.hpp"
#include "kanon/graph.hpp"

#include <vector>

namespace kanon {

struct DistanceMetrics {
    double avg_path = 0.0;           // NaN when no connected pair exists
    double harmonic_mean_dist = 0.0; // +inf when no connected pair exists
    bool any_connected_pair = false;
};

struct StructureMetrics {
    double modularity = 0.0;
    bool modularity_defined = false; // false when the graph has no edges
    double transitivity = 0.0;
    std::vector<double> subgraph_centrality; // per vertex
    double subgraph_centrality_mean = 0.0;
};

/// The seven utility measures of one graph.
struct GraphMetrics {
    double lambda_max_adj = 0.0;
    double lambda2_lap = 0.0;
    double avg_path = 0.0;
    double harmonic_mean_dist = 0.0;
    double modularity = 0.0;
    double transitivity = 0.0;
    double subgraph_centrality_mean = 0.0;
    bool avg_path_defined = false;
    bool modularity_defined = false;
};

struct MetricErrors {
    double lambda_max_adj = 0.0;
    double lambda2_lap = 0.0;
    double avg_path = 0.0;
    double harmonic_mean_dist = 0.0;
    double modularity = 0.0;
    double transitivity = 0.0;
    double subgraph_centrality_mean = 0.0;
};

struct UtilityReport {
    GraphMetrics original;
    GraphMetrics anonymized;
    MetricErrors errors;
};

/// (largest adjacency eigenvalue, second-smallest Laplacian eigenvalue).
/// Dense Jacobi decomposition up to kDenseEigenLimit vertices, power
/// iteration beyond.
std::pair<double, double> eigen_metrics(const Graph& g);

/// BFS from every vertex. avg_path averages over connected unordered pairs;
/// the harmonic mean divides the total pair count by the sum of reciprocal
/// distances (disconnected pairs contribute zero).
DistanceMetrics distance_metrics(const Graph& g);

/// Modularity of the given partition, global transitivity, and per-vertex
/// subgraph centrality from the full adjacency eigendecomposition.
StructureMetrics structure_metrics(const Graph& g, const Clustering& partition);

GraphMetrics compute_graph_metrics(const Graph& g, const Clustering& partition);

/// All seven measures on both graphs plus per-metric relative errors
/// |m' - m| / max(|m|, 1e-12). Throws ValidationError when the vertex
/// counts differ.
UtilityReport utility_error_report(const Graph& g, const Graph& g2, const Clustering& p1,
                                   const Clustering& p2);

} // namespace kanon

#endif
