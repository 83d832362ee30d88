#ifndef KANON_CLUSTERING_HPP
#define KANON_CLUSTERING_HPP

#include "kanon/graph.hpp"

#include <iosfwd>

namespace kanon {

/// Partition of the vertex set into clusters 0..cluster_count-1.
struct Clustering {
    std::vector<int> assignment; // vertex -> cluster id
    int cluster_count = 0;
};

/// Newman-style modularity Q of the partition; 0 when the graph has no edges
/// (callers flag that case separately).
double modularity(const Graph& g, const Clustering& c);

/// Deterministic greedy modularity agglomeration: start from singletons and
/// repeatedly merge the adjacent cluster pair with the largest positive gain
/// (ties -> smaller id pair) until no merge improves Q. Output clusters are
/// renumbered by smallest member vertex.
Clustering detect_communities(const Graph& g);

/// Pair-agreement index in [0,1]: the fraction of unordered vertex pairs
/// that are co-clustered in both partitions or separated in both. Defined as
/// 1 for fewer than two vertices.
double precision_index(const Clustering& a, const Clustering& b);

/// Lines of "vertex cluster_id".
void save_clustering(const Clustering& c, std::ostream& out);
Clustering load_clustering(std::istream& in);

} // namespace kanon

#endif
