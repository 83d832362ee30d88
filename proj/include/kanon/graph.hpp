#ifndef KANON_GRAPH_HPP
#define KANON_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace kanon {

/// Unordered vertex pair stored canonically with first < second.
struct Edge {
    int u;
    int v;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph over dense vertex ids 0..n-1. Immutable after
/// construction; edits go through apply_edits() which returns a new graph.
class Graph {
public:
    Graph() = default;

    /// Builds from a canonicalized, deduplicated edge list. Throws
    /// ValidationError on self-loops, out-of-range ids, or duplicates.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    /// Neighbors of v in ascending order.
    std::span<const int> neighbors(int v) const { return adj_[v]; }

    /// All edges, sorted, u < v.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Original label of each dense id (identity when input was dense).
    const std::vector<long long>& labels() const { return labels_; }
    void set_labels(std::vector<long long> labels);

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<long long> labels_;
};

/// Edge edits to transform one graph into another, plus the per-vertex net
/// slack the relaxed realization consumed (all zero in strict mode).
struct EditPlan {
    std::vector<Edge> additions;   // pairs absent from the source graph
    std::vector<Edge> deletions;   // pairs present in the source graph
    std::vector<int> slack_used;   // signed net slack per vertex; empty = none

    std::size_t size() const { return additions.size() + deletions.size(); }
};

struct LoadOptions {
    bool reject_self_loops = true; // false: drop them, counted as warnings
};

struct LoadResult {
    Graph graph;
    std::size_t duplicate_edges = 0;  // lines dropped as duplicates
    std::size_t self_loops_dropped = 0;
};

/// Reads an edge list: one "u v" pair per line, '%'/'#' comment lines
/// skipped, optional "# n=<count>" header declaring the vertex count
/// (which also makes isolated vertices representable). Ids without a
/// header may be arbitrary nonnegative integers; they are densified in
/// ascending order and kept as labels.
LoadResult load_graph(const std::filesystem::path& path, const LoadOptions& opts = {});
LoadResult load_graph(std::istream& in, const LoadOptions& opts = {});

/// Writes "# n=<count>" followed by the sorted canonical edge list in
/// dense ids. load_graph(save_graph(g)) reproduces the edge set exactly.
void save_graph(const Graph& g, const std::filesystem::path& path);
void save_graph(const Graph& g, std::ostream& out);

/// Returns the edited copy (E \ deletions) + additions. Throws
/// ValidationError when the plan does not match the graph.
Graph apply_edits(const Graph& g, const EditPlan& plan);

} // namespace kanon

#endif
