#include "kanon/clustering.hpp"

#include "kanon/errors.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace kanon {

double modularity(const Graph& g, const Clustering& c) {
    if (static_cast<int>(c.assignment.size()) != g.vertex_count())
        throw ValidationError("clustering does not cover the vertex set");
    double m = static_cast<double>(g.edge_count());
    if (m == 0) return 0.0;
    std::vector<long long> intra(c.cluster_count, 0), deg(c.cluster_count, 0);
    for (const Edge& e : g.edges())
        if (c.assignment[e.u] == c.assignment[e.v]) ++intra[c.assignment[e.u]];
    for (int v = 0; v < g.vertex_count(); ++v) deg[c.assignment[v]] += g.degree(v);
    double q = 0.0;
    for (int cl = 0; cl < c.cluster_count; ++cl) {
        double frac = static_cast<double>(deg[cl]) / (2.0 * m);
        q += static_cast<double>(intra[cl]) / m - frac * frac;
    }
    return q;
}

Clustering detect_communities(const Graph& g) {
    int n = g.vertex_count();
    double m = static_cast<double>(g.edge_count());

    // Cluster id = smallest member vertex; merges keep the smaller id.
    std::vector<long long> deg(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::map<std::pair<int, int>, long long> between;
    for (const Edge& e : g.edges()) ++between[{e.u, e.v}];

    std::vector<int> owner(n); // vertex -> current cluster id
    for (int v = 0; v < n; ++v) owner[v] = v;

    while (m > 0 && !between.empty()) {
        double best_gain = 0.0;
        std::pair<int, int> best{-1, -1};
        for (const auto& [pair, e_cd] : between) {
            double gain = static_cast<double>(e_cd) / m -
                          static_cast<double>(deg[pair.first]) * static_cast<double>(deg[pair.second]) /
                              (2.0 * m * m);
            if (gain > best_gain + 1e-12) {
                best_gain = gain;
                best = pair;
            }
        }
        if (best.first < 0) break; // no positive gain left
        auto [c, d] = best;

        // Fold d into c.
        deg[c] += deg[d];
        std::vector<std::pair<int, long long>> moved;
        for (auto it = between.begin(); it != between.end();) {
            auto [u, v] = it->first;
            if (u == d || v == d) {
                int other = u == d ? v : u;
                if (other != c) moved.emplace_back(other, it->second);
                it = between.erase(it);
            } else {
                ++it;
            }
        }
        for (auto [other, w] : moved) between[{std::min(c, other), std::max(c, other)}] += w;
        for (int v = 0; v < n; ++v)
            if (owner[v] == d) owner[v] = c;
    }

    // Contiguous labels ordered by smallest member vertex (== cluster id).
    Clustering result;
    result.assignment.resize(n);
    std::map<int, int> relabel;
    for (int v = 0; v < n; ++v) relabel.emplace(owner[v], 0);
    int next = 0;
    for (auto& [id, label] : relabel) label = next++;
    for (int v = 0; v < n; ++v) result.assignment[v] = relabel[owner[v]];
    result.cluster_count = next;
    return result;
}

double precision_index(const Clustering& a, const Clustering& b) {
    if (a.assignment.size() != b.assignment.size())
        throw ValidationError("clusterings cover different vertex sets");
    long long n = static_cast<long long>(a.assignment.size());
    if (n < 2) return 1.0;
    auto pairs2 = [](long long x) { return x * (x - 1) / 2; };
    std::map<int, long long> count_a, count_b;
    std::map<std::pair<int, int>, long long> joint;
    for (std::size_t v = 0; v < a.assignment.size(); ++v) {
        ++count_a[a.assignment[v]];
        ++count_b[b.assignment[v]];
        ++joint[{a.assignment[v], b.assignment[v]}];
    }
    long long same_a = 0, same_b = 0, same_both = 0;
    for (auto& [_, x] : count_a) same_a += pairs2(x);
    for (auto& [_, x] : count_b) same_b += pairs2(x);
    for (auto& [_, x] : joint) same_both += pairs2(x);
    long long total = pairs2(n);
    long long agree = total - same_a - same_b + 2 * same_both;
    return static_cast<double>(agree) / static_cast<double>(total);
}

void save_clustering(const Clustering& c, std::ostream& out) {
    for (std::size_t v = 0; v < c.assignment.size(); ++v)
        out << v << " " << c.assignment[v] << "\n";
}

Clustering load_clustering(std::istream& in) {
    std::map<long long, int> by_vertex;
    std::string line;
    std::size_t line_no = 0;
    int max_cluster = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        long long v;
        int cl;
        if (!(ss >> v)) continue; // blank line
        if (!(ss >> cl) || v < 0 || cl < 0)
            throw ParseError("expected 'vertex cluster_id'", line_no);
        by_vertex[v] = cl;
        max_cluster = std::max(max_cluster, cl);
    }
    Clustering c;
    c.assignment.resize(by_vertex.size());
    long long expect = 0;
    for (auto [v, cl] : by_vertex) {
        if (v != expect)
            throw ValidationError("clustering vertices are not dense 0..n-1");
        c.assignment[v] = cl;
        ++expect;
    }
    c.cluster_count = max_cluster + 1;
    return c;
}

} // namespace kanon
