#include "kanon/graph.hpp"

#include "kanon/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

namespace kanon {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw ValidationError("negative vertex count");
    std::sort(edges_.begin(), edges_.end());
    adj_.resize(n_);
    const Edge* prev = nullptr;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.v >= n_ || e.u >= e.v) {
            if (e.u == e.v)
                throw ValidationError("self-loop on vertex " + std::to_string(e.u));
            throw ValidationError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} is not canonical for n=" + std::to_string(n_));
        }
        if (prev && *prev == e)
            throw ValidationError("duplicate edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
        prev = &e;
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    labels_.resize(n_);
    std::iota(labels_.begin(), labels_.end(), 0LL);
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& nbrs = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(nbrs.begin(), nbrs.end(), other);
}

void Graph::set_labels(std::vector<long long> labels) {
    if (static_cast<int>(labels.size()) != n_)
        throw ValidationError("label count does not match vertex count");
    labels_ = std::move(labels);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// "# n=<count>" (whitespace-tolerant); returns false for ordinary comments.
bool parse_header(std::string_view line, long long& n_out) {
    line.remove_prefix(1);
    line = trim(line);
    if (line.size() < 3 || line[0] != 'n') return false;
    line.remove_prefix(1);
    line = trim(line);
    if (line.empty() || line[0] != '=') return false;
    line.remove_prefix(1);
    line = trim(line);
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n_out);
    return ec == std::errc{} && ptr == line.data() + line.size() && n_out >= 0;
}

long long parse_vertex_token(std::string_view tok, std::size_t line_no) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("expected integer vertex id, got '" + std::string(tok) + "'", line_no);
    if (value < 0)
        throw ParseError("negative vertex id " + std::to_string(value), line_no);
    return value;
}

} // namespace

LoadResult load_graph(std::istream& in, const LoadOptions& opts) {
    std::vector<std::pair<long long, long long>> raw_edges;
    long long declared_n = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv[0] == '#') {
            long long n = 0;
            if (declared_n < 0 && parse_header(sv, n)) declared_n = n;
            continue;
        }
        if (sv[0] == '%') continue;

        std::size_t sep = sv.find_first_of(" \t");
        if (sep == std::string_view::npos)
            throw ParseError("expected two vertex ids", line_no);
        std::string_view tok_u = trim(sv.substr(0, sep));
        std::string_view tok_v = trim(sv.substr(sep));
        if (tok_v.find_first_of(" \t") != std::string_view::npos)
            throw ParseError("expected exactly two vertex ids", line_no);
        long long u = parse_vertex_token(tok_u, line_no);
        long long v = parse_vertex_token(tok_v, line_no);
        raw_edges.emplace_back(u, v);
    }

    LoadResult result;
    std::vector<long long> labels;
    std::map<long long, int> dense;
    if (declared_n >= 0) {
        for (auto [u, v] : raw_edges)
            if (u >= declared_n || v >= declared_n)
                throw ParseError("vertex id exceeds declared n=" + std::to_string(declared_n));
        labels.resize(declared_n);
        std::iota(labels.begin(), labels.end(), 0LL);
        for (long long i = 0; i < declared_n; ++i) dense[i] = static_cast<int>(i);
    } else {
        std::set<long long> ids;
        for (auto [u, v] : raw_edges) {
            ids.insert(u);
            ids.insert(v);
        }
        labels.assign(ids.begin(), ids.end());
        for (std::size_t i = 0; i < labels.size(); ++i) dense[labels[i]] = static_cast<int>(i);
    }

    std::set<Edge> edge_set;
    for (auto [lu, lv] : raw_edges) {
        if (lu == lv) {
            if (opts.reject_self_loops)
                throw ValidationError("self-loop on vertex " + std::to_string(lu));
            ++result.self_loops_dropped;
            continue;
        }
        Edge e = make_edge(dense.at(lu), dense.at(lv));
        if (!edge_set.insert(e).second) ++result.duplicate_edges;
    }

    Graph g(static_cast<int>(labels.size()), std::vector<Edge>(edge_set.begin(), edge_set.end()));
    g.set_labels(std::move(labels));
    result.graph = std::move(g);
    return result;
}

LoadResult load_graph(const std::filesystem::path& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return load_graph(in, opts);
}

void save_graph(const Graph& g, std::ostream& out) {
    out << "# n=" << g.vertex_count() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    save_graph(g, out);
    out.flush();
    if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

Graph apply_edits(const Graph& g, const EditPlan& plan) {
    std::set<Edge> edges(g.edges().begin(), g.edges().end());
    std::set<Edge> added;
    for (const Edge& raw : plan.additions) {
        Edge e = make_edge(raw.u, raw.v);
        if (raw.u == raw.v || raw.u < 0 || std::max(raw.u, raw.v) >= g.vertex_count())
            throw ValidationError("addition is not a valid vertex pair");
        if (edges.count(e))
            throw ValidationError("addition {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} already present");
        if (!added.insert(e).second)
            throw ValidationError("duplicate addition in plan");
    }
    std::set<Edge> deleted;
    for (const Edge& raw : plan.deletions) {
        Edge e = make_edge(raw.u, raw.v);
        if (!edges.count(e))
            throw ValidationError("deletion {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} not present");
        if (!deleted.insert(e).second)
            throw ValidationError("duplicate deletion in plan");
    }
    for (const Edge& e : deleted) edges.erase(e);
    for (const Edge& e : added) edges.insert(e);

    Graph out(g.vertex_count(), std::vector<Edge>(edges.begin(), edges.end()));
    out.set_labels(g.labels());
    return out;
}

const char* to_string(InfeasibleReason r) {
    switch (r) {
    case InfeasibleReason::odd_theta_sum: return "sum of degree changes is odd";
    case InfeasibleReason::cap_exceeded: return "per-vertex edit budget exceeded";
    case InfeasibleReason::degree_bound: return "target degree out of [0, n-1]";
    case InfeasibleReason::no_edit_set: return "no feasible edit set";
    }
    return "?";
}

} // namespace kanon
