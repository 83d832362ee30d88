#ifndef KANON_REALIZE_HPP
#define KANON_REALIZE_HPP

#include "kanon/anonymize.hpp"
#include "kanon/graph.hpp"
#include "kanon/ilp.hpp"
#include "kanon/solver.hpp"

#include <vector>

namespace kanon {

/// Per-vertex edit budgets: at most add[v] incident additions and del[v]
/// incident deletions.
struct VertexCaps {
    std::vector<int> add;
    std::vector<int> del;

    static VertexCaps uniform(int n, int a, int d);
};

enum class RealizationKind { strict, relaxed };

struct RealizationMode {
    RealizationKind kind = RealizationKind::relaxed;
    double lambda = 1.0; // slack penalty weight, > 0
};

/// One binary variable per unordered vertex pair: an addition variable for
/// every non-edge and a deletion variable for every edge, ordered additions
/// first then deletions, each lexicographically by (u, v).
IlpModel build_strict_model(const Graph& g, const ChangeVector& theta, const VertexCaps& caps);

/// Adds per-vertex slack pairs (s+, s-) bounded by n; the vertex equation
/// becomes additions - deletions - s+ + s- = theta[v], and the objective
/// gains lambda * (s+ + s-).
IlpModel build_relaxed_model(const Graph& g, const ChangeVector& theta, const VertexCaps& caps,
                             const RealizationMode& mode);

struct RealizeResult {
    EditPlan plan;
    double objective = 0.0;
    long long nodes_explored = 0;
    int total_slack = 0; // sum of |slack| consumed (relaxed mode)
};

/// Solves the requested model and decodes the optimal assignment. Throws
/// InfeasibleError (strict mode, with a certificate reason) or TimeoutError.
RealizeResult realize(const Graph& g, const ChangeVector& theta, const VertexCaps& caps,
                      const RealizationMode& mode, const SolveLimits& limits = {});

} // namespace kanon

#endif
