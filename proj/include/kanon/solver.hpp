#ifndef KANON_SOLVER_HPP
#define KANON_SOLVER_HPP

#include "kanon/ilp.hpp"

#include <optional>
#include <vector>

namespace kanon {

struct SolveLimits {
    double time_seconds = 60.0;
    long long max_nodes = 1'000'000;
};

enum class SolveStatus { optimal, infeasible, timeout };

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<long long> assignment; // one integer per model variable
    double objective = 0.0;            // of the assignment (when present)
    double bound = 0.0;                // best proven lower bound
    long long nodes_explored = 0;
    bool has_incumbent() const { return !assignment.empty(); }
};

/// Optimal value of the continuous relaxation; nullopt when infeasible.
std::optional<double> lp_bound(const IlpModel& model);

/// Exact minimization by LP-based best-first branch and bound. Requires
/// every variable to be integral with finite bounds. Deterministic: the
/// branching variable is the fractional one closest to 0.5 (ties -> lowest
/// index), the floor child is explored first, and nodes pop in (bound,
/// insertion order). Equal-objective incumbents prefer the assignment whose
/// support is lexicographically smallest.
Solution solve(const IlpModel& model, const SolveLimits& limits = {});

} // namespace kanon

#endif
