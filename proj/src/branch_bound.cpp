#include "kanon/solver.hpp"

#include "kanon/errors.hpp"
#include "lp_internal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace kanon {

namespace {

using detail::LpCore;
using detail::LpResult;
using detail::LpStatus;

constexpr double kIntTol = 1e-6;  // branching decisions
constexpr double kObjTol = 1e-9;  // incumbent comparisons

struct Node {
    double bound;
    long long seq;
    int branch_var;
    double branch_val;
    std::vector<std::pair<int, std::pair<double, double>>> overrides; // var -> (lo, hi)
};

// Min-heap on bound; equal bounds pop newest-first. Plateaus of equal-bound
// nodes are common in these edit models, and diving (rather than sweeping
// the plateau breadth-first) reaches an incumbent at the bound quickly,
// which then closes the whole search.
struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.seq < b.seq;
    }
};

// Fractional integral variable closest to 0.5; -1 when the point is integral.
int pick_branch_var(const IlpModel& model, const std::vector<double>& x) {
    int best = -1;
    double best_dist = 1.0;
    for (std::size_t j = 0; j < model.vars.size(); ++j) {
        if (!model.vars[j].integral) continue;
        double frac = x[j] - std::floor(x[j]);
        if (frac < kIntTol || frac > 1.0 - kIntTol) continue;
        double dist = std::abs(frac - 0.5);
        if (dist < best_dist - 1e-12) {
            best = static_cast<int>(j);
            best_dist = dist;
        }
    }
    return best;
}

// Rounds an integral LP point and checks every row in integer arithmetic.
// Constraint data is integral by model construction.
std::vector<long long> validate_integral(const IlpModel& model, const std::vector<double>& x) {
    std::vector<long long> vals(model.vars.size());
    for (std::size_t j = 0; j < model.vars.size(); ++j) vals[j] = std::llround(x[j]);
    for (const IlpRow& row : model.rows) {
        long long acc = 0;
        for (auto [var, coeff] : row.coeffs) acc += std::llround(coeff) * vals[var];
        long long rhs = std::llround(row.rhs);
        bool ok = true;
        switch (row.sense) {
        case RowSense::le: ok = acc <= rhs; break;
        case RowSense::ge: ok = acc >= rhs; break;
        case RowSense::eq: ok = acc == rhs; break;
        }
        if (!ok)
            throw std::runtime_error("solver: integral LP point fails exact check on row " + row.name);
    }
    return vals;
}

double int_objective(const IlpModel& model, const std::vector<long long>& vals) {
    double obj = 0.0;
    for (std::size_t j = 0; j < model.vars.size(); ++j)
        obj += model.vars[j].obj * static_cast<double>(vals[j]);
    return obj;
}

// Lexicographic order on assignment supports (sorted index lists); the
// smaller support wins ties between equal-objective incumbents.
bool support_less(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::size_t i = 0, j = 0;
    while (true) {
        while (i < a.size() && a[i] == 0) ++i;
        while (j < b.size() && b[j] == 0) ++j;
        if (j == b.size()) return false;
        if (i == a.size()) return true;
        if (i != j) return i < j;
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
}

void check_model(const IlpModel& model, bool require_integral_vars) {
    for (const IlpVariable& v : model.vars) {
        if (require_integral_vars) {
            if (!v.integral)
                throw ValidationError("solve() requires integral variables ('" + v.name + "')");
            if (!std::isfinite(v.lo) || !std::isfinite(v.hi))
                throw ValidationError("solve() requires finite bounds ('" + v.name + "')");
        }
    }
    for (const IlpRow& row : model.rows) {
        for (auto [var, coeff] : row.coeffs) {
            if (var < 0 || var >= static_cast<int>(model.vars.size()))
                throw ValidationError("row '" + row.name + "' references undeclared variable");
            if (std::abs(coeff - std::llround(coeff)) > 1e-9)
                throw ValidationError("row '" + row.name + "' has a non-integral coefficient");
        }
        if (std::abs(row.rhs - std::llround(row.rhs)) > 1e-9)
            throw ValidationError("row '" + row.name + "' has a non-integral right-hand side");
    }
}

} // namespace

std::optional<double> lp_bound(const IlpModel& model) {
    check_model(model, false);
    LpCore core = detail::make_core(model);
    std::vector<double> lo(model.vars.size()), hi(model.vars.size());
    for (std::size_t j = 0; j < model.vars.size(); ++j) {
        lo[j] = model.vars[j].lo;
        hi[j] = model.vars[j].hi;
    }
    LpResult res = detail::solve_lp(core, lo, hi);
    if (res.status == LpStatus::infeasible) return std::nullopt;
    if (res.status == LpStatus::unbounded)
        throw std::runtime_error("solver: relaxation unbounded");
    return res.objective;
}

Solution solve(const IlpModel& model, const SolveLimits& limits) {
    check_model(model, true);
    auto started = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >
               limits.time_seconds;
    };

    LpCore core = detail::make_core(model);
    std::vector<double> root_lo(model.vars.size()), root_hi(model.vars.size());
    for (std::size_t j = 0; j < model.vars.size(); ++j) {
        root_lo[j] = model.vars[j].lo;
        root_hi[j] = model.vars[j].hi;
    }

    // With an all-integer objective every attainable value is an integer, so
    // fractional LP bounds round up. This closes unit gaps without having to
    // exhaust plateaus of equal-bound nodes.
    bool integral_objective = true;
    for (const IlpVariable& v : model.vars)
        if (std::abs(v.obj - std::llround(v.obj)) > 1e-9) integral_objective = false;
    auto tighten = [integral_objective](double bound) {
        return integral_objective ? std::ceil(bound - 1e-6) : bound;
    };

    Solution sol;
    sol.nodes_explored = 0;
    sol.bound = std::numeric_limits<double>::infinity();

    std::vector<long long> incumbent;
    double incumbent_obj = std::numeric_limits<double>::infinity();

    auto offer_incumbent = [&](const std::vector<double>& x) {
        std::vector<long long> vals = validate_integral(model, x);
        double obj = int_objective(model, vals);
        if (obj < incumbent_obj - kObjTol) {
            incumbent = std::move(vals);
            incumbent_obj = obj;
        } else if (obj < incumbent_obj + kObjTol && support_less(vals, incumbent)) {
            incumbent = std::move(vals);
            incumbent_obj = obj;
        }
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long long next_seq = 0;

    std::vector<double> lo = root_lo, hi = root_hi;
    auto solve_with = [&](const std::vector<std::pair<int, std::pair<double, double>>>& ov)
        -> LpResult {
        lo = root_lo;
        hi = root_hi;
        for (auto [var, bounds] : ov) {
            lo[var] = std::max(lo[var], bounds.first);
            hi[var] = std::min(hi[var], bounds.second);
        }
        return detail::solve_lp(core, lo, hi);
    };

    // Root node. Leaf roots count as one explored node; fractional roots are
    // queued and counted when popped, so explored nodes = expanded nodes.
    LpResult root = solve_with({});
    if (root.status == LpStatus::unbounded)
        throw std::runtime_error("solver: relaxation unbounded");
    if (root.status == LpStatus::infeasible) {
        sol.nodes_explored = 1;
        sol.status = SolveStatus::infeasible;
        return sol;
    }
    int root_branch = pick_branch_var(model, root.x);
    if (root_branch < 0) {
        offer_incumbent(root.x);
        sol.nodes_explored = 1;
        sol.status = SolveStatus::optimal;
        sol.assignment = incumbent;
        sol.objective = incumbent_obj;
        sol.bound = incumbent_obj;
        return sol;
    }
    open.push({tighten(root.objective), next_seq++, root_branch, root.x[root_branch], {}});

    while (!open.empty()) {
        double best_open = open.top().bound;
        if (!incumbent.empty() && best_open >= incumbent_obj - kObjTol) break; // proven optimal
        if (sol.nodes_explored >= limits.max_nodes || out_of_time()) {
            sol.status = SolveStatus::timeout;
            sol.assignment = incumbent;
            sol.objective = incumbent.empty() ? 0.0 : incumbent_obj;
            sol.bound = std::min(best_open, incumbent_obj);
            return sol;
        }
        Node node = open.top();
        open.pop();
        ++sol.nodes_explored;

        double floor_val = std::floor(node.branch_val);
        // Ceil child pushed first so the floor child, pushed last, pops
        // first among equal bounds: the floor branch is explored first.
        for (int side = 0; side < 2; ++side) {
            auto overrides = node.overrides;
            if (side == 1)
                overrides.emplace_back(node.branch_var, std::make_pair(-kInfinity, floor_val));
            else
                overrides.emplace_back(node.branch_var, std::make_pair(floor_val + 1.0, kInfinity));
            LpResult child = solve_with(overrides);
            if (child.status == LpStatus::infeasible) continue;
            if (child.status == LpStatus::unbounded)
                throw std::runtime_error("solver: relaxation unbounded");
            double child_bound = tighten(child.objective);
            if (!incumbent.empty() && child_bound >= incumbent_obj - kObjTol) {
                // Equal-objective integral children still compete on support order.
                if (child.objective < incumbent_obj + kObjTol &&
                    pick_branch_var(model, child.x) < 0)
                    offer_incumbent(child.x);
                continue;
            }
            int bv = pick_branch_var(model, child.x);
            if (bv < 0) {
                offer_incumbent(child.x);
                continue;
            }
            open.push({child_bound, next_seq++, bv, child.x[bv], std::move(overrides)});
        }
    }

    if (incumbent.empty()) {
        sol.status = SolveStatus::infeasible;
        return sol;
    }
    sol.status = SolveStatus::optimal;
    sol.assignment = incumbent;
    sol.objective = incumbent_obj;
    sol.bound = incumbent_obj;
    return sol;
}

} // namespace kanon
