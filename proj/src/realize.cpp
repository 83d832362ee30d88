#include "kanon/realize.hpp"

#include "kanon/errors.hpp"
#include "lp_internal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace kanon {

VertexCaps VertexCaps::uniform(int n, int a, int d) {
    VertexCaps caps;
    caps.add.assign(n, a);
    caps.del.assign(n, d);
    return caps;
}

namespace {

void check_inputs(const Graph& g, const ChangeVector& theta, const VertexCaps& caps) {
    std::size_t n = static_cast<std::size_t>(g.vertex_count());
    if (theta.theta.size() != n)
        throw ValidationError("change vector length does not match graph");
    if (caps.add.size() != n || caps.del.size() != n)
        throw ValidationError("cap vectors do not match graph");
}

struct ModelLayout {
    std::vector<Edge> additions; // non-edges, lex order
    std::vector<Edge> deletions; // edges, lex order
    int var_base = 0; // index of the first pair variable
    // variable index = var_base + position in additions, then
    // var_base + additions.size() + position in deletions, then slack
    // blocks in relaxed mode.
};

ModelLayout make_layout(const Graph& g) {
    ModelLayout layout;
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) layout.additions.push_back({u, v});
    layout.deletions = g.edges();
    return layout;
}

std::string pair_name(const char* prefix, const Edge& e) {
    return std::string(prefix) + "_" + std::to_string(e.u) + "_" + std::to_string(e.v);
}

IlpModel build_model(const Graph& g, const ChangeVector& theta, const VertexCaps& caps,
                     const RealizationMode* relaxed, ModelLayout* layout_out,
                     bool parity_var = false) {
    check_inputs(g, theta, caps);
    int n = g.vertex_count();
    ModelLayout layout = make_layout(g);
    IlpModel model;

    // Summing the degree equations gives additions - deletions = theta/2, so
    // the total edit count is theta/2 plus twice the deletion count: its
    // parity is fixed. An auxiliary integer q with  sum(x) - 2q = theta/2
    // exposes that to the solver; q sits at index 0 so the lowest-index
    // branching tie-break resolves it first, which refutes whole plateaus of
    // wrong-parity relaxations in a single branch. Only the solve path uses
    // it; the published model shape is the plain pair model.
    if (parity_var) {
        layout.var_base = 1;
        model.add_var("edit_parity", 0.0, static_cast<double>(n) * n, 0.0);
    }

    // A pair can only be edited when both endpoints have budget for it; the
    // bound (not the variable) encodes that, so the variable count stays at
    // one per unordered pair.
    for (const Edge& e : layout.additions) {
        double ub = (caps.add[e.u] > 0 && caps.add[e.v] > 0) ? 1.0 : 0.0;
        model.add_var(pair_name("a", e), 0.0, ub, 1.0);
    }
    for (const Edge& e : layout.deletions) {
        double ub = (caps.del[e.u] > 0 && caps.del[e.v] > 0) ? 1.0 : 0.0;
        model.add_var(pair_name("d", e), 0.0, ub, 1.0);
    }
    int slack_pos_base = -1, slack_neg_base = -1;
    if (relaxed) {
        slack_pos_base = static_cast<int>(model.var_count());
        for (int v = 0; v < n; ++v)
            model.add_var("sp_" + std::to_string(v), 0.0, n, relaxed->lambda);
        slack_neg_base = static_cast<int>(model.var_count());
        for (int v = 0; v < n; ++v)
            model.add_var("sn_" + std::to_string(v), 0.0, n, relaxed->lambda);
    }

    int base = layout.var_base;
    // One degree equation per vertex plus its two cap inequalities.
    std::vector<int> eq_row(n), add_row(n), del_row(n);
    for (int v = 0; v < n; ++v) {
        eq_row[v] = model.add_row("deg_" + std::to_string(v), RowSense::eq, theta.theta[v]);
        add_row[v] = model.add_row("cap_add_" + std::to_string(v), RowSense::le, caps.add[v]);
        del_row[v] = model.add_row("cap_del_" + std::to_string(v), RowSense::le, caps.del[v]);
    }
    for (std::size_t i = 0; i < layout.additions.size(); ++i) {
        const Edge& e = layout.additions[i];
        int var = base + static_cast<int>(i);
        model.add_coeff(eq_row[e.u], var, 1.0);
        model.add_coeff(eq_row[e.v], var, 1.0);
        model.add_coeff(add_row[e.u], var, 1.0);
        model.add_coeff(add_row[e.v], var, 1.0);
    }
    for (std::size_t i = 0; i < layout.deletions.size(); ++i) {
        const Edge& e = layout.deletions[i];
        int var = base + static_cast<int>(layout.additions.size() + i);
        model.add_coeff(eq_row[e.u], var, -1.0);
        model.add_coeff(eq_row[e.v], var, -1.0);
        model.add_coeff(del_row[e.u], var, 1.0);
        model.add_coeff(del_row[e.v], var, 1.0);
    }
    if (relaxed) {
        for (int v = 0; v < n; ++v) {
            model.add_coeff(eq_row[v], slack_pos_base + v, -1.0);
            model.add_coeff(eq_row[v], slack_neg_base + v, 1.0);
        }
    }
    if (parity_var) {
        int row = model.add_row("edit_parity", RowSense::eq,
                                static_cast<double>(theta.sum() / 2));
        std::size_t num_pairs = layout.additions.size() + layout.deletions.size();
        for (std::size_t i = 0; i < num_pairs; ++i)
            model.add_coeff(row, base + static_cast<int>(i), 1.0);
        model.add_coeff(row, 0, -2.0);
    }
    if (layout_out) *layout_out = std::move(layout);
    return model;
}

// Gusfield-style Gomory-Hu cut tree on a small dense-capacity graph: one
// max-flow per vertex, no contractions. Each returned cut is a minimum cut
// between some tree pair; the minimum T-odd cut of the graph is among them.
struct TreeCut {
    std::vector<char> side; // side[v] == 1: v on the source side
    double value = 0.0;
};

std::vector<TreeCut> gomory_hu_cuts(int n, const std::vector<double>& cap) {
    std::vector<TreeCut> cuts;
    std::vector<int> tree_parent(n, 0);
    std::vector<double> residual;
    std::vector<int> pred(n);
    for (int src = 1; src < n; ++src) {
        int sink = tree_parent[src];
        residual = cap;
        auto bfs = [&]() {
            std::fill(pred.begin(), pred.end(), -1);
            std::vector<int> queue{src};
            pred[src] = src;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                int u = queue[h];
                for (int v = 0; v < n; ++v)
                    if (pred[v] < 0 && residual[static_cast<std::size_t>(u) * n + v] > 1e-11) {
                        pred[v] = u;
                        queue.push_back(v);
                    }
            }
        };
        double flow = 0.0;
        while (true) {
            bfs();
            if (pred[sink] < 0) break;
            double aug = std::numeric_limits<double>::infinity();
            for (int v = sink; v != src; v = pred[v])
                aug = std::min(aug, residual[static_cast<std::size_t>(pred[v]) * n + v]);
            for (int v = sink; v != src; v = pred[v]) {
                residual[static_cast<std::size_t>(pred[v]) * n + v] -= aug;
                residual[static_cast<std::size_t>(v) * n + pred[v]] += aug;
            }
            flow += aug;
        }
        bfs(); // residual reachability gives the source side
        TreeCut cut;
        cut.side.assign(n, 0);
        cut.value = flow;
        for (int v = 0; v < n; ++v)
            if (pred[v] >= 0) cut.side[v] = 1;
        for (int j = src + 1; j < n; ++j)
            if (tree_parent[j] == sink && cut.side[j]) tree_parent[j] = src;
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

// Summing the degree equations over a vertex set S shows that the number of
// edits crossing S (plus slack units inside S, in relaxed mode) has the
// parity of theta(S). Hence for any F inside the crossing pairs with
// theta(S) + |F| odd, every integer solution satisfies
//   x(cross \ F) - x(F) >= 1 - |F|.
// The plain pair model has a unit integrality gap exactly on such odd
// structures; adding the violated rows before the search lets the
// branch-and-bound close at (or near) the root. Separation follows
// Padberg-Rao: complement pairs with value above 1/2 (that choice of F
// makes the cut weight min(x, 1-x)), flip the parity label of their
// endpoints, and look for a light cut with an odd label count among the
// Gomory-Hu cuts of each fractional-support component.
int add_parity_cuts(const Graph& g, const ChangeVector& theta, bool relaxed,
                    const ModelLayout& layout, IlpModel& model) {
    int n = g.vertex_count();
    std::size_t num_pairs = layout.additions.size() + layout.deletions.size();
    int base = layout.var_base;
    auto pair_at = [&](std::size_t i) -> const Edge& {
        return i < layout.additions.size() ? layout.additions[i]
                                           : layout.deletions[i - layout.additions.size()];
    };
    auto pair_lp = [&](const detail::LpResult& lp, std::size_t i) { return lp.x[base + i]; };
    int slack_pos_base = base + static_cast<int>(num_pairs);
    int slack_neg_base = slack_pos_base + n;

    std::set<std::vector<std::pair<int, int>>> seen; // cut signatures
    int cuts_added = 0;
    for (int round = 0; round < 30 && cuts_added < 200; ++round) {
        detail::LpCore core = detail::make_core(model);
        std::vector<double> lo(model.var_count()), hi(model.var_count());
        for (std::size_t j = 0; j < model.var_count(); ++j) {
            lo[j] = model.vars[j].lo;
            hi[j] = model.vars[j].hi;
        }
        detail::LpResult lp = detail::solve_lp(core, lo, hi);
        if (lp.status != detail::LpStatus::optimal) return cuts_added;

        bool any_fractional = false;
        std::vector<char> label(n, 0); // parity label per vertex
        for (int v = 0; v < n; ++v) label[v] = static_cast<char>(std::abs(theta.theta[v]) % 2);
        std::vector<double> weight(num_pairs, 0.0);
        for (std::size_t i = 0; i < num_pairs; ++i) {
            double x = pair_lp(lp, i);
            if (x > 1e-6 && x < 1.0 - 1e-6) any_fractional = true;
            if (x > 0.5) {
                weight[i] = 1.0 - x;
                const Edge& e = pair_at(i);
                label[e.u] ^= 1;
                label[e.v] ^= 1;
            } else {
                weight[i] = x;
            }
        }
        if (!any_fractional) return cuts_added;
        if (std::count(label.begin(), label.end(), 1) == 0) return cuts_added;

        // Components of the support graph (pairs with positive cut weight).
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (std::size_t i = 0; i < num_pairs; ++i)
            if (weight[i] > 1e-9) {
                const Edge& e = pair_at(i);
                parent[find(e.u)] = find(e.v);
            }

        // Emits the (S, F) row when the incumbent relaxation violates it.
        auto try_emit = [&](const std::vector<char>& in_set) -> bool {
            double lhs = 0.0;
            long long f_count = 0;
            std::vector<std::pair<int, int>> signature;
            for (std::size_t i = 0; i < num_pairs; ++i) {
                const Edge& e = pair_at(i);
                if (in_set[e.u] == in_set[e.v]) continue;
                if (pair_lp(lp, i) > 0.5) {
                    signature.emplace_back(base + static_cast<int>(i), -1);
                    lhs += 1.0 - pair_lp(lp, i);
                    ++f_count;
                } else {
                    signature.emplace_back(base + static_cast<int>(i), 1);
                    lhs += pair_lp(lp, i);
                }
            }
            if (relaxed)
                for (int v = 0; v < n; ++v)
                    if (in_set[v]) {
                        signature.emplace_back(slack_pos_base + v, 1);
                        signature.emplace_back(slack_neg_base + v, 1);
                        lhs += lp.x[slack_pos_base + v] + lp.x[slack_neg_base + v];
                    }
            if (lhs >= 1.0 - 1e-6) return false;
            if (!seen.insert(signature).second) return false;
            int row = model.add_row("parity_cut_" + std::to_string(model.row_count()),
                                    RowSense::ge, 1.0 - static_cast<double>(f_count));
            for (auto [var, sign] : signature) model.add_coeff(row, var, sign);
            return true;
        };

        int new_cuts = 0;
        for (int root = 0; root < n; ++root) {
            if (find(root) != root) continue;
            std::vector<int> members;
            for (int v = 0; v < n; ++v)
                if (find(v) == root) members.push_back(v);
            int odd_labels = 0;
            for (int v : members) odd_labels += label[v];

            // A whole component with odd label count is a zero-weight cut.
            if (odd_labels % 2 == 1 && static_cast<int>(members.size()) < n) {
                std::vector<char> in_set(n, 0);
                for (int v : members) in_set[v] = 1;
                if (try_emit(in_set)) ++new_cuts;
            }
            if (members.size() < 2 || odd_labels == 0) continue;

            // Gomory-Hu cuts inside the component.
            int m = static_cast<int>(members.size());
            std::vector<int> local(n, -1);
            for (int i = 0; i < m; ++i) local[members[i]] = i;
            std::vector<double> cap(static_cast<std::size_t>(m) * m, 0.0);
            for (std::size_t i = 0; i < num_pairs; ++i) {
                if (weight[i] <= 1e-9) continue;
                const Edge& e = pair_at(i);
                int lu = local[e.u], lv = local[e.v];
                if (lu < 0 || lv < 0) continue;
                cap[static_cast<std::size_t>(lu) * m + lv] += weight[i];
                cap[static_cast<std::size_t>(lv) * m + lu] += weight[i];
            }
            for (const TreeCut& cut : gomory_hu_cuts(m, cap)) {
                if (cut.value >= 1.0 - 1e-6) continue;
                int side_odd = 0;
                for (int i = 0; i < m; ++i)
                    if (cut.side[i]) side_odd += label[members[i]];
                if (side_odd % 2 == 0) continue;
                std::vector<char> in_set(n, 0);
                for (int i = 0; i < m; ++i)
                    if (cut.side[i]) in_set[members[i]] = 1;
                if (try_emit(in_set)) ++new_cuts;
            }
        }
        if (new_cuts == 0) return cuts_added;
        cuts_added += new_cuts;
    }
    return cuts_added;
}

InfeasibleReason diagnose_infeasible(const Graph& g, const ChangeVector& theta,
                                     const VertexCaps& caps) {
    if (theta.sum() % 2 != 0) return InfeasibleReason::odd_theta_sum;
    int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        if (theta.theta[v] > caps.add[v] || -theta.theta[v] > caps.del[v])
            return InfeasibleReason::cap_exceeded;
        int target = g.degree(v) + theta.theta[v];
        if (target < 0 || target > n - 1) return InfeasibleReason::degree_bound;
    }
    return InfeasibleReason::no_edit_set;
}

} // namespace

IlpModel build_strict_model(const Graph& g, const ChangeVector& theta, const VertexCaps& caps) {
    return build_model(g, theta, caps, nullptr, nullptr);
}

IlpModel build_relaxed_model(const Graph& g, const ChangeVector& theta, const VertexCaps& caps,
                             const RealizationMode& mode) {
    if (mode.lambda <= 0.0) throw ValidationError("lambda must be positive");
    return build_model(g, theta, caps, &mode, nullptr);
}

RealizeResult realize(const Graph& g, const ChangeVector& theta, const VertexCaps& caps,
                      const RealizationMode& mode, const SolveLimits& limits) {
    bool relaxed = mode.kind == RealizationKind::relaxed;
    if (relaxed && mode.lambda <= 0.0) throw ValidationError("lambda must be positive");
    check_inputs(g, theta, caps);
    // Every edit changes the degree sum by 2, so an odd total demand can
    // never be met in strict mode; certify without searching.
    if (!relaxed && theta.sum() % 2 != 0)
        throw InfeasibleError(InfeasibleReason::odd_theta_sum);
    ModelLayout layout;
    IlpModel model =
        build_model(g, theta, caps, relaxed ? &mode : nullptr, &layout, /*parity_var=*/!relaxed);
    add_parity_cuts(g, theta, relaxed, layout, model);

    Solution sol = solve(model, limits);
    if (sol.status == SolveStatus::timeout)
        throw TimeoutError(sol.bound, sol.has_incumbent(), sol.objective);
    if (sol.status == SolveStatus::infeasible)
        throw InfeasibleError(diagnose_infeasible(g, theta, caps));

    RealizeResult result;
    result.objective = sol.objective;
    result.nodes_explored = sol.nodes_explored;
    int n = g.vertex_count();
    std::size_t base = layout.var_base;
    result.plan.slack_used.assign(n, 0);
    for (std::size_t i = 0; i < layout.additions.size(); ++i)
        if (sol.assignment[base + i] == 1) result.plan.additions.push_back(layout.additions[i]);
    for (std::size_t i = 0; i < layout.deletions.size(); ++i)
        if (sol.assignment[base + layout.additions.size() + i] == 1)
            result.plan.deletions.push_back(layout.deletions[i]);
    if (relaxed) {
        std::size_t sp = base + layout.additions.size() + layout.deletions.size();
        for (int v = 0; v < n; ++v) {
            int pos = static_cast<int>(sol.assignment[sp + v]);
            int neg = static_cast<int>(sol.assignment[sp + n + v]);
            result.plan.slack_used[v] = pos - neg;
            result.total_slack += pos + neg;
        }
    }
    return result;
}

} // namespace kanon
