#include "kanon/solver.hpp"

#include "kanon/errors.hpp"
#include "kanon/ilp.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

using namespace kanon;

namespace {

// Independent oracle: full scan of the integer box.
std::optional<double> enumerate_min(const IlpModel& model) {
    std::size_t n = model.var_count();
    std::vector<long long> lo(n), hi(n), x(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = std::llround(model.vars[j].lo);
        hi[j] = std::llround(model.vars[j].hi);
        x[j] = lo[j];
    }
    std::optional<double> best;
    while (true) {
        bool ok = true;
        for (const IlpRow& row : model.rows) {
            long long acc = 0;
            for (auto [var, coeff] : row.coeffs) acc += std::llround(coeff) * x[var];
            long long rhs = std::llround(row.rhs);
            if (row.sense == RowSense::le && acc > rhs) ok = false;
            if (row.sense == RowSense::ge && acc < rhs) ok = false;
            if (row.sense == RowSense::eq && acc != rhs) ok = false;
            if (!ok) break;
        }
        if (ok) {
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += model.vars[j].obj * x[j];
            if (!best || obj < *best) best = obj;
        }
        std::size_t j = 0;
        while (j < n && x[j] == hi[j]) {
            x[j] = lo[j];
            ++j;
        }
        if (j == n) break;
        ++x[j];
    }
    return best;
}

IlpModel random_binary_model(std::mt19937& rng, int nvars, int nrows) {
    IlpModel m;
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> cost(0, 4);
    std::uniform_int_distribution<int> rhs(-2, 3);
    for (int j = 0; j < nvars; ++j)
        m.add_var("x" + std::to_string(j), 0, 1, cost(rng));
    for (int r = 0; r < nrows; ++r) {
        RowSense sense = static_cast<RowSense>(rng() % 3);
        int row = m.add_row("c" + std::to_string(r), sense, rhs(rng));
        for (int j = 0; j < nvars; ++j) {
            int c = coeff(rng);
            if (c != 0) m.add_coeff(row, j, c);
        }
    }
    return m;
}

} // namespace

TEST_CASE("lp_bound on pinned examples") {
    SUBCASE("single fixed binary") {
        IlpModel m;
        m.add_var("x", 0, 1, 1.0);
        int r = m.add_row("c", RowSense::eq, 1);
        m.add_coeff(r, 0, 1.0);
        CHECK(lp_bound(m) == doctest::Approx(1.0));
    }
    SUBCASE("covering pair relaxation is tight") {
        IlpModel m;
        m.add_var("x", 0, 1, 1.0);
        m.add_var("y", 0, 1, 1.0);
        int r = m.add_row("c", RowSense::ge, 1);
        m.add_coeff(r, 0, 1.0);
        m.add_coeff(r, 1, 1.0);
        CHECK(lp_bound(m) == doctest::Approx(1.0));
    }
    SUBCASE("infeasible system") {
        IlpModel m;
        m.add_var("x", 0, 1, 1.0);
        int r1 = m.add_row("c1", RowSense::eq, 1);
        m.add_coeff(r1, 0, 1.0);
        int r2 = m.add_row("c2", RowSense::eq, 0);
        m.add_coeff(r2, 0, 1.0);
        CHECK_FALSE(lp_bound(m).has_value());
    }
}

TEST_CASE("solve on pinned examples") {
    SUBCASE("zero demand keeps every variable at zero") {
        IlpModel m;
        for (int j = 0; j < 4; ++j) m.add_var("x" + std::to_string(j), 0, 1, 1.0);
        for (int j = 0; j < 4; ++j) {
            int r = m.add_row("c" + std::to_string(j), RowSense::eq, 0);
            m.add_coeff(r, j, 1.0);
        }
        Solution s = solve(m);
        REQUIRE(s.status == SolveStatus::optimal);
        CHECK(s.objective == doctest::Approx(0.0));
        for (long long v : s.assignment) CHECK(v == 0);
    }
    SUBCASE("two overlapping equations share a variable") {
        // minimize x1+x2+x3 s.t. x1+x2 = 1, x2+x3 = 1: optimum picks x2.
        IlpModel m;
        for (int j = 0; j < 3; ++j) m.add_var("x" + std::to_string(j + 1), 0, 1, 1.0);
        int r1 = m.add_row("c1", RowSense::eq, 1);
        m.add_coeff(r1, 0, 1.0);
        m.add_coeff(r1, 1, 1.0);
        int r2 = m.add_row("c2", RowSense::eq, 1);
        m.add_coeff(r2, 1, 1.0);
        m.add_coeff(r2, 2, 1.0);
        Solution s = solve(m);
        REQUIRE(s.status == SolveStatus::optimal);
        CHECK(s.objective == doctest::Approx(1.0));
        CHECK(s.assignment == std::vector<long long>{0, 1, 0});
        CHECK(enumerate_min(m) == doctest::Approx(1.0));
    }
    SUBCASE("contradictory equalities are infeasible") {
        IlpModel m;
        m.add_var("x1", 0, 1, 1.0);
        int r1 = m.add_row("c1", RowSense::eq, 1);
        m.add_coeff(r1, 0, 1.0);
        int r2 = m.add_row("c2", RowSense::eq, 0);
        m.add_coeff(r2, 0, 1.0);
        Solution s = solve(m);
        CHECK(s.status == SolveStatus::infeasible);
    }
}

TEST_CASE("solver matches exhaustive enumeration on random models") {
    std::mt19937 rng(123456);
    int solved = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int nvars = 2 + static_cast<int>(rng() % 11); // up to 12
        int nrows = 1 + static_cast<int>(rng() % 6);
        IlpModel m = random_binary_model(rng, nvars, nrows);
        std::optional<double> expect = enumerate_min(m);
        Solution s = solve(m);
        CAPTURE(trial);
        if (expect) {
            REQUIRE(s.status == SolveStatus::optimal);
            CHECK(s.objective == doctest::Approx(*expect).epsilon(1e-9));
            // Returned assignment must satisfy every row exactly; recompute.
            double obj = 0.0;
            for (std::size_t j = 0; j < m.var_count(); ++j)
                obj += m.vars[j].obj * s.assignment[j];
            CHECK(obj == doctest::Approx(s.objective));
            ++solved;
        } else {
            REQUIRE(s.status == SolveStatus::infeasible);
        }
        // Bound sanity: the relaxation never exceeds the integer optimum.
        std::optional<double> bound = lp_bound(m);
        if (expect) {
            REQUIRE(bound.has_value());
            CHECK(*bound <= *expect + 1e-7);
        }
        // Monotone pruning: never beyond the full binary tree.
        CHECK(s.nodes_explored <= (1LL << nvars) + 1);
    }
    CHECK(solved > 100); // the corpus must exercise feasible cases
}

TEST_CASE("general integer bounds are honored") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 120; ++trial) {
        IlpModel m;
        int nvars = 2 + static_cast<int>(rng() % 4);
        std::uniform_int_distribution<int> coeff(-2, 2);
        for (int j = 0; j < nvars; ++j)
            m.add_var("x" + std::to_string(j), 0, 1 + rng() % 3, 1 + rng() % 3);
        for (int r = 0; r < 2; ++r) {
            int row = m.add_row("c" + std::to_string(r), static_cast<RowSense>(rng() % 3),
                                static_cast<int>(rng() % 5));
            for (int j = 0; j < nvars; ++j) m.add_coeff(row, j, coeff(rng));
        }
        std::optional<double> expect = enumerate_min(m);
        Solution s = solve(m);
        if (expect) {
            REQUIRE(s.status == SolveStatus::optimal);
            CHECK(s.objective == doctest::Approx(*expect).epsilon(1e-9));
            for (std::size_t j = 0; j < m.var_count(); ++j) {
                CHECK(s.assignment[j] >= std::llround(m.vars[j].lo));
                CHECK(s.assignment[j] <= std::llround(m.vars[j].hi));
            }
        } else {
            CHECK(s.status == SolveStatus::infeasible);
        }
    }
}

TEST_CASE("solve is deterministic") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        IlpModel m = random_binary_model(rng, 10, 4);
        Solution a = solve(m);
        Solution b = solve(m);
        CHECK(a.status == b.status);
        CHECK(a.assignment == b.assignment);
        CHECK(a.nodes_explored == b.nodes_explored);
    }
}

TEST_CASE("node limit reports a timeout with the proven bound") {
    // A model the root relaxation cannot finish: pairwise conflicting
    // covering rows force branching.
    std::mt19937 rng(4242);
    IlpModel m = random_binary_model(rng, 12, 8);
    SolveLimits limits;
    limits.max_nodes = 1;
    Solution s = solve(m, limits);
    if (s.status == SolveStatus::timeout) {
        CHECK(s.nodes_explored <= 2);
        CHECK(std::isfinite(s.bound));
    }
}

TEST_CASE("lp text round-trips through write_lp/parse_lp") {
    IlpModel m;
    m.add_var("a_0_1", 0, 1, 1.0);
    m.add_var("d_1_2", 0, 1, 1.0);
    m.add_var("sp_0", 0, 5, 0.5);
    int r0 = m.add_row("deg_0", RowSense::eq, 1);
    m.add_coeff(r0, 0, 1.0);
    m.add_coeff(r0, 2, -1.0);
    int r1 = m.add_row("cap_0", RowSense::le, 2);
    m.add_coeff(r1, 0, 1.0);
    m.add_coeff(r1, 1, 1.0);
    int r2 = m.add_row("lower", RowSense::ge, -1);
    m.add_coeff(r2, 1, -1.0);

    std::string text = write_lp(m);
    IlpModel back = parse_lp(text);

    REQUIRE(back.var_count() == m.var_count());
    REQUIRE(back.row_count() == m.row_count());
    for (std::size_t j = 0; j < m.var_count(); ++j) {
        CHECK(back.vars[j].name == m.vars[j].name);
        CHECK(back.vars[j].lo == doctest::Approx(m.vars[j].lo));
        CHECK(back.vars[j].hi == doctest::Approx(m.vars[j].hi));
        CHECK(back.vars[j].obj == doctest::Approx(m.vars[j].obj));
        CHECK(back.vars[j].integral == m.vars[j].integral);
    }
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        CHECK(back.rows[r].name == m.rows[r].name);
        CHECK(back.rows[r].sense == m.rows[r].sense);
        CHECK(back.rows[r].rhs == doctest::Approx(m.rows[r].rhs));
        REQUIRE(back.rows[r].coeffs.size() == m.rows[r].coeffs.size());
    }

    // Solving the parsed model reproduces the original optimum.
    Solution s1 = solve(m);
    Solution s2 = solve(back);
    REQUIRE(s1.status == SolveStatus::optimal);
    REQUIRE(s2.status == SolveStatus::optimal);
    CHECK(s1.objective == doctest::Approx(s2.objective));
}

TEST_CASE("solve validates its preconditions") {
    IlpModel unbounded_var;
    unbounded_var.add_var("x", 0, kInfinity, 1.0);
    CHECK_THROWS_AS(solve(unbounded_var), ValidationError);

    IlpModel fractional;
    fractional.add_var("x", 0, 1, 1.0, false);
    CHECK_THROWS_AS(solve(fractional), ValidationError);

    IlpModel bad_coeff;
    bad_coeff.add_var("x", 0, 1, 1.0);
    int r = bad_coeff.add_row("c", RowSense::le, 1);
    bad_coeff.add_coeff(r, 0, 0.5);
    CHECK_THROWS_AS(solve(bad_coeff), ValidationError);
}
