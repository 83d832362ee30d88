#ifndef KANON_LP_INTERNAL_HPP
#define KANON_LP_INTERNAL_HPP

// Shared between the simplex core and the branch-and-bound driver.

#include "kanon/ilp.hpp"

#include <span>
#include <vector>

namespace kanon::detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x; // structural variable values
};

/// Column-wise immutable view of a model; rows get one slack each whose
/// bounds encode the row sense.
struct LpCore {
    int num_struct = 0;
    int num_rows = 0;
    std::vector<std::vector<std::pair<int, double>>> cols; // structural columns
    std::vector<double> obj;
    std::vector<double> rhs;
    std::vector<double> slack_lo;
    std::vector<double> slack_hi;
};

LpCore make_core(const IlpModel& model);

/// Bounded-variable primal simplex (two phases, revised form with a dense
/// basis inverse). Dantzig pricing with a Bland's-rule fallback once the
/// objective stalls, so cycling cannot occur.
LpResult solve_lp(const LpCore& core, std::span<const double> lo, std::span<const double> hi);

} // namespace kanon::detail

#endif
