#ifndef KANON_ILP_HPP
#define KANON_ILP_HPP

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace kanon {

enum class RowSense { le, ge, eq };

struct IlpVariable {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    double obj = 0.0;
    bool integral = true;
};

struct IlpRow {
    std::string name;
    std::vector<std::pair<int, double>> coeffs; // (variable index, coefficient)
    RowSense sense = RowSense::eq;
    double rhs = 0.0;
};

/// Minimization program over bounded variables. Constraint coefficients and
/// right-hand sides stay integral; objective coefficients may be rational
/// (the slack penalty weight).
struct IlpModel {
    std::vector<IlpVariable> vars;
    std::vector<IlpRow> rows;

    int add_var(std::string name, double lo, double hi, double obj, bool integral = true);
    int add_row(std::string name, RowSense sense, double rhs);
    void add_coeff(int row, int var, double coeff);

    std::size_t var_count() const { return vars.size(); }
    std::size_t row_count() const { return rows.size(); }
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// CPLEX-style LP text: Minimize / Subject To / Bounds / Binaries /
/// Generals / End.
void write_lp(const IlpModel& model, std::ostream& out);
std::string write_lp(const IlpModel& model);

/// Parses the format write_lp emits (plus free-form whitespace). Variables
/// are indexed in order of first appearance.
IlpModel parse_lp(std::istream& in);
IlpModel parse_lp(const std::string& text);

} // namespace kanon

#endif
