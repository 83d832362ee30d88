#ifndef KANON_ERRORS_HPP
#define KANON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kanon {

/// Malformed input file (bad token, bad header, unreadable path).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Semantically invalid input or arguments (self-loop, k > n, bad plan, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Why a strict realization instance has no solution.
enum class InfeasibleReason {
    odd_theta_sum,      // sum of requested degree changes is odd
    cap_exceeded,       // a per-vertex budget is smaller than its required change
    degree_bound,       // a target degree falls outside [0, n-1]
    no_edit_set,        // search exhausted without a feasible edit set
};

const char* to_string(InfeasibleReason r);

class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(InfeasibleReason reason)
        : std::runtime_error(std::string("infeasible: ") + to_string(reason)),
          reason_(reason) {}
    InfeasibleReason reason() const { return reason_; }

private:
    InfeasibleReason reason_;
};

/// Solver hit its time or node limit; carries the best proven lower bound
/// and the incumbent objective if one was found.
class TimeoutError : public std::runtime_error {
public:
    TimeoutError(double bound, bool has_incumbent, double incumbent)
        : std::runtime_error("solver limit reached"),
          bound_(bound), has_incumbent_(has_incumbent), incumbent_(incumbent) {}
    double bound() const { return bound_; }
    bool has_incumbent() const { return has_incumbent_; }
    double incumbent() const { return incumbent_; }

private:
    double bound_;
    bool has_incumbent_;
    double incumbent_;
};

} // namespace kanon

#endif
