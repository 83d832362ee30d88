#include "lp_internal.hpp"

#include "kanon/errors.hpp"
#include "kanon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kanon::detail {

LpCore make_core(const IlpModel& model) {
    LpCore core;
    core.num_struct = static_cast<int>(model.vars.size());
    core.num_rows = static_cast<int>(model.rows.size());
    core.cols.resize(core.num_struct);
    core.obj.resize(core.num_struct);
    for (int j = 0; j < core.num_struct; ++j) core.obj[j] = model.vars[j].obj;
    core.rhs.resize(core.num_rows);
    core.slack_lo.resize(core.num_rows);
    core.slack_hi.resize(core.num_rows);
    for (int r = 0; r < core.num_rows; ++r) {
        const IlpRow& row = model.rows[r];
        core.rhs[r] = row.rhs;
        switch (row.sense) {
        case RowSense::le:
            core.slack_lo[r] = 0.0;
            core.slack_hi[r] = kInfinity;
            break;
        case RowSense::ge:
            core.slack_lo[r] = -kInfinity;
            core.slack_hi[r] = 0.0;
            break;
        case RowSense::eq:
            core.slack_lo[r] = 0.0;
            core.slack_hi[r] = 0.0;
            break;
        }
        for (auto [var, coeff] : row.coeffs) core.cols[var].emplace_back(r, coeff);
    }
    // Merge duplicate (row, var) entries so columns have unique rows.
    for (auto& col : core.cols) {
        std::sort(col.begin(), col.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (out > 0 && col[out - 1].first == col[i].first)
                col[out - 1].second += col[i].second;
            else
                col[out++] = col[i];
        }
        col.resize(out);
        std::erase_if(col, [](const auto& e) { return e.second == 0.0; });
    }
    return core;
}

namespace {

constexpr double kFeasTol = 1e-9;  // bound/constraint satisfaction
constexpr double kDualTol = 1e-8;  // entering threshold on reduced costs
constexpr double kPivTol = 1e-9;   // treat |y_r| below this as zero
constexpr int kRefactorEvery = 400;
constexpr int kStallLimit = 120;   // degenerate pivots before Bland's rule

class Simplex {
public:
    Simplex(const LpCore& core, std::span<const double> lo, std::span<const double> hi)
        : core_(core), m_(core.num_rows), ns_(core.num_struct) {
        int total = ns_ + m_; // artificials appended on demand
        lo_.assign(total, 0.0);
        hi_.assign(total, 0.0);
        x_.assign(total, 0.0);
        at_upper_.assign(total, 0);
        pos_in_basis_.assign(total, -1);
        for (int j = 0; j < ns_; ++j) {
            lo_[j] = lo[j];
            hi_[j] = hi[j];
            if (lo_[j] > hi_[j] + kFeasTol) { empty_box_ = true; return; }
            if (std::isfinite(lo_[j])) {
                x_[j] = lo_[j];
            } else if (std::isfinite(hi_[j])) {
                x_[j] = hi_[j];
                at_upper_[j] = 1;
            } else {
                throw ValidationError("simplex requires a finite bound per variable");
            }
        }
        for (int r = 0; r < m_; ++r) {
            lo_[ns_ + r] = core_.slack_lo[r];
            hi_[ns_ + r] = core_.slack_hi[r];
        }
    }

    LpResult run() {
        LpResult result;
        if (empty_box_) return result; // infeasible
        init_basis();
        if (num_art_ > 0) {
            phase_one_ = true;
            Status st = iterate();
            if (st == Status::iteration_limit)
                throw std::runtime_error("simplex: iteration limit in phase 1");
            double infeas = 0.0;
            for (int a = 0; a < num_art_; ++a) infeas += x_[ns_ + m_ + a];
            if (infeas > 1e-7) return result; // infeasible
            for (int a = 0; a < num_art_; ++a) {
                int j = ns_ + m_ + a;
                lo_[j] = hi_[j] = 0.0;
            }
        }
        phase_one_ = false;
        bland_ = false;
        stall_ = 0;
        Status st = iterate();
        if (st == Status::iteration_limit)
            throw std::runtime_error("simplex: iteration limit in phase 2");
        if (st == Status::unbounded) {
            result.status = LpStatus::unbounded;
            return result;
        }
        result.status = LpStatus::optimal;
        result.x.assign(x_.begin(), x_.begin() + ns_);
        result.objective = 0.0;
        for (int j = 0; j < ns_; ++j) result.objective += core_.obj[j] * x_[j];
        return result;
    }

private:
    enum class Status { optimal, unbounded, iteration_limit };

    double cost_of(int j) const {
        if (phase_one_) return j >= ns_ + m_ ? 1.0 : 0.0;
        return j < ns_ ? core_.obj[j] : 0.0;
    }

    template <typename F>
    void for_col(int j, F&& f) const {
        if (j < ns_) {
            for (auto [r, a] : core_.cols[j]) f(r, a);
        } else if (j < ns_ + m_) {
            f(j - ns_, 1.0);
        } else {
            const auto& [row, sign] = art_[j - ns_ - m_];
            f(row, sign);
        }
    }

    void init_basis() {
        basis_.resize(m_);
        // Residual each slack would have to carry.
        std::vector<double> resid = core_.rhs;
        for (int j = 0; j < ns_; ++j)
            if (x_[j] != 0.0)
                for (auto [r, a] : core_.cols[j]) resid[r] -= a * x_[j];
        for (int r = 0; r < m_; ++r) {
            int sj = ns_ + r;
            if (resid[r] >= lo_[sj] - kFeasTol && resid[r] <= hi_[sj] + kFeasTol) {
                basis_[r] = sj;
                pos_in_basis_[sj] = r;
                x_[sj] = resid[r];
            } else {
                double snapped = std::clamp(resid[r], lo_[sj], hi_[sj]);
                x_[sj] = snapped;
                at_upper_[sj] = snapped == hi_[sj] ? 1 : 0;
                double remaining = resid[r] - snapped;
                art_.emplace_back(r, remaining > 0 ? 1.0 : -1.0);
                int aj = ns_ + m_ + num_art_;
                ++num_art_;
                lo_.push_back(0.0);
                hi_.push_back(kInfinity);
                x_.push_back(std::abs(remaining));
                at_upper_.push_back(0);
                pos_in_basis_.push_back(r);
                basis_[r] = aj;
            }
        }
        binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            double diag = 1.0;
            if (basis_[r] >= ns_ + m_) diag = art_[basis_[r] - ns_ - m_].second; // +-1
            binv_[static_cast<std::size_t>(r) * m_ + r] = diag;
        }
        pivots_since_refactor_ = 0;
    }

    std::span<double> binv_row(int r) { return {binv_.data() + static_cast<std::size_t>(r) * m_, static_cast<std::size_t>(m_)}; }
    std::span<const double> binv_row(int r) const { return {binv_.data() + static_cast<std::size_t>(r) * m_, static_cast<std::size_t>(m_)}; }

    void compute_pi(std::vector<double>& pi) const {
        pi.assign(m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            double cb = cost_of(basis_[r]);
            if (cb != 0.0) kernels::axpy(cb, binv_row(r), pi);
        }
    }

    double reduced_cost(int j, const std::vector<double>& pi) const {
        double d = cost_of(j);
        for_col(j, [&](int r, double a) { d -= pi[r] * a; });
        return d;
    }

    // y = Binv * column j
    void ftran(int j, std::vector<double>& y) const {
        y.assign(m_, 0.0);
        for_col(j, [&](int i, double a) {
            const double* col = binv_.data() + i;
            for (int r = 0; r < m_; ++r) y[r] += col[static_cast<std::size_t>(r) * m_] * a;
        });
    }

    void refactor() {
        // Gauss-Jordan inverse of the basis matrix.
        int m = m_;
        std::vector<double> work(static_cast<std::size_t>(m) * 2 * m, 0.0);
        auto at = [&](int r, int c) -> double& { return work[static_cast<std::size_t>(r) * 2 * m + c]; };
        for (int r = 0; r < m; ++r) {
            for_col(basis_[r], [&](int i, double a) { at(i, r) = a; });
        }
        for (int r = 0; r < m; ++r) at(r, m + r) = 1.0;
        for (int col = 0; col < m; ++col) {
            int piv = col;
            double best = std::abs(at(col, col));
            for (int r = col + 1; r < m; ++r)
                if (std::abs(at(r, col)) > best) {
                    best = std::abs(at(r, col));
                    piv = r;
                }
            if (best < 1e-12) throw std::runtime_error("simplex: singular basis");
            if (piv != col)
                for (int c = 0; c < 2 * m; ++c) std::swap(at(piv, c), at(col, c));
            double inv = 1.0 / at(col, col);
            for (int c = 0; c < 2 * m; ++c) at(col, c) *= inv;
            for (int r = 0; r < m; ++r) {
                if (r == col) continue;
                double f = at(r, col);
                if (f == 0.0) continue;
                kernels::axpy(-f, {&work[static_cast<std::size_t>(col) * 2 * m], static_cast<std::size_t>(2 * m)},
                              {&work[static_cast<std::size_t>(r) * 2 * m], static_cast<std::size_t>(2 * m)});
            }
        }
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) binv_[static_cast<std::size_t>(r) * m_ + c] = at(r, m + c);

        // Recompute basic values from the nonbasic point.
        std::vector<double> resid = core_.rhs;
        for (int j = 0; j < static_cast<int>(x_.size()); ++j) {
            if (pos_in_basis_[j] >= 0 || x_[j] == 0.0) continue;
            for_col(j, [&](int r, double a) { resid[r] -= a * x_[j]; });
        }
        for (int r = 0; r < m; ++r)
            x_[basis_[r]] = kernels::dot(binv_row(r), resid);
        pivots_since_refactor_ = 0;
    }

    Status iterate() {
        std::vector<double> pi, y;
        long long max_iters = 2000LL + 60LL * (m_ + ns_);
        for (long long iter = 0; iter < max_iters; ++iter) {
            if (pivots_since_refactor_ >= kRefactorEvery) refactor();
            compute_pi(pi);
            int enter = -1;
            double best_score = kDualTol;
            int total = static_cast<int>(x_.size());
            for (int j = 0; j < total; ++j) {
                if (pos_in_basis_[j] >= 0) continue;
                if (hi_[j] - lo_[j] < kFeasTol) continue; // fixed
                double d = reduced_cost(j, pi);
                double score = at_upper_[j] ? d : -d;
                if (score > best_score) {
                    enter = j;
                    best_score = score;
                    if (bland_) break;
                }
            }
            if (enter == -1) return Status::optimal;

            int dir = at_upper_[enter] ? -1 : 1;
            ftran(enter, y);

            double flip_limit = hi_[enter] - lo_[enter]; // may be +inf
            double limit = flip_limit;
            int leave_row = -1;
            bool leave_to_upper = false;
            for (int r = 0; r < m_; ++r) {
                double rate = -dir * y[r];
                if (std::abs(rate) <= kPivTol) continue;
                int b = basis_[r];
                double lim;
                bool to_upper;
                if (rate > 0) {
                    if (!std::isfinite(hi_[b])) continue;
                    lim = (hi_[b] - x_[b]) / rate;
                    to_upper = true;
                } else {
                    if (!std::isfinite(lo_[b])) continue;
                    lim = (lo_[b] - x_[b]) / rate;
                    to_upper = false;
                }
                if (lim < 0) lim = 0; // tiny bound violations
                if (lim < limit - 1e-12 ||
                    (lim < limit + 1e-12 && leave_row >= 0 && basis_[r] < basis_[leave_row])) {
                    limit = lim;
                    leave_row = r;
                    leave_to_upper = to_upper;
                }
            }

            if (!std::isfinite(limit)) return Status::unbounded;

            if (leave_row == -1) {
                // Bound flip: entering variable crosses to its other bound.
                double step = dir * flip_limit;
                for (int r = 0; r < m_; ++r)
                    if (y[r] != 0.0) x_[basis_[r]] -= step * y[r];
                x_[enter] = at_upper_[enter] ? lo_[enter] : hi_[enter];
                at_upper_[enter] ^= 1;
                stall_ = flip_limit > 1e-12 ? 0 : stall_ + 1;
            } else {
                double step = dir * limit;
                for (int r = 0; r < m_; ++r)
                    if (y[r] != 0.0) x_[basis_[r]] -= step * y[r];
                x_[enter] += step;
                int leave = basis_[leave_row];
                x_[leave] = leave_to_upper ? hi_[leave] : lo_[leave];
                at_upper_[leave] = leave_to_upper ? 1 : 0;
                pos_in_basis_[leave] = -1;
                basis_[leave_row] = enter;
                pos_in_basis_[enter] = leave_row;

                double piv = y[leave_row];
                kernels::scale(binv_row(leave_row), 1.0 / piv);
                for (int r = 0; r < m_; ++r) {
                    if (r == leave_row || y[r] == 0.0) continue;
                    kernels::axpy(-y[r], binv_row(leave_row), binv_row(r));
                }
                ++pivots_since_refactor_;
                stall_ = limit > 1e-12 ? 0 : stall_ + 1;
            }
            if (stall_ > kStallLimit) bland_ = true;
        }
        return Status::iteration_limit;
    }

    const LpCore& core_;
    int m_;
    int ns_;
    bool empty_box_ = false;
    bool phase_one_ = false;
    bool bland_ = false;
    int stall_ = 0;
    int num_art_ = 0;
    int pivots_since_refactor_ = 0;
    std::vector<std::pair<int, double>> art_; // (row, sign) per artificial
    std::vector<double> lo_, hi_, x_;
    std::vector<char> at_upper_;
    std::vector<int> pos_in_basis_;
    std::vector<int> basis_;
    std::vector<double> binv_;
};

} // namespace

LpResult solve_lp(const LpCore& core, std::span<const double> lo, std::span<const double> hi) {
    Simplex s(core, lo, hi);
    return s.run();
}

} // namespace kanon::detail
