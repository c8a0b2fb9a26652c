#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ced/kernels.hpp"
#include "ced/optimizer.hpp"

// Two-phase primal revised simplex over an explicit dense basis inverse.
// The inverse is stored row-major so the pivot update is a sequence of
// contiguous row axpys; the right-hand side of the drawdown programs is
// almost entirely zero, which keeps the periodic x_B = B^-1 b refresh cheap.
//
// Numerical safeguards: a Harris-style two-pass ratio test (a relaxed bound
// first, then the largest pivot magnitude among blocking rows) keeps tiny
// pivots out of the inverse; the factorization residual is monitored and the
// inverse is rebuilt by Gauss-Jordan elimination when it degrades; optimality
// is only reported after re-pricing on a freshly rebuilt inverse.
//
// Pivot rules are deterministic: Dantzig pricing with lowest-index
// tie-break and Bland's rule as an anti-cycling fallback after a run of
// degenerate steps.

namespace ced {

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "?";
}

namespace {

struct Column {
    std::vector<std::pair<std::size_t, double>> entries;
    double cost = 0.0;
    bool artificial = false;
    bool free_var = false;  // no lower bound; never blocks the ratio test
    // structural origin: variable index in the caller's program, or -1
    int origin_var = -1;
    double origin_scale = 1.0;  // x_original = origin_scale * x_solver
};

struct Standardized {
    std::size_t n_rows = 0;
    std::vector<Column> cols;
    std::vector<double> rhs;  // >= 0 after normalization
    bool has_artificials = false;
};

Standardized standardize(const LinearProgram& lp) {
    Standardized s;
    s.n_rows = lp.rows.size();
    s.rhs.resize(s.n_rows);

    std::vector<std::vector<std::pair<std::size_t, double>>> var_entries(lp.n_vars);
    for (std::size_t r = 0; r < lp.rows.size(); ++r)
        for (const auto& [v, coef] : lp.rows[r].coeffs) {
            assert(v < lp.n_vars);
            var_entries[v].push_back({r, coef});
        }

    // Flip rows with negative rhs so the slack basis starts at rhs >= 0.
    std::vector<double> row_sign(s.n_rows, 1.0);
    std::vector<LinearProgram::RowKind> kind(s.n_rows);
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        kind[r] = lp.rows[r].kind;
        double b = lp.rows[r].rhs;
        if (b < 0.0) {
            row_sign[r] = -1.0;
            b = -b;
            if (kind[r] == LinearProgram::RowKind::ge)
                kind[r] = LinearProgram::RowKind::le;
            else if (kind[r] == LinearProgram::RowKind::le)
                kind[r] = LinearProgram::RowKind::ge;
        }
        s.rhs[r] = b;
    }

    // Structural columns. Each is equilibrated by a power of two (exact in
    // doubles) so its largest entry lands in [1, 2); badly scaled columns
    // otherwise feed small pivots into the inverse.
    for (std::size_t v = 0; v < lp.n_vars; ++v) {
        Column col;
        col.origin_var = static_cast<int>(v);
        col.free_var = lp.is_free[v];
        col.entries = var_entries[v];
        for (auto& [r, coef] : col.entries) coef *= row_sign[r];
        double max_abs = 0.0;
        for (const auto& [r, coef] : col.entries)
            max_abs = std::max(max_abs, std::abs(coef));
        double scale = 1.0;
        if (max_abs > 0.0) scale = std::ldexp(1.0, -std::ilogb(max_abs));
        for (auto& [r, coef] : col.entries) coef *= scale;
        col.cost = lp.objective[v] * scale;
        col.origin_scale = scale;
        s.cols.push_back(std::move(col));
    }

    // Slack (<=) and surplus (>=) columns.
    for (std::size_t r = 0; r < s.n_rows; ++r) {
        if (kind[r] == LinearProgram::RowKind::eq) continue;
        Column col;
        col.entries = {{r, kind[r] == LinearProgram::RowKind::le ? 1.0 : -1.0}};
        s.cols.push_back(std::move(col));
    }
    return s;
}

class Simplex {
public:
    Simplex(const LinearProgram& lp, const SolverOptions& opt)
        : lp_(lp), opt_(opt), std_(standardize(lp)), n_rows_(std_.n_rows) {}

    LpSolution run() {
        build_initial_basis();

        LpSolution sol;
        if (std_.has_artificials) {
            const SolveStatus s1 = iterate(/*phase1=*/true);
            if (s1 == SolveStatus::iteration_limit) {
                sol.status = s1;
                sol.iterations = iterations_;
                return sol;
            }
            refactorize();
            double infeas = 0.0;
            for (std::size_t r = 0; r < n_rows_; ++r)
                if (std_.cols[basis_[r]].artificial) infeas += std::max(x_b_[r], 0.0);
            if (infeas > phase1_tol()) {
                sol.status = SolveStatus::infeasible;
                sol.iterations = iterations_;
                return sol;
            }
            expel_zero_artificials();
        }

        // Iterate, then confirm optimality on a freshly rebuilt inverse;
        // pricing noise on a drifted factorization must not end the solve.
        SolveStatus s2 = SolveStatus::iteration_limit;
        for (int round = 0; round < 5; ++round) {
            s2 = iterate(/*phase1=*/false);
            if (s2 != SolveStatus::optimal) break;
            refactorize();
            if (!pricing_improves(/*phase1=*/false)) break;
        }
        sol.status = s2;
        sol.iterations = iterations_;
        if (s2 != SolveStatus::optimal) return sol;

        refine();
        sol.x.assign(lp_.n_vars, 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            const Column& col = std_.cols[basis_[r]];
            if (col.origin_var >= 0)
                sol.x[static_cast<std::size_t>(col.origin_var)] +=
                    col.origin_scale * x_b_[r];
        }
        sol.objective = 0.0;
        for (std::size_t v = 0; v < lp_.n_vars; ++v)
            sol.objective += lp_.objective[v] * sol.x[v];
        return sol;
    }

private:
    double phase1_tol() const {
        double b1 = 0.0;
        for (double b : std_.rhs) b1 += std::abs(b);
        return std::max(1e-7, 1e-9 * b1);
    }

    double* binv_row(std::size_t r) { return binv_.data() + r * n_rows_; }

    void build_initial_basis() {
        const std::size_t n_cols0 = std_.cols.size();
        basis_.assign(n_rows_, 0);
        in_basis_.assign(n_cols0, false);
        x_b_ = std_.rhs;

        std::vector<int> slack_col(n_rows_, -1);
        for (std::size_t c = 0; c < n_cols0; ++c) {
            const Column& col = std_.cols[c];
            if (col.origin_var < 0 && col.entries.size() == 1)
                slack_col[col.entries.front().first] = static_cast<int>(c);
        }

        binv_.assign(n_rows_ * n_rows_, 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            const int sc = slack_col[r];
            const bool slack_ok =
                sc >= 0 && (std_.cols[sc].entries.front().second > 0.0 ||
                            std_.rhs[r] == 0.0);
            if (slack_ok) {
                const double coef = std_.cols[sc].entries.front().second;
                basis_[r] = static_cast<std::size_t>(sc);
                in_basis_[sc] = true;
                binv_row(r)[r] = 1.0 / coef;
                x_b_[r] = std_.rhs[r] / coef;
            } else {
                Column art;
                art.entries = {{r, 1.0}};
                art.artificial = true;
                std_.cols.push_back(std::move(art));
                std_.has_artificials = true;
                const std::size_t c = std_.cols.size() - 1;
                in_basis_.push_back(true);
                basis_[r] = c;
                binv_row(r)[r] = 1.0;
                x_b_[r] = std_.rhs[r];
            }
        }
    }

    double column_cost(std::size_t c, bool phase1) const {
        const Column& col = std_.cols[c];
        if (phase1) return col.artificial ? 1.0 : 0.0;
        return col.cost;
    }

    // y = c_B' B^-1 accumulated over the rows with nonzero basic cost.
    void compute_duals(bool phase1, std::vector<double>& y) {
        y.assign(n_rows_, 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            const double cb = column_cost(basis_[r], phase1);
            if (cb != 0.0) kernels::axpy(cb, {binv_row(r), n_rows_}, y);
        }
    }

    double reduced_cost(std::size_t c, bool phase1,
                        const std::vector<double>& y) const {
        double rc = column_cost(c, phase1);
        for (const auto& [r, v] : std_.cols[c].entries) rc -= y[r] * v;
        return rc;
    }

    bool pricing_improves(bool phase1) {
        std::vector<double> y;
        compute_duals(phase1, y);
        for (std::size_t c = 0; c < std_.cols.size(); ++c) {
            if (in_basis_[c]) continue;
            if (std_.cols[c].artificial && !phase1) continue;
            if (reduced_cost(c, phase1, y) < -10.0 * opt_.opt_tol) return true;
        }
        return false;
    }

    // d = B^-1 a_c (column access of the row-major inverse).
    void ftran(std::size_t c, std::vector<double>& d) {
        d.assign(n_rows_, 0.0);
        for (const auto& [k, v] : std_.cols[c].entries) {
            const double* col = binv_.data() + k;
            for (std::size_t r = 0; r < n_rows_; ++r) d[r] += v * col[r * n_rows_];
        }
    }

    // Entering variable moves to sigma * step (sigma = -1 only for free
    // variables entering downward); the inverse update itself is unsigned.
    void pivot(std::size_t enter, std::size_t leave_row, const std::vector<double>& d,
               double sigma, double step) {
        const double piv = d[leave_row];
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (r == leave_row) continue;
            if (d[r] != 0.0) x_b_[r] -= step * sigma * d[r];
        }
        x_b_[leave_row] = sigma * step;

        double* prow = binv_row(leave_row);
        const double inv_piv = 1.0 / piv;
        for (std::size_t k = 0; k < n_rows_; ++k) prow[k] *= inv_piv;
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (r == leave_row || d[r] == 0.0) continue;
            kernels::axpy(-d[r], {prow, n_rows_}, {binv_row(r), n_rows_});
        }

        in_basis_[basis_[leave_row]] = false;
        basis_[leave_row] = enter;
        in_basis_[enter] = true;
    }

    // x_B = B^-1 b exploiting the sparsity of b.
    void refresh_basic_values() {
        std::fill(x_b_.begin(), x_b_.end(), 0.0);
        for (std::size_t k = 0; k < n_rows_; ++k) {
            const double b = std_.rhs[k];
            if (b == 0.0) continue;
            const double* col = binv_.data() + k;
            for (std::size_t r = 0; r < n_rows_; ++r) x_b_[r] += b * col[r * n_rows_];
        }
    }

    // One step of iterative refinement on B x_B = b.
    void refine() {
        std::vector<double> ax(n_rows_, 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r)
            for (const auto& [row, v] : std_.cols[basis_[r]].entries)
                ax[row] += v * x_b_[r];
        std::vector<double> resid(n_rows_);
        for (std::size_t r = 0; r < n_rows_; ++r) resid[r] = std_.rhs[r] - ax[r];
        for (std::size_t r = 0; r < n_rows_; ++r) {
            const double* row = binv_row(r);
            double delta = 0.0;
            for (std::size_t k = 0; k < n_rows_; ++k) delta += row[k] * resid[k];
            x_b_[r] += delta;
        }
    }

    // Rebuild the inverse from the basis columns: Gauss-Jordan with partial
    // pivoting on [B | M], M starting as the identity and ending as B^-1.
    void refactorize() {
        std::vector<double> b_dense(n_rows_ * n_rows_, 0.0);
        for (std::size_t c = 0; c < n_rows_; ++c)
            for (const auto& [r, v] : std_.cols[basis_[c]].entries)
                b_dense[r * n_rows_ + c] = v;
        std::vector<double>& m = binv_;
        std::fill(m.begin(), m.end(), 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r) m[r * n_rows_ + r] = 1.0;

        for (std::size_t k = 0; k < n_rows_; ++k) {
            std::size_t p = k;
            double best = std::abs(b_dense[k * n_rows_ + k]);
            for (std::size_t r = k + 1; r < n_rows_; ++r) {
                const double v = std::abs(b_dense[r * n_rows_ + k]);
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            if (best < 1e-12)
                throw std::runtime_error("simplex: singular basis during refactorization");
            if (p != k) {
                for (std::size_t j = 0; j < n_rows_; ++j) {
                    std::swap(b_dense[p * n_rows_ + j], b_dense[k * n_rows_ + j]);
                    std::swap(m[p * n_rows_ + j], m[k * n_rows_ + j]);
                }
            }
            const double inv_piv = 1.0 / b_dense[k * n_rows_ + k];
            for (std::size_t j = 0; j < n_rows_; ++j) {
                b_dense[k * n_rows_ + j] *= inv_piv;
                m[k * n_rows_ + j] *= inv_piv;
            }
            for (std::size_t r = 0; r < n_rows_; ++r) {
                if (r == k) continue;
                const double f = b_dense[r * n_rows_ + k];
                if (f == 0.0) continue;
                kernels::axpy(-f, {&b_dense[k * n_rows_], n_rows_},
                              {&b_dense[r * n_rows_], n_rows_});
                kernels::axpy(-f, {&m[k * n_rows_], n_rows_}, {&m[r * n_rows_], n_rows_});
            }
        }
        refresh_basic_values();
        refine();
    }

    // || B d - a_c ||_inf against the sparse basis columns: a direct
    // accuracy check of the direction about to enter the inverse.
    bool ftran_accurate(std::size_t c, const std::vector<double>& d) {
        std::vector<double> bd(n_rows_, 0.0);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (d[r] == 0.0) continue;
            for (const auto& [row, v] : std_.cols[basis_[r]].entries)
                bd[row] += v * d[r];
        }
        for (const auto& [r, v] : std_.cols[c].entries) bd[r] -= v;
        double err = 0.0;
        for (double v : bd) err = std::max(err, std::abs(v));
        return err <= 1e-7;
    }

    SolveStatus iterate(bool phase1) {
        std::vector<double> y, d;
        std::size_t degenerate_run = 0;
        bool bland = false;
        bool fresh_inverse = false;
        std::vector<char> banned(std_.cols.size(), 0);
        constexpr double piv_tol = 1e-9;
        constexpr double strong_piv = 1e-7;

        while (true) {
            if (iterations_ >= opt_.max_iterations) return SolveStatus::iteration_limit;

            compute_duals(phase1, y);

            // Pricing; free variables may enter in either direction.
            int enter = -1;
            double sigma = 1.0;
            double best_rc = -opt_.opt_tol;
            for (std::size_t c = 0; c < std_.cols.size(); ++c) {
                if (in_basis_[c] || banned[c]) continue;
                if (std_.cols[c].artificial && !phase1) continue;
                double rc = reduced_cost(c, phase1, y);
                double dir = 1.0;
                if (std_.cols[c].free_var && rc > 0.0) {
                    rc = -rc;
                    dir = -1.0;
                }
                if (rc < best_rc) {
                    best_rc = rc;
                    enter = static_cast<int>(c);
                    sigma = dir;
                    if (bland) break;  // lowest eligible index
                }
            }
            if (enter < 0) return SolveStatus::optimal;

            ftran(static_cast<std::size_t>(enter), d);
            if (!ftran_accurate(static_cast<std::size_t>(enter), d)) {
                if (fresh_inverse)
                    throw std::runtime_error(
                        "simplex: numerical failure (inaccurate ftran on a fresh "
                        "factorization)");
                refactorize();
                fresh_inverse = true;
                continue;
            }

            // Harris two-pass ratio test over the signed direction. Rows
            // whose basic variable is free never block. Pass 1: the relaxed
            // step bound, with basic values allowed to dip by feas_tol, so
            // noise-level values behind tiny pivots cannot dictate the
            // pivot choice.
            double theta_max = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < n_rows_; ++r) {
                const Column& bcol = std_.cols[basis_[r]];
                const double piv = sigma * d[r];
                if (bcol.free_var) continue;
                if (piv > piv_tol) {
                    theta_max = std::min(
                        theta_max, (std::max(x_b_[r], 0.0) + opt_.feas_tol) / piv);
                } else if (bcol.artificial && piv < -piv_tol) {
                    // a basic artificial must stay at zero
                    theta_max = std::min(theta_max, opt_.feas_tol / (-piv));
                }
            }
            if (!std::isfinite(theta_max)) {
                // Confirm on a clean inverse before declaring unboundedness.
                if (!fresh_inverse) {
                    refactorize();
                    fresh_inverse = true;
                    continue;
                }
                if (phase1)
                    throw std::runtime_error(
                        "simplex: numerical failure (phase-1 unbounded)");
                return SolveStatus::unbounded;
            }

            // Pass 2: among rows whose true ratio fits under the relaxed
            // bound, take the largest pivot magnitude (artificials first,
            // lowest basic index under Bland).
            int leave = -1;
            double leave_piv = 0.0;
            double step = 0.0;
            for (std::size_t r = 0; r < n_rows_; ++r) {
                const Column& bcol = std_.cols[basis_[r]];
                const double piv = sigma * d[r];
                if (bcol.free_var) continue;
                double ratio;
                if (piv > piv_tol)
                    ratio = std::max(x_b_[r], 0.0) / piv;
                else if (bcol.artificial && piv < -piv_tol)
                    ratio = 0.0;
                else
                    continue;
                if (ratio > theta_max) continue;
                bool take = false;
                if (leave < 0) {
                    take = true;
                } else if (bland) {
                    take = basis_[r] < basis_[static_cast<std::size_t>(leave)];
                } else {
                    const bool cur_art =
                        std_.cols[basis_[static_cast<std::size_t>(leave)]].artificial;
                    if (bcol.artificial != cur_art)
                        take = bcol.artificial;
                    else
                        take = std::abs(piv) > std::abs(leave_piv);
                }
                if (take) {
                    leave = static_cast<int>(r);
                    leave_piv = piv;
                    step = ratio;
                }
            }
            if (leave < 0) {
                if (!fresh_inverse) {
                    refactorize();
                    fresh_inverse = true;
                    continue;
                }
                if (phase1)
                    throw std::runtime_error(
                        "simplex: numerical failure (empty ratio-test candidate set)");
                return SolveStatus::unbounded;
            }

            // Tiny pivots must never reach the inverse: a drifted inverse can
            // manufacture them from structurally zero entries, and pivoting
            // on one makes the basis exactly singular. Re-derive on a fresh
            // factorization first; if the pivot is still tiny there, the
            // column is numerically unusable in this basis neighborhood.
            if (std::abs(leave_piv) < strong_piv) {
                if (!fresh_inverse) {
                    refactorize();
                    fresh_inverse = true;
                } else {
                    banned[static_cast<std::size_t>(enter)] = 1;
                }
                continue;
            }

            pivot(static_cast<std::size_t>(enter), static_cast<std::size_t>(leave), d,
                  sigma, step);
            ++iterations_;
            fresh_inverse = false;

            if (step <= 1e-12) {
                if (++degenerate_run >= 200) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }
            if (iterations_ % 64 == 0) refresh_basic_values();
        }
    }

    const LinearProgram& lp_;
    SolverOptions opt_;
    Standardized std_;
    std::size_t n_rows_;

    std::vector<double> binv_;  // row-major n_rows x n_rows
    std::vector<std::size_t> basis_;
    std::vector<bool> in_basis_;
    std::vector<double> x_b_;
    std::size_t iterations_ = 0;

    // After phase 1, pivot artificial variables sitting at zero out of the
    // basis wherever a non-artificial column has a usable entry in their
    // row. Rows admitting no such pivot are redundant and harmless: every
    // real column has a zero coefficient there.
    void expel_zero_artificials() {
        std::vector<double> alpha;
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (!std_.cols[basis_[r]].artificial) continue;
            const double* row = binv_row(r);
            int pick = -1;
            double best = 1e-7;
            for (std::size_t c = 0; c < std_.cols.size(); ++c) {
                if (in_basis_[c] || std_.cols[c].artificial) continue;
                double a = 0.0;
                for (const auto& [k, v] : std_.cols[c].entries) a += row[k] * v;
                if (std::abs(a) > best) {
                    best = std::abs(a);
                    pick = static_cast<int>(c);
                }
            }
            if (pick >= 0) {
                ftran(static_cast<std::size_t>(pick), alpha);
                pivot(static_cast<std::size_t>(pick), r, alpha, 1.0, 0.0);
            }
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
    if (lp.n_vars == 0 || lp.objective.size() != lp.n_vars ||
        lp.is_free.size() != lp.n_vars)
        throw precondition_error("malformed linear program");
    for (const auto& row : lp.rows)
        for (const auto& [v, coef] : row.coeffs) {
            if (v >= lp.n_vars)
                throw precondition_error("row references unknown variable");
            if (!std::isfinite(coef)) throw precondition_error("non-finite coefficient");
        }
    if (lp.rows.empty()) {
        LpSolution sol;
        sol.x.assign(lp.n_vars, 0.0);
        for (std::size_t v = 0; v < lp.n_vars; ++v) {
            if (lp.objective[v] < 0.0 || (lp.is_free[v] && lp.objective[v] != 0.0)) {
                sol.status = SolveStatus::unbounded;
                return sol;
            }
        }
        sol.status = SolveStatus::optimal;
        return sol;
    }
    Simplex simplex(lp, options);
    return simplex.run();
}

}  // namespace ced
