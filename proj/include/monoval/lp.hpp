// Exact linear programming over the rationals: dense two-phase simplex with
// Bland's rule. Problem sizes in this library are tiny (a handful of rows,
// at most a few hundred columns), so a full tableau is the right tool.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rational objective;  // valid when Optimal
    QVec x;              // valid when Optimal
};

namespace detail {

class Tableau {
public:
    // min c.x  s.t.  A x = b, x >= 0
    Tableau(const std::vector<QVec>& A, const QVec& b, const QVec& c)
        : m_(A.size()), n_(c.size()), cost_(c) {
        rows_.resize(m_);
        rhs_.resize(m_);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (A[i].size() != n_) throw std::invalid_argument("lp: row size mismatch");
            rows_[i] = A[i];
            rhs_[i] = b[i];
            if (rhs_[i].sign() < 0) {
                for (auto& v : rows_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
            // artificial column index n_ + i
            basis_[i] = n_ + i;
        }
        // extend rows with artificial identity block
        for (std::size_t i = 0; i < m_; ++i) {
            rows_[i].resize(n_ + m_, Rational(0));
            rows_[i][n_ + i] = Rational(1);
        }
    }

    Result run() {
        // Phase 1: minimize the sum of artificials.
        obj_.assign(n_ + m_, Rational(0));
        obj_rhs_ = Rational(0);
        for (std::size_t j = 0; j < n_; ++j) {
            Rational s(0);
            for (std::size_t i = 0; i < m_; ++i) s += rows_[i][j];
            obj_[j] = -s;
        }
        for (std::size_t i = 0; i < m_; ++i) obj_rhs_ -= rhs_[i];
        iterate();
        if (obj_rhs_ != Rational(0)) return {Status::Infeasible, Rational(0), {}};

        // Drive remaining artificial variables out of the basis.
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t j = 0;
            for (; j < n_; ++j)
                if (rows_[i][j] != Rational(0)) break;
            if (j < n_) {
                pivot(i, j);
            } else {
                // redundant constraint row; mark dead by keeping the
                // artificial basic at value zero
            }
        }

        // Phase 2 objective.
        for (std::size_t j = 0; j < n_ + m_; ++j)
            obj_[j] = j < n_ ? cost_[j] : Rational(0);
        obj_rhs_ = Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_) continue;
            const Rational cb = cost_[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] -= cb * rows_[i][j];
            obj_rhs_ -= cb * rhs_[i];
        }
        if (!iterate()) return {Status::Unbounded, Rational(0), {}};

        Result r;
        r.status = Status::Optimal;
        r.objective = -obj_rhs_;
        r.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) r.x[basis_[i]] = rhs_[i];
        return r;
    }

private:
    // Returns false on unboundedness.
    bool iterate() {
        while (true) {
            // Bland: entering = smallest index with negative reduced cost.
            // Artificial columns never re-enter.
            std::size_t enter = n_ + m_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (obj_[j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_ + m_) return true;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter].sign() <= 0) continue;
                Rational ratio = rhs_[i] / rows_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t pr, std::size_t pc) {
        const Rational piv = rows_[pr][pc];
        if (piv.is_zero()) throw std::logic_error("lp: zero pivot");
        for (auto& v : rows_[pr]) v /= piv;
        rhs_[pr] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == pr) continue;
            const Rational f = rows_[i][pc];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) rows_[i][j] -= f * rows_[pr][j];
            rhs_[i] -= f * rhs_[pr];
        }
        const Rational f = obj_[pc];
        if (!f.is_zero()) {
            for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] -= f * rows_[pr][j];
            obj_rhs_ -= f * rhs_[pr];
        }
        basis_[pr] = pc;
    }

    std::size_t m_, n_;
    QVec cost_;
    std::vector<QVec> rows_;
    QVec rhs_;
    QVec obj_;
    Rational obj_rhs_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

// min c.x subject to A x = b, x >= 0.
inline Result solve_standard(const std::vector<QVec>& A, const QVec& b, const QVec& c) {
    if (A.size() != b.size()) throw std::invalid_argument("lp: |A| != |b|");
    detail::Tableau t(A, b, c);
    return t.run();
}

// Is {x >= 0 : A x = b} nonempty?
inline bool feasible(const std::vector<QVec>& A, const QVec& b) {
    const QVec zero(A.empty() ? 0 : A[0].size(), Rational(0));
    return solve_standard(A, b, zero).status == Status::Optimal;
}

// General small LP with free variables:
//   max c.x  s.t.  ineq_lhs.x <= ineq_rhs (rowwise), eq_lhs.x == eq_rhs.
// Free variables are split and inequalities get slacks.
inline Result maximize(const QVec& c,
                       const std::vector<QVec>& ineq_lhs, const QVec& ineq_rhs,
                       const std::vector<QVec>& eq_lhs, const QVec& eq_rhs) {
    const std::size_t n = c.size();
    const std::size_t mi = ineq_lhs.size(), me = eq_lhs.size();
    const std::size_t cols = 2 * n + mi;
    std::vector<QVec> A;
    QVec b;
    A.reserve(mi + me);
    auto expand = [&](const QVec& row, bool slack, std::size_t slack_idx) {
        QVec r(cols, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            r[2 * j] = row[j];
            r[2 * j + 1] = -row[j];
        }
        if (slack) r[2 * n + slack_idx] = Rational(1);
        return r;
    };
    for (std::size_t i = 0; i < mi; ++i) {
        A.push_back(expand(ineq_lhs[i], true, i));
        b.push_back(ineq_rhs[i]);
    }
    for (std::size_t i = 0; i < me; ++i) {
        A.push_back(expand(eq_lhs[i], false, 0));
        b.push_back(eq_rhs[i]);
    }
    QVec cost(cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[2 * j] = -c[j];  // min -c.x
        cost[2 * j + 1] = c[j];
    }
    Result inner = solve_standard(A, b, cost);
    if (inner.status != Status::Optimal) return {inner.status, Rational(0), {}};
    Result r;
    r.status = Status::Optimal;
    r.objective = -inner.objective;
    r.x.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) r.x[j] = inner.x[2 * j] - inner.x[2 * j + 1];
    return r;
}

}  // namespace monoval::lp
