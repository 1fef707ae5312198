// Concave piecewise-affine functions on a weighted simplex, stored as a
// minimum of finitely many irredundant affine forms. The domain is
// {t >= 0, sum_j b_j t_j = 1} in weight coordinates; vertex j of the
// simplex sits at (1/b_j) in coordinate j.
//
// Exactness notes:
//  - the active set at a point uses exact rational ties, no perturbation;
//  - the vertices of the common refinement of the affine pieces are
//    enumerated by solving all (dim)-subsets of the candidate equation set
//    {form_i = form_j} u {t_l = 0} on the normalization hyperplane, which
//    is where concave maxima and membership certificates live;
//  - Lipschitz constants follow the gradient-image description: the
//    maximum over forms of the dual norm of the form restricted to the
//    hyperplane W = {sum b_j v_j = 0}, computed by enumerating the
//    vertices of (unit ball) n W. Faces of dimension > 3 are rejected.

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "monoval/lp.hpp"
#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval {

struct AffineForm {
    QVec coeffs;
    Rational constant;

    Rational eval(const QVec& t) const { return dot(coeffs, t) + constant; }

    friend bool operator==(const AffineForm& a, const AffineForm& b) {
        return a.coeffs == b.coeffs && a.constant == b.constant;
    }
    friend bool operator<(const AffineForm& a, const AffineForm& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return a.constant < b.constant;
    }
};

struct SimplexDomain {
    QVec b;  // positive weights; domain = {t >= 0, <b,t> = 1}

    explicit SimplexDomain(QVec weights) : b(std::move(weights)) {
        if (b.empty()) throw std::invalid_argument("empty simplex domain");
        for (const auto& x : b)
            if (x.sign() <= 0) throw std::invalid_argument("simplex weights must be positive");
    }

    std::size_t ambient() const { return b.size(); }
    std::size_t dim() const { return b.size() - 1; }

    bool contains(const QVec& t) const {
        if (t.size() != b.size()) return false;
        for (const auto& x : t)
            if (x.sign() < 0) return false;
        return dot(b, t) == Rational(1);
    }

    // Corner j = (1/b_j) e_j.
    std::vector<QVec> corners() const {
        std::vector<QVec> out;
        for (std::size_t j = 0; j < b.size(); ++j) {
            QVec v(b.size(), Rational(0));
            v[j] = Rational(1) / b[j];
            out.push_back(std::move(v));
        }
        return out;
    }
};

// Unique solution of a square rational system, nullopt when singular.
inline std::optional<QVec> solve_linear(std::vector<QVec> a, QVec rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rational d = a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] /= d;
        rhs[col] /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

// Vertices of (unit ball of `primal`) intersected with W = {<b,v> = 0}.
inline std::vector<QVec> ball_section_vertices(Norm primal, const QVec& b) {
    const std::size_t k = b.size();
    std::set<QVec> out;
    if (k < 2) return {};
    if (primal == Norm::LInf) {
        // fix all coordinates but one to +-1, solve for the free one
        for (std::size_t free = 0; free < k; ++free) {
            for (std::size_t mask = 0; mask < (1u << (k - 1)); ++mask) {
                QVec v(k, Rational(0));
                Rational acc(0);
                std::size_t bit = 0;
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == free) continue;
                    v[j] = (mask >> bit) & 1 ? Rational(1) : Rational(-1);
                    acc += b[j] * v[j];
                    ++bit;
                }
                v[free] = -acc / b[free];
                if (v[free].abs() <= Rational(1)) out.insert(v);
            }
        }
    } else {
        // cross-polytope edges between +-e_i and -+e_j meet W at
        // (b_j e_i - b_i e_j) / (b_i + b_j)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                QVec v(k, Rational(0));
                const Rational s = b[i] + b[j];
                v[i] = b[j] / s;
                v[j] = -b[i] / s;
                out.insert(v);
                v[i] = -v[i];
                v[j] = -v[j];
                out.insert(v);
            }
    }
    return {out.begin(), out.end()};
}

class PiecewiseAffineConcave {
public:
    PiecewiseAffineConcave(SimplexDomain domain, std::vector<AffineForm> forms,
                           bool prune_redundant = true)
        : domain_(std::move(domain)), forms_(std::move(forms)) {
        if (forms_.empty()) throw std::invalid_argument("piecewise function needs a form");
        for (const auto& f : forms_)
            if (f.coeffs.size() != domain_.ambient())
                throw std::invalid_argument("form arity mismatch");
        dedupe();
        if (prune_redundant) prune();
    }

    const SimplexDomain& domain() const { return domain_; }
    const std::vector<AffineForm>& forms() const { return forms_; }

    Rational eval(const QVec& t) const {
        Rational best = forms_[0].eval(t);
        for (std::size_t i = 1; i < forms_.size(); ++i) best = min(best, forms_[i].eval(t));
        return best;
    }

    std::vector<std::size_t> active_indices(const QVec& t) const {
        const Rational v = eval(t);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < forms_.size(); ++i)
            if (forms_[i].eval(t) == v) out.push_back(i);
        return out;
    }

    // D_v chi(w) = min over forms active at v of form(w) - form(v).
    Rational directional_derivative(const QVec& v, const QVec& w) const {
        if (!domain_.contains(v)) throw std::invalid_argument("derivative base point outside domain");
        if (!domain_.contains(w)) throw std::invalid_argument("derivative target outside domain");
        const Rational val = eval(v);
        std::optional<Rational> best;
        for (const auto& f : forms_) {
            if (f.eval(v) != val) continue;
            const Rational d = f.eval(w) - val;
            if (!best || d < *best) best = d;
        }
        return *best;
    }

    // All vertices of the common refinement of the affine pieces inside the
    // domain simplex (includes the simplex corners).
    std::vector<QVec> refinement_vertices() const {
        const std::size_t k = domain_.ambient();
        if (k > 4) throw std::domain_error("refinement vertices: face dimension > 3 unsupported");
        std::set<QVec> out;
        if (k == 1) {
            out.insert(QVec{Rational(1) / domain_.b[0]});
            return {out.begin(), out.end()};
        }
        struct Eq {
            QVec lhs;
            Rational rhs;
        };
        std::vector<Eq> eqs;
        for (std::size_t i = 0; i < forms_.size(); ++i)
            for (std::size_t j = i + 1; j < forms_.size(); ++j)
                eqs.push_back({forms_[i].coeffs - forms_[j].coeffs,
                               forms_[j].constant - forms_[i].constant});
        for (std::size_t l = 0; l < k; ++l) {
            QVec row(k, Rational(0));
            row[l] = Rational(1);
            eqs.push_back({row, Rational(0)});
        }
        const std::size_t need = k - 1;
        std::vector<std::size_t> idx(need);
        auto emit = [&]() {
            std::vector<QVec> a;
            QVec rhs;
            a.push_back(domain_.b);
            rhs.push_back(Rational(1));
            for (auto i : idx) {
                a.push_back(eqs[i].lhs);
                rhs.push_back(eqs[i].rhs);
            }
            auto sol = solve_linear(a, rhs);
            if (sol && domain_.contains(*sol)) out.insert(*sol);
        };
        // iterate over all size-(k-1) subsets of eqs
        const std::size_t n = eqs.size();
        if (n >= need) {
            for (std::size_t i = 0; i < need; ++i) idx[i] = i;
            while (true) {
                emit();
                std::size_t i = need;
                while (i > 0) {
                    --i;
                    if (idx[i] + (need - i) < n) {
                        ++idx[i];
                        for (std::size_t j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
                        break;
                    }
                    if (i == 0) return {out.begin(), out.end()};
                }
            }
        }
        return {out.begin(), out.end()};
    }

    Rational max_value() const {
        Rational best;
        bool first = true;
        for (const auto& v : refinement_vertices()) {
            const Rational x = eval(v);
            if (first || x > best) best = x;
            first = false;
        }
        return best;
    }

    // Concave minimum sits at a corner of the simplex.
    Rational min_value() const {
        Rational best;
        bool first = true;
        for (const auto& v : domain_.corners()) {
            const Rational x = eval(v);
            if (first || x < best) best = x;
            first = false;
        }
        return best;
    }

    Rational sup_abs() const {
        Rational best(0);
        for (const auto& v : refinement_vertices()) best = max(best, eval(v).abs());
        return best;
    }

    // Exact Lipschitz constant w.r.t. the primal norm on weight coordinates.
    Rational lipschitz_constant(Norm primal) const {
        if (domain_.dim() == 0) return Rational(0);
        if (domain_.ambient() > 4)
            throw std::domain_error("lipschitz: face dimension > 3 unsupported");
        const auto ball = ball_section_vertices(primal, domain_.b);
        Rational best(0);
        for (const auto& f : forms_)
            for (const auto& u : ball) best = max(best, dot(f.coeffs, u).abs());
        return best;
    }

    Rational c01_norm(Norm primal) const { return sup_abs() + lipschitz_constant(primal); }

    PiecewiseAffineConcave shifted(const Rational& c) const {
        std::vector<AffineForm> fs = forms_;
        for (auto& f : fs) f.constant += c;
        return PiecewiseAffineConcave(domain_, std::move(fs), false);
    }

    friend PiecewiseAffineConcave operator+(const PiecewiseAffineConcave& a,
                                            const PiecewiseAffineConcave& b) {
        if (a.domain_.b != b.domain_.b)
            throw std::invalid_argument("sum of functions on different domains");
        std::vector<AffineForm> fs;
        fs.reserve(a.forms_.size() * b.forms_.size());
        for (const auto& f : a.forms_)
            for (const auto& g : b.forms_)
                fs.push_back({f.coeffs + g.coeffs, f.constant + g.constant});
        return PiecewiseAffineConcave(a.domain_, std::move(fs), true);
    }

private:
    // Forms agreeing on the normalization hyperplane are duplicates:
    // canonicalize by clearing the last coefficient with a multiple of b.
    AffineForm canonical(const AffineForm& f) const {
        const std::size_t k = domain_.ambient();
        const Rational lam = f.coeffs[k - 1] / domain_.b[k - 1];
        AffineForm g;
        g.coeffs = f.coeffs - (lam * domain_.b);
        g.constant = f.constant + lam;
        return g;
    }

    void dedupe() {
        std::set<AffineForm> seen;
        std::vector<AffineForm> keep;
        for (const auto& f : forms_) {
            if (seen.insert(canonical(f)).second) keep.push_back(f);
        }
        forms_ = std::move(keep);
    }

    void prune() {
        if (forms_.size() <= 1) return;
        std::vector<AffineForm> keep;
        for (std::size_t i = 0; i < forms_.size(); ++i) {
            // max delta s.t. form_j - form_i >= delta on the domain;
            // the form is a genuine piece iff delta* > 0.
            const std::size_t k = domain_.ambient();
            QVec obj(k + 1, Rational(0));
            obj[k] = Rational(1);
            std::vector<QVec> ineq;
            QVec rhs;
            for (std::size_t j = 0; j < forms_.size(); ++j) {
                if (j == i) continue;
                QVec row(k + 1, Rational(0));
                for (std::size_t l = 0; l < k; ++l)
                    row[l] = forms_[i].coeffs[l] - forms_[j].coeffs[l];
                row[k] = Rational(1);
                ineq.push_back(std::move(row));
                rhs.push_back(forms_[j].constant - forms_[i].constant);
            }
            for (std::size_t l = 0; l < k; ++l) {
                QVec row(k + 1, Rational(0));
                row[l] = Rational(-1);
                ineq.push_back(std::move(row));
                rhs.push_back(Rational(0));
            }
            QVec eq(k + 1, Rational(0));
            for (std::size_t l = 0; l < k; ++l) eq[l] = domain_.b[l];
            auto res = lp::maximize(obj, ineq, rhs, {eq}, {Rational(1)});
            if (res.status == lp::Status::Optimal && res.objective.sign() > 0)
                keep.push_back(forms_[i]);
        }
        if (!keep.empty()) forms_ = std::move(keep);
    }

    SimplexDomain domain_;
    std::vector<AffineForm> forms_;
};

}  // namespace monoval
