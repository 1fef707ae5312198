// Multiplicity theory on monomial models: Hilbert-Samuel multiplicities via
// exact covolumes with a lattice-counting oracle, mixed multiplicities by
// interpolation, the alpha invariants of a monomial valuation, volumes,
// linking numbers, and the ideal-inclusion experiments behind the Lipschitz
// continuity of these invariants.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoval/ideals.hpp"
#include "monoval/newton.hpp"
#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval {

inline Rational factorial(int m) {
    Rational f(1);
    for (int i = 2; i <= m; ++i) f *= Rational(i);
    return f;
}

// e(I) = m! vol(orthant \ Nw(I)), exact for arity <= 3.
inline Rational hilbert_samuel(const MonomialIdeal& ideal) {
    if (!ideal.is_primary()) throw std::domain_error("multiplicity of a non-primary ideal");
    if (ideal.arity() > 3)
        throw std::domain_error("exact multiplicity unsupported beyond arity 3; use the oracle");
    return factorial(ideal.arity()) * covolume(ideal.newton());
}

// Counting oracle: m!/n^m dim_k(O/I^n).
inline Rational hilbert_samuel_oracle(const MonomialIdeal& ideal, int n) {
    if (n <= 0) throw std::invalid_argument("oracle step must be positive");
    const std::int64_t len = colength(ideal.pow(n));
    Rational nn(n);
    Rational denom(1);
    for (int i = 0; i < ideal.arity(); ++i) denom *= nn;
    return factorial(ideal.arity()) * Rational(len) / denom;
}

// Solves the interpolation system for the mixed multiplicities
// e(I^{[m-i]}; J^{[i]}), i = 0..m, from exact values of e(I^r J^s) at
// (r, s) = (m, 0), (m-1, 1), ..., (0, m).
inline std::vector<Rational> mixed_multiplicities(const MonomialIdeal& a,
                                                  const MonomialIdeal& b) {
    if (a.arity() != b.arity()) throw std::invalid_argument("mixed multiplicities: arity mismatch");
    const int m = a.arity();
    std::vector<QVec> rows;
    QVec rhs;
    for (int k = 0; k <= m; ++k) {
        const int r = m - k, s = k;
        const MonomialIdeal prod = a.pow(r) * b.pow(s);
        rhs.push_back(hilbert_samuel(prod));
        QVec row;
        for (int i = 0; i <= m; ++i) {
            // C(m, i) r^{m-i} s^i
            Rational c(1);
            for (int t = 0; t < i; ++t)
                c = c * Rational(m - t) / Rational(t + 1);
            for (int t = 0; t < m - i; ++t) c *= Rational(r);
            for (int t = 0; t < i; ++t) c *= Rational(s);
            row.push_back(c);
        }
        rows.push_back(std::move(row));
    }
    auto sol = solve_linear(rows, rhs);
    if (!sol) throw std::logic_error("mixed multiplicity interpolation system is singular");
    return *sol;
}

// ---- alpha invariants of a monomial valuation ------------------------------

struct AlphaVector {
    QVec exact;  // alpha_0 .. alpha_m
    std::vector<int> oracle_steps;
    std::vector<QVec> oracle;  // per step n: e(a(v,n)^{[i]}; m0^{[m-i]}) / n^i
};

namespace detail {

// m! * covolume of r*P + s*Q for regions given by their vertex sets.
inline Rational scaled_sum_covolume(const std::vector<QVec>& p_verts,
                                    const std::vector<QVec>& q_verts, int r, int s, int m) {
    std::vector<QVec> pts;
    const Rational rr(r), ss(s);
    if (r == 0) {
        for (const auto& q : q_verts) pts.push_back(ss * q);
    } else if (s == 0) {
        for (const auto& p : p_verts) pts.push_back(rr * p);
    } else {
        for (const auto& p : p_verts)
            for (const auto& q : q_verts) pts.push_back((rr * p) + (ss * q));
    }
    return factorial(m) * covolume(newton_region(std::move(pts), m));
}

}  // namespace detail

// Exact alpha_i via the scaling identity: a(v,n) is the lattice part of
// n * P_t with P_t = {x >= 0 : <t,x> >= 1}, so
// m! covol(r P_t + s Simplex) = sum_i C(m,i) alpha_i r^i s^{m-i}.
// The oracle estimates recompute e(a(v,n)^{[i]}; m0^{[m-i]}) / n^i from
// actual valuation ideals.
inline AlphaVector alpha(const QVec& t, const std::vector<int>& oracle_steps = {4, 8, 16}) {
    const int m = static_cast<int>(t.size());
    for (const auto& x : t)
        if (x.sign() <= 0) throw std::invalid_argument("alpha needs a full-support weight");
    if (m > 3) throw std::domain_error("alpha unsupported beyond arity 3");

    std::vector<QVec> p_verts, q_verts;
    for (int i = 0; i < m; ++i) {
        QVec p(m, Rational(0)), q(m, Rational(0));
        p[i] = Rational(1) / t[i];
        q[i] = Rational(1);
        p_verts.push_back(std::move(p));
        q_verts.push_back(std::move(q));
    }
    std::vector<QVec> rows;
    QVec rhs;
    for (int k = 0; k <= m; ++k) {
        const int r = m - k, s = k;
        rhs.push_back(detail::scaled_sum_covolume(p_verts, q_verts, r, s, m));
        QVec row;
        for (int i = 0; i <= m; ++i) {
            Rational c(1);
            for (int u = 0; u < i; ++u)
                c = c * Rational(m - u) / Rational(u + 1);
            for (int u = 0; u < i; ++u) c *= Rational(r);
            for (int u = 0; u < m - i; ++u) c *= Rational(s);
            row.push_back(c);
        }
        rows.push_back(std::move(row));
    }
    auto sol = solve_linear(rows, rhs);
    if (!sol) throw std::logic_error("alpha interpolation system is singular");

    AlphaVector out;
    out.exact = *sol;
    const MonomialIdeal m0 = MonomialIdeal::maximal(m);
    for (int n : oracle_steps) {
        const MonomialIdeal an = valuation_ideal(t, Rational(n));
        const auto mixed = mixed_multiplicities(an, m0);
        QVec est(m + 1, Rational(0));
        Rational npow(1);
        for (int i = 0; i <= m; ++i) {
            // e(a^{[i]}; m0^{[m-i]}) = mixed[m-i]
            est[i] = mixed[m - i] / npow;
            npow *= Rational(n);
        }
        out.oracle_steps.push_back(n);
        out.oracle.push_back(std::move(est));
    }
    return out;
}

// vol(v) = alpha_m; for a monomial valuation this is 1 / prod t_i.
inline Rational volume_exact(const QVec& t) {
    Rational v(1);
    for (const auto& x : t) {
        if (x.sign() <= 0) throw std::invalid_argument("volume needs a full-support weight");
        v /= x;
    }
    return v;
}

inline Rational volume_oracle(const QVec& t, int n) {
    const int m = static_cast<int>(t.size());
    const std::int64_t len = colength(valuation_ideal(t, Rational(n)));
    Rational denom(1);
    for (int i = 0; i < m; ++i) denom *= Rational(n);
    return factorial(m) * Rational(len) / denom;
}

// ---- linking numbers -------------------------------------------------------

// beta(v/w) = sup over m_0 of v/w = max_i t_i / s_i for monomial
// valuations (the ratio of minima is maximized on monomials, and on
// monomials on the coordinate rays).
inline Rational linking_number(const QVec& t, const QVec& s) {
    if (t.size() != s.size()) throw std::invalid_argument("linking number: arity mismatch");
    std::optional<Rational> best;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].sign() <= 0 || s[i].sign() <= 0)
            throw std::invalid_argument("linking number needs full-support weights");
        const Rational r = t[i] / s[i];
        if (!best || r > *best) best = r;
    }
    return *best;
}

// Brute force over all monomials of total degree <= max_degree.
inline Rational linking_number_bruteforce(const QVec& t, const QVec& s, int max_degree) {
    const int m = static_cast<int>(t.size());
    std::optional<Rational> best;
    struct Rec {
        static void walk(int m, int coord, int left, ExponentVec& cur,
                         const std::function<void(const ExponentVec&)>& visit) {
            if (coord == m) {
                if (total_degree(cur) > 0) visit(cur);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                cur.push_back(x);
                walk(m, coord + 1, left - x, cur, visit);
                cur.pop_back();
            }
        }
    };
    ExponentVec cur;
    Rec::walk(m, 0, max_degree, cur, [&](const ExponentVec& e) {
        const Rational r = dot(t, e) / dot(s, e);
        if (!best || r > *best) best = r;
    });
    return *best;
}

// Lemma route: beta(v/w)^{-1} = lim_n (1/n) w(a(v,n)); the approximants
// w(a(v,n))/n decrease to the limit.
inline Rational linking_number_ideal_approx(const QVec& t, const QVec& s, int n) {
    const MonomialIdeal an = valuation_ideal(t, Rational(n));
    std::optional<Rational> wmin;
    for (const auto& g : an.generators()) {
        const Rational v = dot(s, g);
        if (!wmin || v < *wmin) wmin = v;
    }
    return *wmin / Rational(n);
}

// ---- Corollary D / E experiments -------------------------------------------

struct InclusionExperimentRow {
    QVec v, w;
    Rational distance;  // LInf
    bool inclusion_ok = true;       // a(v,n) subset a(w, n(1-A d)) at each step
    QVec alpha_gap_ratio;           // |alpha_i(v)-alpha_i(w)| / distance per i
    QVec alpha_bound;               // i * C * A per i
    bool ratios_ok = true;
};

// Exact ideal inclusion a(v,n) subset a(w, n(1 - A |v-w|)) plus the
// Lipschitz ratios of the alpha invariants. Weights are normalized by
// v(m_0) = min_i v_i = 1, which is what makes the inclusion exact.
inline InclusionExperimentRow corollary_d_case(const QVec& v, const QVec& w, const Rational& a_const,
                                               const QVec& alpha_sup,
                                               const std::vector<int>& steps = {8, 16, 32}) {
    InclusionExperimentRow row;
    row.v = v;
    row.w = w;
    row.distance = norm_eval(Norm::LInf, v - w);
    const int m = static_cast<int>(v.size());
    if (!(row.distance * a_const < Rational(1)))
        throw std::invalid_argument("corollary D pair too far apart: need |v-w| < 1/A");
    for (int n : steps) {
        const Rational target = Rational(n) * (Rational(1) - a_const * row.distance);
        const MonomialIdeal av = valuation_ideal(v, Rational(n));
        for (const auto& g : av.generators())
            if (dot(w, g) < target) row.inclusion_ok = false;
        const MonomialIdeal bw = valuation_ideal(w, Rational(n));
        const Rational target2 = Rational(n) * (Rational(1) - a_const * row.distance);
        for (const auto& g : bw.generators())
            if (dot(v, g) < target2) row.inclusion_ok = false;
    }
    const AlphaVector av = alpha(v, {});
    const AlphaVector aw = alpha(w, {});
    for (int i = 0; i <= m; ++i) {
        const Rational gap = (av.exact[i] - aw.exact[i]).abs();
        row.alpha_gap_ratio.push_back(row.distance.is_zero() ? Rational(0)
                                                             : gap / row.distance);
        row.alpha_bound.push_back(Rational(i) * alpha_sup[i] * a_const);
        if (row.alpha_gap_ratio.back() > row.alpha_bound.back()) row.ratios_ok = false;
    }
    return row;
}

struct LinkingExperimentRow {
    Rational displacement;       // max of the two LInf displacements
    Rational beta_vv, beta_ww;   // beta(v/v') and beta(w/w')
    bool submultiplicative_ok;   // beta(v/v') <= beta(v/w) beta(w/v')
    bool reciprocal_ok;          // beta(v/v') beta(v'/v) >= 1
    bool chain_bound_ok;         // beta(v/v') <= beta(w/w') / ((1-Ad)(1-Ad'))
    Rational gap_ratio;          // |beta(v/v') - beta(w/w')| / displacement
};

inline LinkingExperimentRow corollary_e_case(const QVec& v, const QVec& vp, const QVec& w,
                                             const QVec& wp, const Rational& a_const) {
    LinkingExperimentRow row;
    const Rational d1 = norm_eval(Norm::LInf, v - w);
    const Rational d2 = norm_eval(Norm::LInf, vp - wp);
    row.displacement = max(d1, d2);
    row.beta_vv = linking_number(v, vp);
    row.beta_ww = linking_number(w, wp);
    row.submultiplicative_ok =
        linking_number(v, vp) <= linking_number(v, w) * linking_number(w, vp);
    row.reciprocal_ok = linking_number(v, vp) * linking_number(vp, v) >= Rational(1);
    const Rational f1 = Rational(1) - a_const * d1;
    const Rational f2 = Rational(1) - a_const * d2;
    row.chain_bound_ok = f1.sign() > 0 && f2.sign() > 0 &&
                         row.beta_vv * f1 * f2 <= row.beta_ww;
    row.gap_ratio = row.displacement.is_zero()
                        ? Rational(0)
                        : (row.beta_vv - row.beta_ww).abs() / row.displacement;
    return row;
}

}  // namespace monoval
