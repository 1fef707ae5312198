// Monomial valuations and the concave piecewise-affine function chi_f.
//
// A weight vector t >= 0 on the coordinates of a face evaluates a support
// set by min over the support of <t, alpha>; chi_on_face packages the same
// data as a PiecewiseAffineConcave whose forms are the extremal points of
// the Newton polyhedron.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monoval/complex.hpp"
#include "monoval/newton.hpp"
#include "monoval/piecewise.hpp"
#include "monoval/support_set.hpp"

namespace monoval {

inline RationalOrInf eval_valuation(const QVec& t, const SupportSet& f) {
    if (f.is_zero()) return std::nullopt;
    if (static_cast<int>(t.size()) != f.arity())
        throw std::invalid_argument("eval_valuation: arity mismatch");
    std::optional<Rational> best;
    for (const auto& [e, c] : f.terms()) {
        const Rational v = dot(t, e);
        if (!best || v < *best) best = v;
    }
    return best;
}

// chi_f on the face with weights b: forms are the extremal points of
// Nw(f), so the representation is canonical and duplicate-free.
inline PiecewiseAffineConcave chi_on_face(const SupportSet& f, const QVec& b) {
    if (f.is_zero()) throw std::invalid_argument("chi of the zero polynomial");
    if (static_cast<int>(b.size()) != f.arity())
        throw std::invalid_argument("chi_on_face: face size != arity");
    std::vector<AffineForm> forms;
    for (const auto& p : newton_polyhedron(f).extremal) forms.push_back({p, Rational(0)});
    // extremal forms are automatically irredundant
    return PiecewiseAffineConcave(SimplexDomain(b), std::move(forms), false);
}

// Projection of the support onto a subset of coordinates. Distinct
// residual monomials never cancel, so the projected support is just the
// set of distinct projected exponents.
inline SupportSet project_support(const SupportSet& f, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("projection to empty coordinate set");
    SupportSet out(static_cast<int>(coords.size()));
    std::set<ExponentVec> seen;
    for (const auto& [e, c] : f.terms()) {
        ExponentVec p(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) p[i] = e[coords[i]];
        if (seen.insert(p).second) out.add_term(p, Rational(1));
    }
    return out;
}

// beta in Nw(f): primary route, exact LP over the convex-combination
// certificate.
inline bool np_membership(const QVec& beta, const SupportSet& f) {
    if (f.is_zero()) throw std::invalid_argument("membership in Nw of zero polynomial");
    if (static_cast<int>(beta.size()) != f.arity())
        throw std::invalid_argument("np_membership: arity mismatch");
    std::vector<QVec> pts;
    for (const auto& [e, c] : f.terms()) pts.push_back(to_qvec(e));
    return region_contains(pts, beta);
}

// beta in Nw(f): independent route via the dual criterion
// <v, beta> >= v(f) for all v in the unit simplex, checked at the vertices
// of the common refinement of chi's affine pieces.
inline bool np_membership_vertex_criterion(const QVec& beta, const SupportSet& f) {
    if (f.is_zero()) throw std::invalid_argument("membership in Nw of zero polynomial");
    if (static_cast<int>(beta.size()) != f.arity())
        throw std::invalid_argument("np_membership: arity mismatch");
    const QVec ones(f.arity(), Rational(1));
    const auto chi = chi_on_face(f, ones);
    for (const auto& v : chi.refinement_vertices())
        if (dot(v, beta) < chi.eval(v)) return false;
    return true;
}

// Theorem A / A' checks. A face is described by its label, the simplex
// weights b, and the support set of f expanded in that face's coordinates.
struct FaceChart {
    std::string label;
    QVec b;
    SupportSet support;
};

struct TheoremAReport {
    struct Row {
        std::string face;
        std::int64_t ord0 = 0;
        Rational max_extremal_norm;
        Rational lipschitz;
        bool vacuous = false;     // chi == 0 (f a unit): bound holds trivially
        Rational norm_ratio;      // max_extremal_norm / ord0
        Rational lip_ratio;       // lipschitz / ord0
        bool pass = true;
    };
    std::vector<Row> rows;
    Rational minimal_A;  // smallest A valid for every row (both bounds)
    bool all_pass = true;
};

// exponent_norm applies to extremal points of the Newton polyhedra; the
// Lipschitz constants use the dual norm on weight coordinates.
inline TheoremAReport check_theoremA(const std::vector<FaceChart>& faces, std::int64_t ord0,
                                     Norm exponent_norm = Norm::L1,
                                     const std::optional<Rational>& A = std::nullopt) {
    TheoremAReport rep;
    rep.minimal_A = Rational(0);
    for (const auto& fc : faces) {
        TheoremAReport::Row row;
        row.face = fc.label;
        row.ord0 = ord0;
        if (fc.support.is_zero())
            throw std::invalid_argument("theorem A check on zero support");
        Rational maxnorm(0);
        for (const auto& e : newton_polyhedron(fc.support).extremal)
            maxnorm = max(maxnorm, norm_eval(exponent_norm, e));
        row.max_extremal_norm = maxnorm;
        const auto chi = chi_on_face(fc.support, fc.b);
        row.lipschitz = chi.lipschitz_constant(dual(exponent_norm));
        if (ord0 == 0) {
            // unit: chi must vanish identically and the bound is vacuous
            row.vacuous = true;
            row.pass = row.lipschitz.is_zero();
        } else {
            const Rational o(static_cast<long long>(ord0));
            row.norm_ratio = row.max_extremal_norm / o;
            row.lip_ratio = row.lipschitz / o;
            rep.minimal_A = max(rep.minimal_A, max(row.norm_ratio, row.lip_ratio));
            if (A) row.pass = row.max_extremal_norm <= *A * o && row.lipschitz <= *A * o;
        }
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// Faces of the smooth monomial model on m coordinates (b = 1): every
// nonempty subset J of the coordinates with the projected support.
inline std::vector<FaceChart> smooth_model_faces(const SupportSet& f) {
    const int m = f.arity();
    if (m > 4) throw std::domain_error("smooth model faces: arity > 4 unsupported");
    std::vector<FaceChart> out;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> coords;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) coords.push_back(i);
        FaceChart fc;
        fc.label = "J=";
        for (int i : coords) fc.label += std::string(1, detail::kVarNames[i]);
        fc.b = QVec(coords.size(), Rational(1));
        fc.support = project_support(f, coords);
        out.push_back(std::move(fc));
    }
    return out;
}

}  // namespace monoval
