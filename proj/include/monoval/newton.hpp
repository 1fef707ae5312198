// Newton polyhedra: conv(points) + nonnegative orthant, represented by the
// extremal point set. Works over rational points so that both monomial
// ideals (lattice generators) and scaled/Minkowski regions (alpha
// invariants) share one implementation.
//
// Bounded facets carry strictly positive inward normals; for m_0-primary
// regions the complement of the polyhedron in the orthant is star-shaped at
// the origin and its exact volume is the sum of pyramids over the bounded
// facets.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "monoval/lp.hpp"
#include "monoval/rational.hpp"
#include "monoval/support_set.hpp"
#include "monoval/vec.hpp"

namespace monoval {

struct NewtonPolyhedron {
    int arity = 0;
    std::vector<QVec> extremal;  // vertices, no dominated points
};

// q in conv(points) + orthant, decided by exact LP feasibility:
// exists lambda >= 0, slack >= 0 with sum lambda = 1, sum lambda p + slack = q.
inline bool region_contains(const std::vector<QVec>& points, const QVec& q) {
    if (points.empty()) return false;
    const std::size_t m = q.size();
    const std::size_t k = points.size();
    std::vector<QVec> A(m + 1, QVec(k + m, Rational(0)));
    QVec b(m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = points[j][i];
        A[i][k + i] = Rational(1);
        b[i] = q[i];
    }
    for (std::size_t j = 0; j < k; ++j) A[m][j] = Rational(1);
    b[m] = Rational(1);
    return lp::feasible(A, b);
}

inline NewtonPolyhedron newton_region(std::vector<QVec> points, int arity) {
    if (points.empty()) throw std::invalid_argument("newton region of empty point set");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != arity)
            throw std::invalid_argument("newton region: arity mismatch");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // Cheap prefilter: drop componentwise-dominated points.
    auto dominates = [](const QVec& a, const QVec& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    std::vector<QVec> antichain;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            if (i != j && dominates(points[j], points[i])) dominated = true;
        if (!dominated) antichain.push_back(points[i]);
    }

    NewtonPolyhedron np;
    np.arity = arity;
    for (std::size_t i = 0; i < antichain.size(); ++i) {
        std::vector<QVec> others;
        others.reserve(antichain.size() - 1);
        for (std::size_t j = 0; j < antichain.size(); ++j)
            if (j != i) others.push_back(antichain[j]);
        if (others.empty() || !region_contains(others, antichain[i]))
            np.extremal.push_back(antichain[i]);
    }
    return np;
}

inline NewtonPolyhedron newton_polyhedron(const SupportSet& f) {
    if (f.is_zero()) throw std::invalid_argument("newton polyhedron of zero polynomial");
    std::vector<QVec> pts;
    pts.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) pts.push_back(to_qvec(e));
    return newton_region(std::move(pts), f.arity());
}

inline std::vector<ExponentVec> extremal_exponents(const SupportSet& f) {
    NewtonPolyhedron np = newton_polyhedron(f);
    std::vector<ExponentVec> out;
    out.reserve(np.extremal.size());
    for (const auto& p : np.extremal) {
        ExponentVec e(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_integer()) throw std::logic_error("integer extremal point expected");
            e[i] = static_cast<std::int64_t>(p[i].numerator().get_si());
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline bool np_contains(const NewtonPolyhedron& np, const QVec& q) {
    return region_contains(np.extremal, q);
}

struct BoundedFacet {
    QVec normal;                // strictly positive, primitive integer entries
    Rational value;             // min of <normal, .> over the polyhedron
    std::vector<QVec> vertices; // extremal points lying on the facet
};

// True when the complement of the polyhedron inside the orthant is bounded,
// i.e. each coordinate axis carries an extremal point.
inline bool np_is_primary(const NewtonPolyhedron& np) {
    for (int i = 0; i < np.arity; ++i) {
        bool found = false;
        for (const auto& p : np.extremal) {
            bool on_axis = true;
            for (int j = 0; j < np.arity && on_axis; ++j)
                if (j != i && !p[j].is_zero()) on_axis = false;
            if (on_axis) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace detail {

inline QVec primitive_positive(QVec w) {
    BigInt lcm_den(1);
    for (const auto& x : w) {
        BigInt d = x.denominator();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    BigInt gcd_num(0);
    std::vector<BigInt> ints;
    for (const auto& x : w) {
        BigInt n = x.numerator() * (lcm_den / x.denominator());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
        ints.push_back(n);
    }
    if (gcd_num == 0) throw std::logic_error("zero normal");
    QVec out;
    out.reserve(w.size());
    for (auto& n : ints) out.emplace_back(Rational(BigInt(n / gcd_num)));
    return out;
}

// Fan triangulation of a planar facet polygon (3D), exact angular sort
// around the centroid via cross-product comparisons in a projection plane.
inline std::vector<std::array<QVec, 3>> triangulate_facet(const std::vector<QVec>& verts,
                                                          const QVec& normal) {
    // project out the coordinate with the largest |normal| entry
    std::size_t drop = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (normal[i].abs() > normal[drop].abs()) drop = i;
    const std::size_t a = (drop + 1) % 3, b = (drop + 2) % 3;

    QVec centroid(3, Rational(0));
    for (const auto& v : verts) centroid = centroid + v;
    const Rational inv(1, static_cast<long>(verts.size()));
    centroid = inv * centroid;

    struct P2 {
        Rational x, y;
        QVec orig;
    };
    std::vector<P2> pts;
    pts.reserve(verts.size());
    for (const auto& v : verts) pts.push_back({v[a] - centroid[a], v[b] - centroid[b], v});

    auto half = [](const P2& p) {
        if (p.y.sign() > 0 || (p.y.is_zero() && p.x.sign() > 0)) return 0;
        return 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const P2& p, const P2& q) {
        int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        const Rational cross = p.x * q.y - p.y * q.x;
        return cross.sign() > 0;
    });

    std::vector<std::array<QVec, 3>> tris;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        tris.push_back({pts[0].orig, pts[i].orig, pts[i + 1].orig});
    return tris;
}

inline Rational det3(const QVec& a, const QVec& b, const QVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace detail

// Facets of the polyhedron with strictly positive inward normal.
// Supported for arity <= 3 (enumeration by vertex triples / pairs).
inline std::vector<BoundedFacet> bounded_facets(const NewtonPolyhedron& np) {
    const auto& E = np.extremal;
    std::vector<BoundedFacet> out;
    if (np.arity == 1) {
        BoundedFacet f;
        f.normal = {Rational(1)};
        f.value = E[0][0];
        f.vertices = {E[0]};
        out.push_back(std::move(f));
        return out;
    }
    if (np.arity == 2) {
        std::vector<QVec> pts = E;
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const QVec& p = pts[i];
            const QVec& q = pts[i + 1];
            QVec w = {p[1] - q[1], q[0] - p[0]};
            if (w[0].sign() <= 0 || w[1].sign() <= 0)
                throw std::logic_error("non-monotone extremal chain");
            BoundedFacet f;
            f.normal = detail::primitive_positive(w);
            f.value = dot(f.normal, p);
            f.vertices = {p, q};
            out.push_back(std::move(f));
        }
        return out;
    }
    if (np.arity != 3)
        throw std::domain_error("bounded_facets: arity > 3 unsupported");

    std::map<QVec, BoundedFacet> by_normal;
    const std::size_t k = E.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l) {
                const QVec u = E[j] - E[i];
                const QVec v = E[l] - E[i];
                QVec w = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                          u[0] * v[1] - u[1] * v[0]};
                int sg = 0;
                bool mixed = false, zero = false;
                for (const auto& x : w) {
                    if (x.is_zero()) zero = true;
                    else if (sg == 0) sg = x.sign();
                    else if (x.sign() != sg) mixed = true;
                }
                if (mixed || zero || sg == 0) continue;
                if (sg < 0)
                    for (auto& x : w) x = -x;
                const QVec prim = detail::primitive_positive(w);
                if (by_normal.count(prim)) continue;
                const Rational h = dot(prim, E[i]);
                bool supporting = true;
                for (std::size_t t = 0; t < k && supporting; ++t)
                    if (dot(prim, E[t]) < h) supporting = false;
                if (!supporting) continue;
                BoundedFacet f;
                f.normal = prim;
                f.value = h;
                for (std::size_t t = 0; t < k; ++t)
                    if (dot(prim, E[t]) == h) f.vertices.push_back(E[t]);
                by_normal.emplace(prim, std::move(f));
            }
    for (auto& [w, f] : by_normal) out.push_back(f);
    return out;
}

// Exact volume of (orthant \ polyhedron). Requires a primary region.
inline Rational covolume(const NewtonPolyhedron& np) {
    if (!np_is_primary(np))
        throw std::domain_error("covolume: region is not m0-primary (unbounded complement)");
    Rational vol(0);
    if (np.arity == 1) {
        return np.extremal[0][0];
    }
    const auto facets = bounded_facets(np);
    if (np.arity == 2) {
        for (const auto& f : facets) {
            const QVec& p = f.vertices[0];
            const QVec& q = f.vertices[1];
            vol += (p[0] * q[1] - q[0] * p[1]).abs() / Rational(2);
        }
        return vol;
    }
    for (const auto& f : facets) {
        for (const auto& tri : detail::triangulate_facet(f.vertices, f.normal))
            vol += detail::det3(tri[0], tri[1], tri[2]).abs() / Rational(6);
    }
    return vol;
}

}  // namespace monoval
