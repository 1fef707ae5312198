// Special subdivisions Delta^eps(v) of a dual complex at a face sigma and
// an interior rational point v, their strictly convex support function
// h = max(max_j lambda_j, -(1-eps)), star-preserving barycentric
// simplicialization, projectivity checks, and the induced fan plus the
// linearization identity on monomial models.
//
// Cell combinatorics: every face of Delta^eps is an original simplex, a
// scaled simplex e_j -> e_j^eps = eps e_j + (1-eps) v, or a frustum
// Conv(tau u tau^eps) over a simplex tau in the closed star of sigma that
// does not contain sigma. Frusta are combinatorial prisms, so the face
// lattice is explicit and no general convex-hull machinery is needed.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoval/complex.hpp"
#include "monoval/fan.hpp"
#include "monoval/piecewise.hpp"
#include "monoval/rational.hpp"
#include "monoval/support_set.hpp"
#include "monoval/valuation.hpp"
#include "monoval/vec.hpp"

namespace monoval {

enum class VertexOrigin { Original, Scaled, Barycenter };

struct PolyVertex {
    int id = -1;
    QVec pos;  // dense weight coordinates over the ambient axes
    VertexOrigin origin = VertexOrigin::Original;
    int scaled_from = -1;  // for Scaled vertices: the original vertex id
    Face barycenter_of;    // for Barycenter vertices: the subdivided face
};

struct FaceInfo {
    enum class Kind { Simplex, Prism };
    Kind kind = Kind::Simplex;
    Face prism_base;  // original-id base when kind == Prism

    friend bool operator==(const FaceInfo& a, const FaceInfo& b) {
        return a.kind == b.kind && a.prism_base == b.prism_base;
    }
};

class PolyComplex {
public:
    std::vector<int> axes;  // original vertex ids in coordinate order
    std::map<int, PolyVertex> vertices;
    std::map<Face, FaceInfo> faces;
    std::map<int, int> scaled_id;  // original id -> scaled id
    Face sigma;                    // subdivision parameters (provenance)
    Face sigma_scaled;
    Rational eps;
    QVec v_pos;

    std::size_t axis_index(int original_id) const {
        for (std::size_t i = 0; i < axes.size(); ++i)
            if (axes[i] == original_id) return i;
        throw std::invalid_argument("unknown axis id");
    }

    const QVec& position(int vertex_id) const { return vertices.at(vertex_id).pos; }

    bool face_is_simplex(const Face& f) const {
        auto pts = positions(f);
        return affine_dim(pts) == static_cast<int>(f.size()) - 1;
    }

    std::vector<QVec> positions(const Face& f) const {
        std::vector<QVec> out;
        for (int id : f) out.push_back(position(id));
        return out;
    }

    static int affine_dim(const std::vector<QVec>& pts) {
        if (pts.empty()) return -1;
        std::vector<QVec> rows;
        for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(pts[i] - pts[0]);
        const std::size_t m = pts[0].size();
        std::size_t rank = 0;
        for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
            std::size_t piv = rank;
            while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || rows[i][col].is_zero()) continue;
                const Rational f = rows[i][col] / rows[rank][col];
                for (std::size_t j = 0; j < m; ++j) rows[i][j] -= f * rows[rank][j];
            }
            ++rank;
        }
        return static_cast<int>(rank);
    }

    int face_dim(const Face& f) const { return affine_dim(positions(f)); }

    std::vector<Face> maximal_faces() const {
        std::vector<Face> out;
        for (const auto& [f, info] : faces) {
            bool maximal = true;
            for (const auto& [g, ginfo] : faces) {
                if (g.size() <= f.size() || g == f) continue;
                if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out.push_back(f);
        }
        return out;
    }

    // Weight-coordinate support of a face: the union of original axes its
    // vertex positions touch.
    Face weight_support(const Face& f) const {
        std::set<int> s;
        for (int id : f) {
            const QVec& p = position(id);
            for (std::size_t i = 0; i < axes.size(); ++i)
                if (!p[i].is_zero()) s.insert(axes[i]);
        }
        return Face(s.begin(), s.end());
    }
};

// h = max(max_{j in sigma} lambda_j, -(1-eps)) with
// lambda_j(w) = -b_j w_j / s_j; pieces are indexed 0..|sigma|-1 for the
// lambda's and -1 for the constant.
struct SupportFunction {
    Face sigma;
    std::vector<Rational> coeff;  // b_j / s_j per sigma vertex
    Rational eps;
    bool trivial = false;  // h == 0

    static SupportFunction zero() {
        SupportFunction h;
        h.trivial = true;
        return h;
    }

    std::vector<int> piece_ids() const {
        std::vector<int> out;
        if (trivial) {
            out.push_back(-1);
            return out;
        }
        for (std::size_t k = 0; k < sigma.size(); ++k) out.push_back(static_cast<int>(k));
        out.push_back(-1);
        return out;
    }

    Rational eval_piece(int piece, const PolyComplex& pc, const QVec& pos) const {
        if (trivial) return Rational(0);
        if (piece < 0) return -(Rational(1) - eps);
        const std::size_t ax = pc.axis_index(sigma[piece]);
        return -(coeff[piece] * pos[ax]);
    }

    Rational eval(const PolyComplex& pc, const QVec& pos) const {
        if (trivial) return Rational(0);
        Rational best = eval_piece(-1, pc, pos);
        for (std::size_t k = 0; k < sigma.size(); ++k)
            best = max(best, eval_piece(static_cast<int>(k), pc, pos));
        return best;
    }
};

namespace detail {

inline void add_simplex_closure(PolyComplex& pc, const Face& f) {
    const std::size_t n = f.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Face sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(f[i]);
        pc.faces.emplace(sub, FaceInfo{FaceInfo::Kind::Simplex, {}});
    }
}

}  // namespace detail

// The intermediate polyhedral subdivision Delta^eps together with its
// support function. v must be a rational point in the relative interior of
// sigma and eps in (0,1).
inline std::pair<PolyComplex, SupportFunction> special_subdivide(const DualComplex& dc,
                                                                 const Face& sigma_in,
                                                                 const WeightPoint& v,
                                                                 const Rational& eps) {
    const Face sigma = sorted_face(sigma_in);
    if (!dc.is_face(sigma)) throw std::invalid_argument("special_subdivide: sigma is not a face");
    if (eps <= Rational(0) || eps >= Rational(1))
        throw std::invalid_argument("special_subdivide: eps must lie in (0,1)");
    if (!weight_point_valid(dc, v))
        throw std::invalid_argument("special_subdivide: invalid weight point");
    if (v.support() != sigma)
        throw std::invalid_argument(
            "special_subdivide: v must lie in the relative interior of sigma");

    PolyComplex pc;
    pc.axes = dc.vertex_ids();
    pc.sigma = sigma;
    pc.eps = eps;

    // original vertices at (1/b_i) delta_i
    int max_id = 0;
    for (int id : pc.axes) {
        PolyVertex pv;
        pv.id = id;
        pv.origin = VertexOrigin::Original;
        pv.pos.assign(pc.axes.size(), Rational(0));
        pv.pos[pc.axis_index(id)] = Rational(1, static_cast<long>(dc.b(id)));
        pc.vertices.emplace(id, pv);
        max_id = std::max(max_id, id);
    }
    pc.v_pos.assign(pc.axes.size(), Rational(0));
    for (const auto& [id, w] : v.weights) pc.v_pos[pc.axis_index(id)] = w;

    const auto star = dc.star(sigma);
    const auto closed = dc.closed_star(sigma);

    // scaled vertices e_j^eps for j in L
    int next = max_id + 1;
    for (int j : star.link_vertices) {
        PolyVertex pv;
        pv.id = next;
        pv.origin = VertexOrigin::Scaled;
        pv.scaled_from = j;
        pv.pos = (eps * pc.position(j)) + ((Rational(1) - eps) * pc.v_pos);
        pc.vertices.emplace(next, pv);
        pc.scaled_id[j] = next;
        ++next;
    }
    auto scaled = [&](const Face& f) {
        Face out;
        for (int id : f) out.push_back(pc.scaled_id.at(id));
        return sorted_face(out);
    };
    pc.sigma_scaled = scaled(sigma);

    auto contains_sigma = [&](const Face& f) {
        return std::includes(f.begin(), f.end(), sigma.begin(), sigma.end());
    };

    // original faces not containing sigma survive
    for (const auto& f : dc.faces())
        if (!contains_sigma(f)) pc.faces.emplace(f, FaceInfo{FaceInfo::Kind::Simplex, {}});
    // faces containing sigma are replaced by their scaled copies
    for (const auto& f : dc.faces())
        if (contains_sigma(f)) detail::add_simplex_closure(pc, scaled(f));
    // collar: prisms over closed-star faces not containing sigma
    for (const auto& tau : closed) {
        if (contains_sigma(tau)) continue;
        const std::size_t n = tau.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Face base;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) base.push_back(tau[i]);
            Face top = scaled(base);
            pc.faces.emplace(top, FaceInfo{FaceInfo::Kind::Simplex, {}});
            Face prism = base;
            prism.insert(prism.end(), top.begin(), top.end());
            prism = sorted_face(prism);
            if (base.size() == 1) {
                pc.faces.emplace(prism, FaceInfo{FaceInfo::Kind::Simplex, {}});
            } else {
                pc.faces.emplace(prism, FaceInfo{FaceInfo::Kind::Prism, base});
            }
        }
    }

    SupportFunction h;
    h.sigma = sigma;
    h.eps = eps;
    for (int j : sigma) {
        const Rational s_j = Rational(static_cast<long long>(dc.b(j))) * v.at(j);
        h.coeff.push_back(Rational(static_cast<long long>(dc.b(j))) / s_j);
    }
    return {std::move(pc), std::move(h)};
}

// Codimension-1 geometric faces of a face of Delta^eps.
inline std::vector<Face> boundary_faces(const PolyComplex& pc, const Face& f) {
    const FaceInfo& info = pc.faces.at(f);
    std::vector<Face> out;
    if (info.kind == FaceInfo::Kind::Simplex) {
        if (f.size() < 2) return out;
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Face g;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop) g.push_back(f[i]);
            out.push_back(g);
        }
        return out;
    }
    const Face& base = info.prism_base;
    Face top;
    for (int id : base) top.push_back(pc.scaled_id.at(id));
    out.push_back(base);
    out.push_back(sorted_face(top));
    for (std::size_t drop = 0; drop < base.size(); ++drop) {
        Face side;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (i == drop) continue;
            side.push_back(base[i]);
            side.push_back(pc.scaled_id.at(base[i]));
        }
        out.push_back(sorted_face(side));
    }
    return out;
}

// Star-preserving simplicialization: every frustum is coned from its
// barycenter over its (recursively triangulated) boundary; faces in the
// star of sigma^eps are kept bit-identical.
inline PolyComplex barycentric_outside_star(const PolyComplex& pc) {
    PolyComplex out;
    out.axes = pc.axes;
    out.vertices = pc.vertices;
    out.scaled_id = pc.scaled_id;
    out.sigma = pc.sigma;
    out.sigma_scaled = pc.sigma_scaled;
    out.eps = pc.eps;
    out.v_pos = pc.v_pos;

    int next = 0;
    for (const auto& [id, pv] : pc.vertices) next = std::max(next, id + 1);

    // triangulations per face, built by increasing dimension
    std::map<Face, std::vector<Face>> tri;
    std::vector<Face> order;
    for (const auto& [f, info] : pc.faces) order.push_back(f);
    std::sort(order.begin(), order.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& f : order) {
        const FaceInfo& info = pc.faces.at(f);
        if (info.kind == FaceInfo::Kind::Simplex) {
            tri[f] = {f};
            continue;
        }
        PolyVertex bary;
        bary.id = next++;
        bary.origin = VertexOrigin::Barycenter;
        bary.barycenter_of = f;
        bary.pos.assign(pc.axes.size(), Rational(0));
        for (int id : f) bary.pos = bary.pos + pc.position(id);
        bary.pos = Rational(1, static_cast<long>(f.size())) * bary.pos;
        out.vertices.emplace(bary.id, bary);
        std::vector<Face> simplices;
        for (const auto& g : boundary_faces(pc, f)) {
            for (const auto& s : tri.at(g)) {
                Face coned = s;
                coned.push_back(bary.id);
                simplices.push_back(sorted_face(coned));
            }
        }
        tri[f] = std::move(simplices);
    }
    for (const auto& f : pc.maximal_faces())
        for (const auto& s : tri.at(f)) detail::add_simplex_closure(out, s);
    // keep lower-dimensional faces that are not covered by a maximal face's
    // closure (cannot happen in our complexes, but harmless)
    for (const auto& f : order)
        for (const auto& s : tri.at(f)) detail::add_simplex_closure(out, s);
    return out;
}

inline bool is_simplicial(const PolyComplex& pc) {
    for (const auto& [f, info] : pc.faces)
        if (!pc.face_is_simplex(f)) return false;
    return true;
}

// Pieces of h that agree with h at all vertices of the face; h is affine
// on the face iff this set is nonempty (h is convex).
inline std::set<int> agreeing_pieces(const PolyComplex& pc, const SupportFunction& h,
                                     const Face& f) {
    std::set<int> out;
    for (int piece : h.piece_ids()) {
        bool ok = true;
        for (int id : f) {
            const QVec& pos = pc.position(id);
            if (h.eval_piece(piece, pc, pos) != h.eval(pc, pos)) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(piece);
    }
    return out;
}

// h affine on every face, and across every wall between adjacent maximal
// faces lying in a common face of the original complex the affine pieces
// change (coarseness / strict convexity).
inline bool is_projective(const PolyComplex& pc, const SupportFunction& h,
                          const DualComplex& dc) {
    std::map<Face, std::set<int>> agree;
    for (const auto& [f, info] : pc.faces) {
        agree[f] = agreeing_pieces(pc, h, f);
        if (agree[f].empty()) return false;  // h not affine on this face
    }
    const auto maximal = pc.maximal_faces();
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            const Face& f1 = maximal[i];
            const Face& f2 = maximal[j];
            Face inter;
            std::set_intersection(f1.begin(), f1.end(), f2.begin(), f2.end(),
                                  std::back_inserter(inter));
            if (inter.empty() || !pc.faces.count(inter)) continue;
            const int d1 = pc.face_dim(f1);
            const int d2 = pc.face_dim(f2);
            if (d1 != d2 || pc.face_dim(inter) != d1 - 1) continue;
            Face support = pc.weight_support(f1);
            const Face s2 = pc.weight_support(f2);
            support.insert(support.end(), s2.begin(), s2.end());
            support = sorted_face(support);
            if (!dc.is_face(support)) continue;  // wall between different faces of Delta
            std::set<int> common;
            std::set_intersection(agree[f1].begin(), agree[f1].end(), agree[f2].begin(),
                                  agree[f2].end(), std::inserter(common, common.begin()));
            if (!common.empty()) return false;  // same piece across the wall: not coarsest
        }
    }
    return true;
}

// Identity embedding of a dual complex as a PolyComplex (the trivial
// subdivision).
inline PolyComplex embed_complex(const DualComplex& dc) {
    PolyComplex pc;
    pc.axes = dc.vertex_ids();
    pc.eps = Rational(0);
    for (int id : pc.axes) {
        PolyVertex pv;
        pv.id = id;
        pv.origin = VertexOrigin::Original;
        pv.pos.assign(pc.axes.size(), Rational(0));
        pv.pos[pc.axis_index(id)] = Rational(1, static_cast<long>(dc.b(id)));
        pc.vertices.emplace(id, pv);
    }
    for (const auto& f : dc.faces()) pc.faces.emplace(f, FaceInfo{FaceInfo::Kind::Simplex, {}});
    return pc;
}

// Normalized volume of a simplicial cell inside the original face J of the
// complex, in barycentric coordinates c_j = b_j w_j (the full simplex has
// volume 1/k!).
inline Rational barycentric_volume(const DualComplex& dc, const PolyComplex& pc,
                                   const Face& cell, const Face& j_face) {
    std::vector<QVec> coords;
    for (int id : cell) {
        const QVec& p = pc.position(id);
        QVec c;
        for (int j : j_face)
            c.push_back(p[pc.axis_index(j)] * Rational(static_cast<long long>(dc.b(j))));
        coords.push_back(std::move(c));
    }
    const std::size_t k = j_face.size();
    if (cell.size() != k) throw std::invalid_argument("cell is not a top-dimensional simplex");
    // determinant of (c_1 - c_0, ..., c_{k-1} - c_0) in the hyperplane of
    // barycentric coordinates: drop the first coordinate
    std::vector<QVec> rows;
    for (std::size_t i = 1; i < k; ++i) {
        QVec r;
        for (std::size_t l = 1; l < k; ++l) r.push_back(coords[i][l] - coords[0][l]);
        rows.push_back(std::move(r));
    }
    Rational det(1);
    const std::size_t n = rows.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && rows[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(rows[piv], rows[col]);
            det = -det;
        }
        det *= rows[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (rows[i][col].is_zero()) continue;
            const Rational f = rows[i][col] / rows[col][col];
            for (std::size_t j2 = col; j2 < n; ++j2) rows[i][j2] -= f * rows[col][j2];
        }
    }
    Rational fact(1);  // (k-1)!
    for (std::size_t i = 2; i + 1 <= k; ++i) fact *= Rational(static_cast<long long>(i));
    return det.abs() / fact;
}

// The maximal cells of a simplicial refinement tile each maximal face of
// the original complex with total normalized volume 1/k!.
inline bool covers_exactly(const DualComplex& dc, const PolyComplex& simplicial) {
    std::vector<Face> dc_maximal;
    for (const auto& f : dc.faces()) {
        bool maximal = true;
        for (const auto& g : dc.faces())
            if (g != f && std::includes(g.begin(), g.end(), f.begin(), f.end())) maximal = false;
        if (maximal) dc_maximal.push_back(f);
    }
    auto cells = simplicial.maximal_faces();
    for (const auto& j_face : dc_maximal) {
        Rational total(0);
        const int dim = static_cast<int>(j_face.size()) - 1;
        for (const auto& cell : cells) {
            const Face supp = simplicial.weight_support(cell);
            if (!std::includes(j_face.begin(), j_face.end(), supp.begin(), supp.end())) continue;
            if (simplicial.face_dim(cell) != dim) continue;
            total += barycentric_volume(dc, simplicial, cell, j_face);
        }
        if (j_face.size() == 1) continue;  // vertices carry no volume
        Rational fact(1);  // (k-1)!
        for (std::size_t i = 2; i + 1 <= j_face.size(); ++i)
            fact *= Rational(static_cast<long long>(i));
        if (total * fact != Rational(1)) return false;
    }
    return true;
}

// ---- Lemma L101 on monomial models ----------------------------------------

struct L101Report {
    bool preconditions_ok = true;
    std::vector<std::string> precondition_failures;
    struct Row {
        int vertex_id;          // scaled vertex e'_j
        Rational lhs, rhs;
        bool equal;
    };
    std::vector<Row> rows;
    bool identity_holds = true;
    bool residual_nonneg = true;       // L102: w(G') >= 0 on sampled points
    bool residual_zero_on_sigma = true;
    Fan fan;
    std::map<int, int> ray_of_vertex;  // PolyComplex vertex id -> ray index
};

// Fan over the orthant induced by a simplicial subdivision of the monomial
// model simplex.
inline std::pair<Fan, std::map<int, int>> fan_from_subdivision(const PolyComplex& pc) {
    Fan fan;
    std::map<int, int> ray_of_vertex;
    for (const auto& [id, pv] : pc.vertices) {
        ray_of_vertex[id] = static_cast<int>(fan.rays.size());
        fan.rays.push_back(primitive_ray(pv.pos));
    }
    for (const auto& f : pc.maximal_faces()) {
        std::vector<int> cone;
        for (int id : f) cone.push_back(ray_of_vertex.at(id));
        fan.cones.push_back(std::move(cone));
    }
    return {std::move(fan), std::move(ray_of_vertex)};
}

inline L101Report verify_L101(const std::vector<std::int64_t>& b, const Face& sigma,
                              const WeightPoint& v, const Rational& eps, const SupportSet& f) {
    const int m = static_cast<int>(b.size());
    if (f.arity() != m) throw std::invalid_argument("verify_L101: arity mismatch");
    if (f.is_zero()) throw std::invalid_argument("verify_L101: zero polynomial");
    const DualComplex dc = DualComplex::simplex(b);

    auto [pc_eps, h] = special_subdivide(dc, sigma, v, eps);
    PolyComplex pc = barycentric_outside_star(pc_eps);

    L101Report rep;
    auto [fan, ray_of_vertex] = fan_from_subdivision(pc);
    rep.fan = fan;
    rep.ray_of_vertex = ray_of_vertex;

    QVec bq;
    for (auto x : b) bq.emplace_back(static_cast<long long>(x));
    const auto chi = chi_on_face(f, bq);

    const auto star = dc.star(sigma);
    auto active = [&](const QVec& t) {
        std::set<std::size_t> s;
        for (auto i : chi.active_indices(t)) s.insert(i);
        return s;
    };
    const auto act_v = active(pc.v_pos);

    // preconditions: chi affine on sigma' and on each segment [v, e'_j]
    std::set<std::size_t> common_sigma;
    bool first = true;
    for (int j : sigma) {
        const auto a = active(pc.position(pc.scaled_id.at(j)));
        if (first) {
            common_sigma = a;
            first = false;
        } else {
            std::set<std::size_t> inter;
            std::set_intersection(common_sigma.begin(), common_sigma.end(), a.begin(), a.end(),
                                  std::inserter(inter, inter.begin()));
            common_sigma = inter;
        }
    }
    if (common_sigma.empty()) {
        rep.preconditions_ok = false;
        rep.precondition_failures.push_back("chi is not affine on the scaled face sigma'");
    }
    for (int j : star.link_vertices) {
        const auto a = active(pc.position(pc.scaled_id.at(j)));
        std::set<std::size_t> inter;
        std::set_intersection(act_v.begin(), act_v.end(), a.begin(), a.end(),
                              std::inserter(inter, inter.begin()));
        if (inter.empty()) {
            rep.preconditions_ok = false;
            rep.precondition_failures.push_back("chi breaks on the segment [v, e'_" +
                                                std::to_string(j) + "]");
        }
    }
    if (!rep.preconditions_ok) return rep;

    // derivative data
    const Rational chi_v = chi.eval(pc.v_pos);
    std::map<int, Rational> deriv;
    for (int j : star.link_vertices)
        deriv[j] = chi.directional_derivative(pc.v_pos, pc.position(j));

    // unnormalized chi at the primitive generator of a subdivision vertex
    auto chi_hat_ray = [&](int vertex_id) {
        const Ray& u = fan.rays.at(ray_of_vertex.at(vertex_id));
        QVec uq;
        for (auto x : u) uq.emplace_back(static_cast<long long>(x));
        return *eval_valuation(uq, f);
    };

    auto lhs_at = [&](const QVec& w) {
        Rational acc = chi_v * dot(bq, w);
        for (int j : star.link_vertices)
            acc += deriv.at(j) * Rational(static_cast<long long>(dc.b(j))) *
                   w[pc.axis_index(j)];
        return acc;
    };
    auto rhs_at = [&](const QVec& w) {
        Rational acc(0);
        for (int j : star.link_vertices) {
            const int ray = ray_of_vertex.at(pc.scaled_id.at(j));
            acc += chi_hat_ray(pc.scaled_id.at(j)) * divisor_valuation_fn(fan, ray, w);
        }
        return acc;
    };

    // the vertices of sta_{Delta'}(sigma') are exactly the scaled vertices
    for (int j : star.link_vertices) {
        const int id = pc.scaled_id.at(j);
        L101Report::Row row;
        row.vertex_id = id;
        row.lhs = lhs_at(pc.position(id));
        row.rhs = rhs_at(pc.position(id));
        row.equal = row.lhs == row.rhs;
        rep.identity_holds = rep.identity_holds && row.equal;
        rep.rows.push_back(row);
    }
    // interior points of the star faces (deterministic rational combos)
    for (const auto& [face, info] : pc.faces) {
        if (!std::includes(face.begin(), face.end(), pc.sigma_scaled.begin(),
                           pc.sigma_scaled.end()))
            continue;
        QVec mid(pc.axes.size(), Rational(0));
        QVec acc(pc.axes.size(), Rational(0));
        int k = 0;
        for (int id : face) {
            acc = acc + (Rational(static_cast<long long>(++k)) * pc.position(id));
        }
        Rational total(0);
        for (int i = 1; i <= k; ++i) total += Rational(i);
        mid = (Rational(1) / total) * acc;
        L101Report::Row row;
        row.vertex_id = -1;
        row.lhs = lhs_at(mid);
        row.rhs = rhs_at(mid);
        row.equal = row.lhs == row.rhs;
        rep.identity_holds = rep.identity_holds && row.equal;
        rep.rows.push_back(row);
    }

    // L102 residual: w(G) - sum_i chi(e'_i) b'_i w(E'_i) is nonnegative,
    // and vanishes at the vertices of sigma'
    auto residual_at = [&](const QVec& w) {
        Rational acc = *eval_valuation(w, f);
        for (const auto& [id, pv] : pc.vertices) {
            const int ray = ray_of_vertex.at(id);
            const Rational coeff = divisor_valuation_fn(fan, ray, w);
            if (!coeff.is_zero()) acc -= chi_hat_ray(id) * coeff;
        }
        return acc;
    };
    for (int j : sigma) {
        if (!residual_at(pc.position(pc.scaled_id.at(j))).is_zero())
            rep.residual_zero_on_sigma = false;
    }
    for (const auto& cell : pc.maximal_faces()) {
        QVec mid(pc.axes.size(), Rational(0));
        int k = 0;
        for (int id : cell) {
            mid = mid + (Rational(static_cast<long long>(++k)) * pc.position(id));
        }
        Rational total(0);
        for (int i = 1; i <= k; ++i) total += Rational(i);
        mid = (Rational(1) / total) * mid;
        if (residual_at(mid).sign() < 0) rep.residual_nonneg = false;
    }
    return rep;
}

}  // namespace monoval
