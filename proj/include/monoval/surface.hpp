// Blowup trees over a smooth surface germ: exact chart bookkeeping for
// infinitely near points, dual graphs with intersection data, monomial
// valuations at the strata, the vertex-bound constants of the intersection
// induction, Izumi experiments, and the toric dual complex at infinity.
//
// One mechanism drives everything: each exceptional curve carries a primary
// chart whose first coordinate cuts the curve, and each pair of crossing
// curves carries an edge chart with the two curves as axes. Pullbacks of
// polynomials through chart substitutions stay polynomial with rational
// coefficients, so all orders of vanishing are exact.

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
#include "monoval/rational.hpp"
#include "monoval/support_set.hpp"
#include "monoval/valuation.hpp"
#include "monoval/vec.hpp"

namespace monoval {

// Pullback substitution (x, y) -> (X(u,v), Y(u,v)).
struct ChartMap {
    SupportSet x_pullback{2};
    SupportSet y_pullback{2};

    static ChartMap blowup_chart_a(const Rational& c) {
        // (x, y) = (u, u v + c): blow up the point (0, c), the new curve is
        // {u = 0} with v along it
        ChartMap m;
        m.x_pullback.add_term({1, 0}, Rational(1));
        m.y_pullback.add_term({1, 1}, Rational(1));
        m.y_pullback.add_term({0, 0}, c);
        return m;
    }

    static ChartMap blowup_chart_b(const Rational& c) {
        // (x, y) = (u v, v + c)
        ChartMap m;
        m.x_pullback.add_term({1, 1}, Rational(1));
        m.y_pullback.add_term({0, 1}, Rational(1));
        m.y_pullback.add_term({0, 0}, c);
        return m;
    }

    // Composition with a further substitution: coordinates of *this become
    // polynomials in the new chart.
    ChartMap then(const ChartMap& sub) const {
        ChartMap out;
        out.x_pullback = compose(x_pullback, sub);
        out.y_pullback = compose(y_pullback, sub);
        return out;
    }

    SupportSet pull(const SupportSet& f) const { return compose(f, *this); }

    // Pullback keeping only terms with <w, (deg_u, deg_v)> <= cutoff.
    SupportSet pull_truncated(const SupportSet& f, const QVec& w, const Rational& cutoff) const {
        SupportSet out(2);
        auto xs = powers_truncated(x_pullback, max_power(f, 0), w, cutoff);
        auto ys = powers_truncated(y_pullback, max_power(f, 1), w, cutoff);
        for (const auto& [e, c] : f.terms()) {
            SupportSet term = mul_truncated(xs[e[0]], ys[e[1]], w, cutoff);
            for (const auto& [te, tc] : term.terms()) out.add_term(te, c * tc);
        }
        return out;
    }

private:
    static SupportSet compose(const SupportSet& f, const ChartMap& sub) {
        if (f.arity() != 2) throw std::invalid_argument("chart pullback needs arity 2");
        SupportSet out(2);
        const auto xs = powers(sub.x_pullback, max_power(f, 0));
        const auto ys = powers(sub.y_pullback, max_power(f, 1));
        for (const auto& [e, c] : f.terms()) {
            const SupportSet term = xs[e[0]] * ys[e[1]];
            for (const auto& [te, tc] : term.terms()) out.add_term(te, c * tc);
        }
        return out;
    }

    static std::int64_t max_power(const SupportSet& f, int coord) {
        std::int64_t m = 0;
        for (const auto& [e, c] : f.terms()) m = std::max(m, e[coord]);
        return m;
    }

    static std::vector<SupportSet> powers(const SupportSet& g, std::int64_t up_to) {
        std::vector<SupportSet> out;
        SupportSet one(2);
        one.add_term({0, 0}, Rational(1));
        out.push_back(one);
        for (std::int64_t k = 1; k <= up_to; ++k) out.push_back(out.back() * g);
        return out;
    }

    static SupportSet mul_truncated(const SupportSet& a, const SupportSet& b, const QVec& w,
                                    const Rational& cutoff) {
        SupportSet out(2);
        for (const auto& [ea, ca] : a.terms())
            for (const auto& [eb, cb] : b.terms()) {
                const ExponentVec e = ea + eb;
                if (dot(w, e) > cutoff) continue;
                out.add_term(e, ca * cb);
            }
        return out;
    }

    static std::vector<SupportSet> powers_truncated(const SupportSet& g, std::int64_t up_to,
                                                    const QVec& w, const Rational& cutoff) {
        std::vector<SupportSet> out;
        SupportSet one(2);
        one.add_term({0, 0}, Rational(1));
        out.push_back(one);
        for (std::int64_t k = 1; k <= up_to; ++k)
            out.push_back(mul_truncated(out.back(), g, w, cutoff));
        return out;
    }
};

// Smallest value of <w, (deg_u, deg_v)> over the support of the pullback,
// computed with truncation and a retry loop to stay fast on deep charts.
inline Rational weighted_chart_order(const ChartMap& chart, const SupportSet& f, const QVec& w) {
    if (f.is_zero()) throw std::invalid_argument("order of zero polynomial");
    // lower estimate ignoring cancellation
    const Rational ox = *eval_valuation(w, chart.x_pullback);
    const Rational oy = *eval_valuation(w, chart.y_pullback);
    Rational bound;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        const Rational v = Rational(static_cast<long long>(e[0])) * ox +
                           Rational(static_cast<long long>(e[1])) * oy;
        if (first || v < bound) bound = v;
        first = false;
    }
    Rational cutoff = bound + Rational(4);
    for (int attempt = 0; attempt < 20; ++attempt) {
        const SupportSet g = chart.pull_truncated(f, w, cutoff);
        const auto v = eval_valuation(w, g);
        if (v && *v <= cutoff) return *v;
        cutoff = cutoff * Rational(2) + Rational(8);
    }
    throw std::logic_error("weighted chart order did not stabilize");
}

struct TreeNode {
    enum class Attach { Root, Free, Satellite };
    Attach attach = Attach::Root;
    int parent = -1;
    Rational coord;  // Free: coordinate on the parent curve's primary chart
    int with = -1;   // Satellite: the other curve through the point
};

struct BlowupTree {
    std::vector<TreeNode> nodes;  // node i creates the exceptional curve E_i

    static BlowupTree chain(int k, const std::vector<Rational>& coords = {}) {
        BlowupTree t;
        t.nodes.push_back({TreeNode::Attach::Root, -1, Rational(0), -1});
        for (int i = 1; i < k; ++i) {
            const Rational c = i - 1 < static_cast<int>(coords.size()) ? coords[i - 1] : Rational(0);
            t.nodes.push_back({TreeNode::Attach::Free, i - 1, c, -1});
        }
        return t;
    }
};

struct IntersectionData {
    std::vector<std::vector<std::int64_t>> matrix;  // E_i . E_j
    std::vector<std::int64_t> b;                    // ord_{E_i}(m_0)
};

// Internal chart state of a fully built tree.
struct SurfaceModel {
    struct Edge {
        int u_curve, v_curve;  // curves cut by u = 0 and v = 0 in the chart
        ChartMap chart;
        std::optional<Rational> coord_on_u;  // crossing coordinate in the primary
        std::optional<Rational> coord_on_v;  // charts of the two curves
    };
    std::vector<ChartMap> primary;              // per curve; E_i = {u = 0}
    std::vector<Edge> edges;
    IntersectionData data;

    int curve_count() const { return static_cast<int>(primary.size()); }

    const Edge& edge_between(int i, int j) const {
        for (const auto& e : edges)
            if ((e.u_curve == i && e.v_curve == j) || (e.u_curve == j && e.v_curve == i))
                return e;
        throw std::invalid_argument("curves do not cross");
    }

    std::int64_t ord_on_curve(int i, const SupportSet& f) const {
        const Rational o = weighted_chart_order(primary[i], f, {Rational(1), Rational(0)});
        return static_cast<std::int64_t>(o.numerator().get_si());
    }
};

inline SurfaceModel build_model(const BlowupTree& tree) {
    SurfaceModel m;
    if (tree.nodes.empty() || tree.nodes[0].attach != TreeNode::Attach::Root)
        throw std::invalid_argument("tree must start with a root blowup");
    for (std::size_t idx = 0; idx < tree.nodes.size(); ++idx) {
        const TreeNode& node = tree.nodes[idx];
        const int k = static_cast<int>(idx);
        if (k == 0) {
            if (node.attach != TreeNode::Attach::Root)
                throw std::invalid_argument("only the first node may be the root");
            m.primary.push_back(ChartMap::blowup_chart_a(Rational(0)));
            m.data.matrix.assign(1, {-1});
            continue;
        }
        if (node.parent < 0 || node.parent >= k)
            throw std::invalid_argument("node parent must precede it");
        // grow matrix
        for (auto& row : m.data.matrix) row.push_back(0);
        m.data.matrix.push_back(std::vector<std::int64_t>(k + 1, 0));
        m.data.matrix[k][k] = -1;

        if (node.attach == TreeNode::Attach::Free) {
            const int p = node.parent;
            // the free coordinate must avoid existing crossings on E_p
            for (const auto& e : m.edges) {
                const std::optional<Rational>* taken = nullptr;
                if (e.u_curve == p) taken = &e.coord_on_u;
                else if (e.v_curve == p) taken = &e.coord_on_v;
                if (taken && *taken && **taken == node.coord)
                    throw std::invalid_argument("free point collides with an existing crossing");
            }
            m.primary.push_back(m.primary[p].then(ChartMap::blowup_chart_a(node.coord)));
            SurfaceModel::Edge e;
            e.u_curve = p;
            e.v_curve = k;
            // (u, v) = (s t, t + c) keeps E_p = {s = 0} and E_k = {t = 0}
            {
                ChartMap sub;
                sub.x_pullback.add_term({1, 1}, Rational(1));  // u = s t
                sub.y_pullback.add_term({0, 1}, Rational(1));  // v = t + c
                sub.y_pullback.add_term({0, 0}, node.coord);
                e.chart = m.primary[p].then(sub);
            }
            e.coord_on_u = node.coord;
            e.coord_on_v = std::nullopt;  // E_p is invisible in E_k's primary chart
            m.edges.push_back(std::move(e));
            m.data.matrix[p][p] -= 1;
            m.data.matrix[p][k] = m.data.matrix[k][p] = 1;
        } else if (node.attach == TreeNode::Attach::Satellite) {
            const int p = node.parent;
            const int q = node.with;
            if (q < 0 || q >= k) throw std::invalid_argument("satellite partner out of range");
            // locate and consume the edge chart between p and q
            std::size_t eidx = m.edges.size();
            for (std::size_t i = 0; i < m.edges.size(); ++i) {
                const auto& e = m.edges[i];
                if ((e.u_curve == p && e.v_curve == q) || (e.u_curve == q && e.v_curve == p))
                    eidx = i;
            }
            if (eidx == m.edges.size())
                throw std::invalid_argument("satellite point requires crossing curves");
            const SurfaceModel::Edge old = m.edges[eidx];
            m.edges.erase(m.edges.begin() + static_cast<long>(eidx));

            const int a = old.u_curve;  // {u = 0}
            const int bcurve = old.v_curve;
            // chart K1: (u, v) = (u', u' v'): E_k = {u' = 0}, E_b = {v' = 0}
            ChartMap sub1;
            sub1.x_pullback.add_term({1, 0}, Rational(1));
            sub1.y_pullback.add_term({1, 1}, Rational(1));
            const ChartMap k1 = old.chart.then(sub1);
            // chart K2: (u, v) = (s t, t): E_a = {s = 0}, E_k = {t = 0}
            ChartMap sub2;
            sub2.x_pullback.add_term({1, 1}, Rational(1));
            sub2.y_pullback.add_term({0, 1}, Rational(1));
            const ChartMap k2 = old.chart.then(sub2);

            // primary chart of E_k from K1 (v' parametrizes E_k, the old
            // v-curve crosses at v' = 0)
            m.primary.push_back(k1);

            SurfaceModel::Edge e1;  // E_k with the old v-curve
            e1.u_curve = k;
            e1.v_curve = bcurve;
            e1.chart = k1;
            e1.coord_on_u = Rational(0);
            e1.coord_on_v = old.coord_on_v;
            m.edges.push_back(std::move(e1));

            SurfaceModel::Edge e2;  // the old u-curve with E_k
            e2.u_curve = a;
            e2.v_curve = k;
            e2.chart = k2;
            e2.coord_on_u = old.coord_on_u;
            e2.coord_on_v = std::nullopt;  // E_a invisible in E_k's primary chart
            m.edges.push_back(std::move(e2));

            m.data.matrix[a][a] -= 1;
            m.data.matrix[bcurve][bcurve] -= 1;
            m.data.matrix[a][bcurve] = m.data.matrix[bcurve][a] = 0;
            m.data.matrix[a][k] = m.data.matrix[k][a] = 1;
            m.data.matrix[bcurve][k] = m.data.matrix[k][bcurve] = 1;
        } else {
            throw std::invalid_argument("unexpected root attachment");
        }
    }
    // multiplicities from the chart pullbacks of the coordinate functions
    SupportSet x(2), y(2);
    x.add_term({1, 0}, Rational(1));
    y.add_term({0, 1}, Rational(1));
    for (int i = 0; i < m.curve_count(); ++i)
        m.data.b.push_back(std::min(m.ord_on_curve(i, x), m.ord_on_curve(i, y)));
    return m;
}

// Dual graph with vertex ids 1..k (vertex i+1 for node i).
inline std::pair<DualComplex, IntersectionData> dual_graph(const BlowupTree& tree) {
    const SurfaceModel m = build_model(tree);
    DualComplex c;
    for (int i = 0; i < m.curve_count(); ++i) c.add_vertex(i + 1, m.data.b[i]);
    for (const auto& e : m.edges) c.add_face({e.u_curve + 1, e.v_curve + 1});
    return {std::move(c), m.data};
}

// Monomial valuation of f at a weight point on a vertex or an edge of the
// dual graph.
inline Rational eval_on_model(const SurfaceModel& m, const SupportSet& f, const WeightPoint& p) {
    if (f.is_zero()) throw std::invalid_argument("eval_on_model: zero polynomial");
    const Face supp = p.support();
    if (supp.size() == 1) {
        const int i = supp[0] - 1;
        return p.at(supp[0]) * Rational(static_cast<long long>(m.ord_on_curve(i, f)));
    }
    if (supp.size() == 2) {
        const int i = supp[0] - 1, j = supp[1] - 1;
        const auto& e = m.edge_between(i, j);
        const Rational wu = p.at(e.u_curve + 1);
        const Rational wv = p.at(e.v_curve + 1);
        return weighted_chart_order(e.chart, f, {wu, wv});
    }
    throw std::invalid_argument("weight point must sit on a vertex or an edge");
}

// theta_G = max_i |G . E_i| for G = sum a_i E_i + strict part.
inline Rational theta_G(const IntersectionData& data, const QVec& a,
                        const QVec& strict_dot) {
    const std::size_t k = data.matrix.size();
    if (a.size() != k || strict_dot.size() != k)
        throw std::invalid_argument("theta_G: size mismatch");
    Rational best(0);
    for (std::size_t i = 0; i < k; ++i) {
        Rational acc = strict_dot[i];
        for (std::size_t j = 0; j < k; ++j)
            acc += a[j] * Rational(static_cast<long long>(data.matrix[i][j]));
        best = max(best, acc.abs());
    }
    return best;
}

// G~ . E_i for the strict transform of div(f): the total transform of a
// principal divisor meets every compact curve trivially, so
// G~ . E_i = - sum_j ord_{E_j}(f) (E_j . E_i).
inline QVec strict_intersections(const SurfaceModel& m, const SupportSet& f) {
    const int k = m.curve_count();
    std::vector<std::int64_t> ords;
    for (int i = 0; i < k; ++i) ords.push_back(m.ord_on_curve(i, f));
    QVec out(k, Rational(0));
    for (int i = 0; i < k; ++i) {
        Rational acc(0);
        for (int j = 0; j < k; ++j)
            acc -= Rational(static_cast<long long>(ords[j])) *
                   Rational(static_cast<long long>(m.data.matrix[j][i]));
        out[i] = acc;
    }
    return out;
}

struct VertexBoundConstants {
    Rational a0, b0;  // per-edge constants
    int diameter = 0; // graph diameter l
    Rational a, b;    // A = A_0^l, B = B_0 (1 + A_0 + ... + A_0^{l-1})
};

inline VertexBoundConstants vertex_bound_constants(const DualComplex& graph,
                                                   const IntersectionData& data) {
    if (!graph.connected()) throw std::invalid_argument("disconnected dual graph");
    VertexBoundConstants out;
    out.a0 = Rational(1);
    out.b0 = Rational(0);
    for (const auto& f : graph.faces()) {
        if (f.size() != 2) continue;
        const int i = f[0] - 1, j = f[1] - 1;
        auto c = [&](int r, int s) {
            return Rational(static_cast<long long>(data.b[s])) *
                   Rational(static_cast<long long>(data.matrix[r][s]));
        };
        // both orientations of the edge
        out.a0 = max(out.a0, c(i, i).abs() / c(i, j));
        out.a0 = max(out.a0, c(j, j).abs() / c(j, i));
        out.b0 = max(out.b0, Rational(1) / c(i, j));
        out.b0 = max(out.b0, Rational(1) / c(j, i));
    }
    out.diameter = graph.graph_diameter();
    out.a = Rational(1);
    for (int t = 0; t < out.diameter; ++t) out.a *= out.a0;
    out.b = Rational(0);
    Rational pow(1);
    for (int t = 0; t < out.diameter; ++t) {
        out.b += pow;
        pow *= out.a0;
    }
    out.b *= out.b0;
    return out;
}

struct IzumiRow {
    std::string poly;
    std::int64_t ord0 = 0;
    Rational min_vertex, max_vertex;
    bool vertex_bound_ok = false;   // max <= (1 + A diam) min
    bool min_is_ord0 = false;       // smooth-point strong valuation identity
};

struct IzumiReport {
    std::vector<IzumiRow> rows;
    QVec vertex_constants;  // empirical optimal Izumi constant per vertex
    Rational a;
    Rational diam;
    bool all_ok = true;
};

inline IzumiReport izumi_check(const BlowupTree& tree, const std::vector<SupportSet>& corpus) {
    const SurfaceModel m = build_model(tree);
    auto [graph, data] = dual_graph(tree);
    const auto constants = vertex_bound_constants(graph, data);
    IzumiReport rep;
    rep.a = constants.a;
    rep.diam = graph.linf_diameter();
    const int k = m.curve_count();
    rep.vertex_constants.assign(k, Rational(0));
    for (const auto& f : corpus) {
        if (f.is_zero()) throw std::invalid_argument("izumi corpus: zero polynomial");
        const auto ord0 = f.min_total_degree();
        if (*ord0 == 0) throw std::invalid_argument("izumi corpus: unit polynomial");
        IzumiRow row;
        row.poly = f.serialize();
        row.ord0 = *ord0;
        bool first = true;
        for (int i = 0; i < k; ++i) {
            const Rational chi =
                eval_on_model(m, f, vertex_point(graph, i + 1));
            if (first || chi < row.min_vertex) row.min_vertex = chi;
            if (first || chi > row.max_vertex) row.max_vertex = chi;
            first = false;
            rep.vertex_constants[i] =
                max(rep.vertex_constants[i], chi / Rational(static_cast<long long>(*ord0)));
        }
        row.vertex_bound_ok =
            row.max_vertex <= (Rational(1) + rep.a * rep.diam) * row.min_vertex;
        row.min_is_ord0 = row.min_vertex == Rational(static_cast<long long>(*ord0));
        rep.all_ok = rep.all_ok && row.vertex_bound_ok && row.min_is_ord0;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---- Corollary C: the dual complex at infinity -----------------------------

struct AtInfinityReport {
    Rational min_chi;
    bool min_is_minus_d = false;
    Rational lipschitz;   // over the complex at infinity, LInf weight metric
    Rational ratio;       // lipschitz / d
    int degree = 0;
};

namespace detail {

// Lipschitz constant of w -> min_alpha <w, alpha> along the segment
// [p, q] (1d exact breakpoint walk).
inline Rational segment_lipschitz(const QVec& p, const QVec& q,
                                  const std::vector<ExponentVec>& support) {
    const QVec d = q - p;
    const Rational len = norm_eval(Norm::LInf, d);
    if (len.is_zero()) return Rational(0);
    std::set<Rational> cuts = {Rational(0), Rational(1)};
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            // <p + t d, a_i - a_j> = 0
            const Rational num = dot(p, support[i]) - dot(p, support[j]);
            const Rational den = dot(d, support[i]) - dot(d, support[j]);
            if (den.is_zero()) continue;
            const Rational t = -num / den;
            if (t > Rational(0) && t < Rational(1)) cuts.insert(t);
        }
    auto value = [&](const Rational& t) {
        const QVec w = p + (t * d);
        std::optional<Rational> best;
        for (const auto& a : support) {
            const Rational v = dot(w, a);
            if (!best || v < *best) best = v;
        }
        return *best;
    };
    Rational lip(0);
    Rational prev_t;
    Rational prev_v;
    bool first = true;
    for (const auto& t : cuts) {
        const Rational v = value(t);
        if (!first) {
            const Rational slope = ((v - prev_v) / (t - prev_t)).abs() / len;
            lip = max(lip, slope);
        }
        prev_t = t;
        prev_v = v;
        first = false;
    }
    return lip;
}

}  // namespace detail

inline AtInfinityReport at_infinity(const Fan& fan, const SupportSet& p_poly) {
    auto errors = validate_plane_compactification(fan);
    if (!errors.empty()) throw std::invalid_argument("at_infinity: " + errors.front());
    if (p_poly.is_zero() || p_poly.arity() != 2)
        throw std::invalid_argument("at_infinity: nonzero polynomial in two variables required");
    const auto d_opt = p_poly.max_total_degree();
    const int d = static_cast<int>(*d_opt);
    if (d < 1) throw std::invalid_argument("at_infinity: degree must be >= 1");

    // components of Z: rays with a negative entry, normalized so that
    // -min(0, w1, w2) = 1; chi is min over the support
    auto b_of = [&](const Ray& r) {
        return std::max<std::int64_t>({0, -r[0], -r[1]});
    };
    std::vector<ExponentVec> support;
    for (const auto& [e, c] : p_poly.terms()) support.push_back(e);

    AtInfinityReport rep;
    rep.degree = d;
    bool first = true;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        const Ray& r = fan.rays[i];
        const std::int64_t b = b_of(r);
        if (b == 0) continue;  // not at infinity
        const QVec w = {Rational(r[0], static_cast<long>(b)), Rational(r[1], static_cast<long>(b))};
        std::optional<Rational> chi;
        for (const auto& a : support) {
            const Rational v = dot(w, a);
            if (!chi || v < *chi) chi = v;
        }
        if (first || *chi < rep.min_chi) rep.min_chi = *chi;
        if (r[0] == -1 && r[1] == -1 && *chi == Rational(-d)) rep.min_is_minus_d = true;
        first = false;
    }
    if (rep.min_chi != Rational(-d)) rep.min_is_minus_d = false;

    rep.lipschitz = Rational(0);
    for (const auto& cone : fan.cones) {
        if (cone.size() != 2) continue;
        const Ray& r1 = fan.rays[cone[0]];
        const Ray& r2 = fan.rays[cone[1]];
        const std::int64_t b1 = b_of(r1), b2 = b_of(r2);
        if (b1 == 0 || b2 == 0) continue;  // edge not inside the complex at infinity
        const QVec p = {Rational(r1[0], static_cast<long>(b1)),
                        Rational(r1[1], static_cast<long>(b1))};
        const QVec q = {Rational(r2[0], static_cast<long>(b2)),
                        Rational(r2[1], static_cast<long>(b2))};
        rep.lipschitz = max(rep.lipschitz, detail::segment_lipschitz(p, q, support));
    }
    rep.ratio = rep.lipschitz / Rational(d);
    return rep;
}

}  // namespace monoval
