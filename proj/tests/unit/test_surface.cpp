#include <catch2/catch_amalgamated.hpp>

#include "monoval/random.hpp"
#include "monoval/surface.hpp"

using namespace monoval;

namespace {

SupportSet xy_poly(const char* s) { return parse_support(s, 2); }

}  // namespace

TEST_CASE("single blowup") {
    auto tree = BlowupTree::chain(1);
    auto [graph, data] = dual_graph(tree);
    REQUIRE(data.b == std::vector<std::int64_t>{1});
    REQUIRE(data.matrix[0][0] == -1);
    REQUIRE(graph.validate().empty());

    // chart oracle: ord_{E_1}(x) = ord_{E_1}(y) = 1
    auto m = build_model(tree);
    REQUIRE(m.ord_on_curve(0, xy_poly("x")) == 1);
    REQUIRE(m.ord_on_curve(0, xy_poly("y")) == 1);
    REQUIRE(m.ord_on_curve(0, xy_poly("x^2+y^3")) == 2);
}

TEST_CASE("free chain of two") {
    auto tree = BlowupTree::chain(2);
    auto [graph, data] = dual_graph(tree);
    REQUIRE(data.matrix[0][0] == -2);
    REQUIRE(data.matrix[1][1] == -1);
    REQUIRE(data.matrix[0][1] == 1);
    // chart oracle: pulling back (x, y) through (x,y) = (u, u^2 v) gives
    // ord_{E_2}(x) = 1, ord_{E_2}(y) = 2, so b_2 = min = 1
    auto m = build_model(tree);
    REQUIRE(m.ord_on_curve(1, xy_poly("x")) == 1);
    REQUIRE(m.ord_on_curve(1, xy_poly("y")) == 2);
    REQUIRE(data.b == std::vector<std::int64_t>{1, 1});

    // Z . E_i <= 0
    for (int i = 0; i < 2; ++i) {
        std::int64_t z_dot = 0;
        for (int j = 0; j < 2; ++j) z_dot += data.b[j] * data.matrix[i][j];
        REQUIRE(z_dot <= 0);
    }
}

TEST_CASE("satellite point blowup") {
    BlowupTree tree = BlowupTree::chain(2);
    tree.nodes.push_back({TreeNode::Attach::Satellite, 1, Rational(0), 0});
    auto [graph, data] = dual_graph(tree);
    // E_3 meets E_1 and E_2, which no longer meet each other
    REQUIRE(data.matrix[0][2] == 1);
    REQUIRE(data.matrix[1][2] == 1);
    REQUIRE(data.matrix[0][1] == 0);
    REQUIRE(data.matrix[0][0] == -3);
    REQUIRE(data.matrix[1][1] == -2);
    REQUIRE(data.matrix[2][2] == -1);
    // satellite multiplicity adds: b_3 = b_1 + b_2
    REQUIRE(data.b == std::vector<std::int64_t>{1, 1, 2});
    REQUIRE(graph.validate().empty());
    REQUIRE(graph.is_face({1, 3}));
    REQUIRE(graph.is_face({2, 3}));
    REQUIRE_FALSE(graph.is_face({1, 2}));
}

TEST_CASE("free attachment with nonzero coordinate") {
    BlowupTree tree;
    tree.nodes.push_back({TreeNode::Attach::Root, -1, Rational(0), -1});
    tree.nodes.push_back({TreeNode::Attach::Free, 0, Rational(2), -1});
    auto m = build_model(tree);
    // blowing up the direction y = 2x: ord_{E_2}(y - 2x) = 2
    REQUIRE(m.ord_on_curve(1, xy_poly("y - 2*x")) == 2);
    REQUIRE(m.ord_on_curve(1, xy_poly("y - x")) == 1);
    REQUIRE(m.data.b == std::vector<std::int64_t>{1, 1});

    // a second free point at the same coordinate is rejected
    tree.nodes.push_back({TreeNode::Attach::Free, 0, Rational(2), -1});
    REQUIRE_THROWS_AS(build_model(tree), std::invalid_argument);
}

TEST_CASE("ord is chart independent") {
    BlowupTree tree = BlowupTree::chain(3);
    tree.nodes.push_back({TreeNode::Attach::Satellite, 2, Rational(0), 1});
    auto m = build_model(tree);
    SplitMix64 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        SupportSet f = random_poly(rng, 2, 5, 5, true);
        for (const auto& e : m.edges) {
            // order along the u-curve computed in the edge chart agrees
            // with the primary chart
            const Rational via_edge =
                weighted_chart_order(e.chart, f, {Rational(1), Rational(0)});
            REQUIRE(via_edge ==
                    Rational(static_cast<long long>(m.ord_on_curve(e.u_curve, f))));
            const Rational via_edge_v =
                weighted_chart_order(e.chart, f, {Rational(0), Rational(1)});
            REQUIRE(via_edge_v ==
                    Rational(static_cast<long long>(m.ord_on_curve(e.v_curve, f))));
        }
    }
}

TEST_CASE("eval_on_model basics") {
    auto tree = BlowupTree::chain(2);
    auto m = build_model(tree);
    auto [graph, data] = dual_graph(tree);

    REQUIRE(eval_on_model(m, xy_poly("x"), vertex_point(graph, 1)) == Rational(1));
    // y^2 + x^3 on the chain: ord_{E_2} = 3, b_2 = 1
    REQUIRE(eval_on_model(m, xy_poly("y^2+x^3"), vertex_point(graph, 2)) == Rational(3));
    REQUIRE(eval_on_model(m, xy_poly("y^2+x^3"), vertex_point(graph, 1)) == Rational(2));
    // unit evaluates to zero everywhere
    REQUIRE(eval_on_model(m, xy_poly("7"), vertex_point(graph, 2)) == Rational(0));

    // edge points interpolate between normalized vertex valuations
    WeightPoint mid;
    mid.weights[1] = Rational(1, 2);
    mid.weights[2] = Rational(1, 2);
    // v(x) = t_1 + t_2 = 1 and v(y) = t_1 + 2 t_2 = 3/2 at the midpoint,
    // so v(y^2 + x^3) = min(3, 3) = 3; concave, above the chord value 5/2
    const Rational at_mid = eval_on_model(m, xy_poly("y^2+x^3"), mid);
    REQUIRE(at_mid == Rational(3));
}

TEST_CASE("eval_on_model is a valuation") {
    auto tree = BlowupTree::chain(3);
    auto m = build_model(tree);
    auto [graph, data] = dual_graph(tree);
    SplitMix64 rng(4);
    std::vector<WeightPoint> points;
    for (int i = 1; i <= 3; ++i) points.push_back(vertex_point(graph, i));
    WeightPoint mid;
    mid.weights[1] = Rational(1, 3);
    mid.weights[2] = Rational(2, 3);
    points.push_back(mid);
    for (int iter = 0; iter < 25; ++iter) {
        SupportSet f = random_poly(rng, 2, 4, 4, false);
        SupportSet g = random_poly(rng, 2, 4, 4, false);
        if (f.is_zero() || g.is_zero() || (f * g).is_zero()) continue;
        for (const auto& p : points) {
            REQUIRE(eval_on_model(m, f * g, p) ==
                    eval_on_model(m, f, p) + eval_on_model(m, g, p));
            if (!(f + g).is_zero()) {
                REQUIRE(eval_on_model(m, f + g, p) >=
                        min(eval_on_model(m, f, p), eval_on_model(m, g, p)));
            }
        }
    }
}

TEST_CASE("theta_G") {
    auto tree = BlowupTree::chain(1);
    auto m = build_model(tree);
    // G = E_1: theta = |E_1^2| = 1
    REQUIRE(theta_G(m.data, {Rational(1)}, {Rational(0)}) == Rational(1));
    // G = strict transform of {y = 0}: G . E_1 = 1
    const QVec strict = strict_intersections(m, xy_poly("y"));
    REQUIRE(strict == QVec{Rational(1)});
    REQUIRE(theta_G(m.data, {Rational(0)}, strict) == Rational(1));
    // G = div(pi^* f): total transform of a principal divisor, theta = 0
    const QVec a = {Rational(static_cast<long long>(m.ord_on_curve(0, xy_poly("y"))))};
    REQUIRE(theta_G(m.data, a, strict) == Rational(0));
}

TEST_CASE("principal pullbacks have theta zero on deeper trees") {
    BlowupTree tree = BlowupTree::chain(3);
    tree.nodes.push_back({TreeNode::Attach::Satellite, 2, Rational(0), 1});
    auto m = build_model(tree);
    SplitMix64 rng(17);
    for (int iter = 0; iter < 10; ++iter) {
        SupportSet f = random_poly(rng, 2, 5, 5, true);
        QVec a;
        for (int i = 0; i < m.curve_count(); ++i)
            a.emplace_back(static_cast<long long>(m.ord_on_curve(i, f)));
        REQUIRE(theta_G(m.data, a, strict_intersections(m, f)) == Rational(0));
    }
}

TEST_CASE("vertex bound constants") {
    // single vertex: l = 0, A = 1, B = 0
    {
        auto [graph, data] = dual_graph(BlowupTree::chain(1));
        auto c = vertex_bound_constants(graph, data);
        REQUIRE(c.diameter == 0);
        REQUIRE(c.a == Rational(1));
        REQUIRE(c.b == Rational(0));
    }
    // chain of two: c_11 = -2, c_12 = 1, c_21 = 1, c_22 = -1
    {
        auto [graph, data] = dual_graph(BlowupTree::chain(2));
        auto c = vertex_bound_constants(graph, data);
        REQUIRE(c.a0 == Rational(2));
        REQUIRE(c.b0 == Rational(1));
        REQUIRE(c.diameter == 1);
        REQUIRE(c.a == Rational(2));
        REQUIRE(c.b == Rational(1));
    }
    // chain of three: A = A_0^2, B = B_0 (1 + A_0)
    {
        auto [graph, data] = dual_graph(BlowupTree::chain(3));
        auto c = vertex_bound_constants(graph, data);
        REQUIRE(c.diameter == 2);
        REQUIRE(c.a == c.a0 * c.a0);
        REQUIRE(c.b == c.b0 * (Rational(1) + c.a0));
    }
}

TEST_CASE("izumi check on chains") {
    SplitMix64 rng(2025);
    for (int k = 1; k <= 4; ++k) {
        auto tree = BlowupTree::chain(k);
        std::vector<SupportSet> corpus;
        corpus.push_back(xy_poly("x"));
        corpus.push_back(xy_poly("y^2+x^3"));
        for (int i = 0; i < 30; ++i) corpus.push_back(random_poly(rng, 2, 6, 8, true));
        auto rep = izumi_check(tree, corpus);
        REQUIRE(rep.all_ok);
        for (const auto& row : rep.rows) {
            REQUIRE(row.min_is_ord0);
            REQUIRE(row.vertex_bound_ok);
        }
    }
    // single blowup: chi(e_1) = 1 = ord_0(x), so C = 1
    auto rep = izumi_check(BlowupTree::chain(1), {xy_poly("x")});
    REQUIRE(rep.vertex_constants == QVec{Rational(1)});
}

TEST_CASE("at infinity: corollary C data") {
    Fan p2;
    p2.rays = {{1, 0}, {0, 1}, {-1, -1}};
    p2.cones = {{0, 1}, {1, 2}, {2, 0}};
    REQUIRE(validate_plane_compactification(p2).empty());

    // P = x: at w = (-1,-1), chi = -1 = -d
    auto rep = at_infinity(p2, xy_poly("x"));
    REQUIRE(rep.min_chi == Rational(-1));
    REQUIRE(rep.min_is_minus_d);

    // P = x + y^2: chi(-1,-1) = min(-1,-2) = -2 = -d
    auto rep2 = at_infinity(p2, xy_poly("x + y^2"));
    REQUIRE(rep2.min_chi == Rational(-2));
    REQUIRE(rep2.min_is_minus_d);

    // homogeneity: chi_{P^k} = k chi_P makes lipschitz/d constant
    Fan refined;
    refined.rays = {{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}, {-2, -1}};
    refined.cones = {{0, 1}, {1, 2}, {2, 5}, {5, 3}, {3, 4}, {4, 0}};
    REQUIRE(validate_plane_compactification(refined).empty());
    SupportSet p = xy_poly("x + y");
    std::optional<Rational> ratio;
    for (int d = 1; d <= 4; ++d) {
        auto r = at_infinity(refined, p.pow(d));
        REQUIRE(r.min_is_minus_d);
        if (!ratio) ratio = r.ratio;
        REQUIRE(r.ratio == *ratio);
    }

    // incomplete fan rejected
    Fan incomplete;
    incomplete.rays = {{1, 0}, {0, 1}, {-1, -1}};
    incomplete.cones = {{0, 1}, {1, 2}};
    REQUIRE_THROWS_AS(at_infinity(incomplete, xy_poly("x")), std::invalid_argument);
    // ray inside the first quadrant rejected
    Fan bad;
    bad.rays = {{1, 0}, {1, 1}, {0, 1}, {-1, -1}};
    bad.cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    REQUIRE_THROWS_AS(at_infinity(bad, xy_poly("x")), std::invalid_argument);
}
