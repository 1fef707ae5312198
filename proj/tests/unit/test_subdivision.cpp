#include <catch2/catch_amalgamated.hpp>

#include "monoval/random.hpp"
#include "monoval/subdivision.hpp"

using namespace monoval;

namespace {

WeightPoint interior_point(const DualComplex& dc, const Face& sigma, SplitMix64& rng) {
    // random positive barycentric coordinates with small denominators
    QVec coords;
    std::int64_t total = 0;
    std::vector<std::int64_t> raw;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        raw.push_back(rng.range(1, 5));
        total += raw.back();
    }
    for (auto r : raw) coords.emplace_back(Rational(r, static_cast<long>(total)));
    return from_barycentric(dc, sigma, coords);
}

}  // namespace

TEST_CASE("edge subdivision at the midpoint") {
    auto dc = DualComplex::simplex({1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 2), Rational(1, 2)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 2));

    // scaled vertices at (3/4, 1/4) and (1/4, 3/4): edge parameters 1/4, 3/4
    REQUIRE(pc.scaled_id.size() == 2);
    const int s1 = pc.scaled_id.at(1), s2 = pc.scaled_id.at(2);
    REQUIRE(pc.position(s1) == QVec{Rational(3, 4), Rational(1, 4)});
    REQUIRE(pc.position(s2) == QVec{Rational(1, 4), Rational(3, 4)});

    auto maximal = pc.maximal_faces();
    std::set<Face> expected = {{1, s1}, {s1, s2}, {2, s2}};
    REQUIRE(std::set<Face>(maximal.begin(), maximal.end()) == expected);
    REQUIRE(is_simplicial(pc));
    REQUIRE(barycentric_outside_star(pc).faces == pc.faces);
}

TEST_CASE("figure-1 subdivision of a triangle at an edge") {
    auto dc = DualComplex::simplex({1, 1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 2), Rational(1, 2)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 4));
    const int s1 = pc.scaled_id.at(1), s2 = pc.scaled_id.at(2), s3 = pc.scaled_id.at(3);

    // the two collar quadrilaterals are faces
    REQUIRE(pc.faces.count(sorted_face({1, 3, s1, s3})));
    REQUIRE(pc.faces.count(sorted_face({2, 3, s2, s3})));
    REQUIRE(pc.faces.at(sorted_face({1, 3, s1, s3})).kind == FaceInfo::Kind::Prism);
    // scaled triangle
    REQUIRE(pc.faces.count(sorted_face({s1, s2, s3})));
    // the old edge [e1, e2] through sigma is gone
    REQUIRE_FALSE(pc.faces.count({1, 2}));

    REQUIRE_FALSE(is_simplicial(pc));

    auto tri = barycentric_outside_star(pc);
    REQUIRE(is_simplicial(tri));
    // each quadrilateral gains its barycenter and splits into 4 triangles
    int barycenters = 0;
    for (const auto& [id, pv] : tri.vertices)
        if (pv.origin == VertexOrigin::Barycenter) ++barycenters;
    REQUIRE(barycenters == 2);

    // the star of sigma^eps is preserved bit-exactly
    for (const auto& [f, info] : pc.faces) {
        if (!std::includes(f.begin(), f.end(), pc.sigma_scaled.begin(), pc.sigma_scaled.end()))
            continue;
        REQUIRE(tri.faces.count(f));
        for (int id : f) REQUIRE(tri.position(id) == pc.position(id));
    }
    REQUIRE(covers_exactly(dc, tri));
}

TEST_CASE("sigma equal to a maximal face") {
    auto dc = DualComplex::simplex({1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 3), Rational(2, 3)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 3));
    // scaled copy plus collar segments; complement empty
    const int s1 = pc.scaled_id.at(1), s2 = pc.scaled_id.at(2);
    auto maximal = pc.maximal_faces();
    std::set<Face> expected = {{1, s1}, {s1, s2}, {2, s2}};
    REQUIRE(std::set<Face>(maximal.begin(), maximal.end()) == expected);
}

TEST_CASE("special_subdivide rejects bad inputs") {
    auto dc = DualComplex::simplex({1, 1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 2), Rational(1, 2)});
    REQUIRE_THROWS_AS(special_subdivide(dc, {1, 2}, v, Rational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(special_subdivide(dc, {1, 2}, v, Rational(0)), std::invalid_argument);
    // v on the boundary of sigma (it is a vertex of the edge {1,2}? no:
    // support {1} is a proper face of sigma)
    WeightPoint corner = vertex_point(dc, 1);
    REQUIRE_THROWS_AS(special_subdivide(dc, {1, 2}, corner, Rational(1, 2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(special_subdivide(dc, {1, 3}, v, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("support function values from the spec example") {
    // J = {1,2}, s = (1/2,1/2), eps = 1/4 on the b = (1,1,1) triangle
    auto dc = DualComplex::simplex({1, 1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 2), Rational(1, 2)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 4));

    REQUIRE(h.eval(pc, pc.position(1)) == Rational(0));
    REQUIRE(h.eval(pc, pc.v_pos) == Rational(-3, 4));
    REQUIRE(h.eval(pc, pc.position(pc.scaled_id.at(1))) == Rational(-3, 4));
}

TEST_CASE("support function is convex") {
    auto dc = DualComplex::simplex({1, 2, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 3), Rational(2, 3)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 3));
    SplitMix64 rng(11);
    auto rnd_point = [&]() {
        // random point of the triangle in weight coords
        std::int64_t a = rng.range(0, 6), b = rng.range(0, 6 - a), c = 6 - a - b;
        QVec coords = {Rational(a, 6), Rational(b, 6), Rational(c, 6)};
        auto p = from_barycentric(dc, {1, 2, 3}, coords);
        QVec pos(3, Rational(0));
        for (const auto& [id, wt] : p.weights) pos[pc.axis_index(id)] = wt;
        return pos;
    };
    for (int i = 0; i < 100; ++i) {
        const QVec a = rnd_point(), b = rnd_point();
        const Rational lam(rng.range(0, 8), 8);
        const QVec mid = (lam * a) + ((Rational(1) - lam) * b);
        REQUIRE(h.eval(pc, mid) <= lam * h.eval(pc, a) + (Rational(1) - lam) * h.eval(pc, b));
    }
}

TEST_CASE("projectivity of the special subdivision") {
    auto dc = DualComplex::simplex({1, 1, 1});
    WeightPoint v = from_barycentric(dc, {1, 2}, {Rational(1, 2), Rational(1, 2)});
    auto [pc, h] = special_subdivide(dc, {1, 2}, v, Rational(1, 4));
    REQUIRE(is_projective(pc, h, dc));

    // trivial subdivision with h == 0 is projective (coarsest = Delta)
    REQUIRE(is_projective(embed_complex(dc), SupportFunction::zero(), dc));

    // the unsubdivided complex with a genuine support function fails the
    // affineness check
    REQUIRE_FALSE(is_projective(embed_complex(dc), h, dc));
}

TEST_CASE("projectivity and simpliciality on random instances") {
    SplitMix64 rng(20240103);
    for (int iter = 0; iter < 30; ++iter) {
        const int m = 2 + static_cast<int>(rng.below(2));  // 2 or 3 vertices
        std::vector<std::int64_t> b;
        for (int i = 0; i < m; ++i) b.push_back(rng.range(1, 3));
        auto dc = DualComplex::simplex(b);
        // random face of size >= 1
        Face sigma;
        for (int i = 1; i <= m; ++i)
            if (rng.below(2)) sigma.push_back(i);
        if (sigma.empty()) sigma.push_back(1 + static_cast<int>(rng.below(m)));
        WeightPoint v = interior_point(dc, sigma, rng);
        const Rational eps(1, rng.range(2, 6));
        auto [pc, h] = special_subdivide(dc, sigma, v, eps);
        REQUIRE(is_projective(pc, h, dc));
        auto tri = barycentric_outside_star(pc);
        REQUIRE(is_simplicial(tri));
        REQUIRE(covers_exactly(dc, tri));
        // psi^eps equivariance: scaled faces sit at eps * face + (1-eps) v
        for (const auto& [j, sid] : pc.scaled_id) {
            const QVec want = (eps * pc.position(j)) + ((Rational(1) - eps) * pc.v_pos);
            REQUIRE(pc.position(sid) == want);
        }
    }
}

TEST_CASE("divisor valuation function on fans") {
    Fan orthant;
    orthant.rays = {{1, 0}, {0, 1}};
    orthant.cones = {{0, 1}};
    REQUIRE(divisor_valuation_fn(orthant, 0, {Rational(5, 2), Rational(3)}) == Rational(5, 2));

    Fan star;
    star.rays = {{1, 0}, {1, 1}, {0, 1}};
    star.cones = {{0, 1}, {1, 2}};
    REQUIRE(validate_fan(star).empty());
    // w = (2,1) = 1*(1,0) + 1*(1,1)
    REQUIRE(divisor_valuation_fn(star, 1, {Rational(2), Rational(1)}) == Rational(1));
    REQUIRE(divisor_valuation_fn(star, 2, {Rational(2), Rational(1)}) == Rational(0));
    // primitive generators evaluate to 1 on their own ray
    REQUIRE(divisor_valuation_fn(star, 1, {Rational(1), Rational(1)}) == Rational(1));
    // well-defined on the shared wall
    const QVec wall = {Rational(3), Rational(3)};
    REQUIRE(divisor_valuation_fn(star, 1, wall) == Rational(3));
    // affine on each cone
    SplitMix64 rng(5);
    for (int i = 0; i < 40; ++i) {
        const QVec a = {Rational(rng.range(0, 9)), Rational(0)};
        const QVec bq = {Rational(rng.range(0, 9)), Rational(rng.range(0, 9))};
        // both in cone <(1,0),(1,1)> when x >= y
        const QVec p = {a[0] + Rational(9), a[0]};
        const QVec q = {bq[0] + bq[1] + Rational(9), bq[0]};
        const Rational lam(rng.range(0, 4), 4);
        const QVec mid = (lam * p) + ((Rational(1) - lam) * q);
        const Rational lhs = divisor_valuation_fn(star, 1, mid);
        const Rational rhs = lam * divisor_valuation_fn(star, 1, p) +
                             (Rational(1) - lam) * divisor_valuation_fn(star, 1, q);
        REQUIRE(lhs == rhs);
    }
    REQUIRE_THROWS_AS(divisor_valuation_fn(star, 0, {Rational(-1), Rational(0)}),
                      std::invalid_argument);
}

TEST_CASE("L101 identity on monomial models") {
    // monomial chi: globally affine, identity holds for any eps
    {
        WeightPoint v;
        v.weights[1] = Rational(1, 4);
        v.weights[2] = Rational(1, 4);  // b = (2,2): 2/4 + 2/4 = 1
        auto rep = verify_L101({2, 2}, {1, 2}, v, Rational(1, 3),
                               parse_support("x^2*y", 2));
        REQUIRE(rep.preconditions_ok);
        REQUIRE(rep.identity_holds);
        REQUIRE(rep.residual_nonneg);
        REQUIRE(rep.residual_zero_on_sigma);
    }
    // f = x^2 + y^3 at an interior point away from the breakpoint; the
    // active form flips at s = 1/10 along [v, e_2], so eps = 1/16 is safe
    {
        WeightPoint v;
        v.weights[1] = Rational(2, 3);
        v.weights[2] = Rational(1, 3);
        auto rep = verify_L101({1, 1}, {1, 2}, v, Rational(1, 16), parse_support("x^2+y^3"));
        REQUIRE(rep.preconditions_ok);
        REQUIRE(rep.identity_holds);
        REQUIRE(rep.residual_nonneg);
        REQUIRE(rep.residual_zero_on_sigma);
    }
    // eps too large: chi breaks on a segment [v, e'_j]
    {
        WeightPoint v;
        v.weights[1] = Rational(2, 3);
        v.weights[2] = Rational(1, 3);
        auto rep = verify_L101({1, 1}, {1, 2}, v, Rational(7, 8), parse_support("x^2+y^3"));
        REQUIRE_FALSE(rep.preconditions_ok);
        REQUIRE_FALSE(rep.precondition_failures.empty());
    }
    // sigma a proper face (vertex) of the 2-simplex
    {
        WeightPoint v = vertex_point(DualComplex::simplex({1, 1}), 1);
        auto rep = verify_L101({1, 1}, {1}, v, Rational(1, 8), parse_support("x^2+x*y+y^3"));
        REQUIRE(rep.preconditions_ok);
        REQUIRE(rep.identity_holds);
    }
}

TEST_CASE("L101 on random monomial-model instances") {
    SplitMix64 rng(777);
    int done = 0;
    int precondition_violations = 0;
    while (done < 25) {
        std::vector<std::int64_t> b = {rng.range(1, 2), rng.range(1, 2)};
        auto dc = DualComplex::simplex(b);
        Face sigma = rng.below(2) ? Face{1, 2} : Face{1 + static_cast<int>(rng.below(2))};
        SplitMix64 inner(rng.next());
        WeightPoint v = interior_point(dc, sigma, inner);
        SupportSet f = random_poly(inner, 2, 6, 6, true);
        const Rational eps(1, rng.range(4, 16));
        auto rep = verify_L101(b, sigma, v, eps, f);
        if (!rep.preconditions_ok) {
            ++precondition_violations;
            continue;
        }
        REQUIRE(rep.identity_holds);
        REQUIRE(rep.residual_nonneg);
        REQUIRE(rep.residual_zero_on_sigma);
        ++done;
    }
    INFO("precondition violations: " << precondition_violations);
}
