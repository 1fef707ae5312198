#include <catch2/catch_amalgamated.hpp>

#include "monoval/multiplicity.hpp"
#include "monoval/random.hpp"

using namespace monoval;

namespace {

MonomialIdeal ideal2(std::vector<ExponentVec> gens) {
    return MonomialIdeal::from_generators(2, std::move(gens));
}

const MonomialIdeal kM0 = MonomialIdeal::maximal(2);
const MonomialIdeal kI32 = ideal2({{3, 0}, {0, 2}});          // (x^3, y^2)
const MonomialIdeal kStairs = ideal2({{2, 0}, {1, 1}, {0, 3}});  // (x^2, xy, y^3)

}  // namespace

TEST_CASE("valuation ideals") {
    auto a = valuation_ideal({Rational(1), Rational(1)}, Rational(2));
    REQUIRE(a.generators() == std::vector<ExponentVec>{{0, 2}, {1, 1}, {2, 0}});
    auto b = valuation_ideal({Rational(1), Rational(2)}, Rational(2));
    REQUIRE(b.generators() == std::vector<ExponentVec>{{0, 1}, {2, 0}});
    auto c = valuation_ideal({Rational(1), Rational(1)}, Rational(0));
    REQUIRE(c.is_unit());
    REQUIRE_THROWS_AS(valuation_ideal({Rational(1), Rational(0)}, Rational(1)),
                      std::invalid_argument);
    // rational thresholds take ceilings in the staircase
    auto d = valuation_ideal({Rational(1), Rational(1)}, Rational(3, 2));
    REQUIRE(d.generators() == std::vector<ExponentVec>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("graded sequence law") {
    SplitMix64 rng(31337);
    for (int iter = 0; iter < 40; ++iter) {
        const QVec t = random_weights(rng, 2, Rational(1, 4), Rational(2));
        const Rational n(rng.range(1, 12), rng.range(1, 3));
        const Rational np(rng.range(1, 12), rng.range(1, 3));
        auto a = valuation_ideal(t, n);
        auto b = valuation_ideal(t, np);
        auto c = valuation_ideal(t, n + np);
        REQUIRE(c.contains(a * b));
    }
}

TEST_CASE("colength") {
    REQUIRE(colength(kM0) == 1);
    REQUIRE(colength(ideal2({{2, 0}, {0, 1}})) == 2);
    REQUIRE(colength(kStairs) == 4);
    REQUIRE(colength(MonomialIdeal::maximal(3)) == 1);
    REQUIRE(colength(MonomialIdeal::from_generators(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}})) == 7);
    REQUIRE_THROWS_AS(colength(ideal2({{1, 1}})), std::domain_error);
}

TEST_CASE("products and powers") {
    REQUIRE((kM0 * kM0).generators() == std::vector<ExponentVec>{{0, 2}, {1, 1}, {2, 0}});
    REQUIRE((kM0 * MonomialIdeal::unit(2)) == kM0);
    REQUIRE(ideal2({{2, 0}, {0, 1}}).pow(2).generators() ==
            std::vector<ExponentVec>{{0, 2}, {2, 1}, {4, 0}});
}

TEST_CASE("integral closure") {
    REQUIRE(integral_closure(ideal2({{2, 0}, {0, 2}})).generators() ==
            std::vector<ExponentVec>{{0, 2}, {1, 1}, {2, 0}});
    REQUIRE(integral_closure(kM0.pow(3)) == kM0.pow(3));
    REQUIRE(integral_closure(kI32).generators() ==
            std::vector<ExponentVec>{{0, 2}, {2, 1}, {3, 0}});
    // 3d: (x^2, y^2, z^2) gains the midpoints of the cross terms
    auto c3 = integral_closure(
        MonomialIdeal::from_generators(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
    REQUIRE(c3.contains(ExponentVec{1, 1, 0}));
    REQUIRE(c3.contains(ExponentVec{1, 0, 1}));
    REQUIRE(c3.contains(ExponentVec{0, 1, 1}));
    REQUIRE_FALSE(c3.contains(ExponentVec{1, 0, 0}));
    // closure of powers: the 2d facet path agrees with the generic path
    for (int n = 1; n <= 4; ++n)
        REQUIRE(closure_of_power_2d(kStairs, n) == integral_closure(kStairs.pow(n)));
}

TEST_CASE("rees valuations") {
    auto r1 = rees_valuations(kM0);
    REQUIRE(r1.size() == 1);
    REQUIRE(r1[0] == QVec{Rational(1), Rational(1)});

    auto r2 = rees_valuations(kI32);
    REQUIRE(r2.size() == 1);
    REQUIRE(r2[0] == QVec{Rational(1, 3), Rational(1, 2)});  // (2,3)/6

    auto r3 = rees_valuations(kStairs);
    REQUIRE(r3.size() == 2);
    // normals (2,1)/3 on the facet (0,3)-(1,1) and (1,1)/2 on (1,1)-(2,0)
    REQUIRE(r3[0] == QVec{Rational(2, 3), Rational(1, 3)});
    REQUIRE(r3[1] == QVec{Rational(1, 2), Rational(1, 2)});
    // normalization w(I) = 1
    for (const auto& w : r3) {
        Rational mn = dot(w, kStairs.generators()[0]);
        for (const auto& g : kStairs.generators()) mn = min(mn, dot(w, g));
        REQUIRE(mn == Rational(1));
    }
}

TEST_CASE("orders and hat orders") {
    SupportSet f = parse_support("x^2 + x*y^3");
    REQUIRE(ideal_order(kM0, f) == 2);
    REQUIRE(hat_order(kM0, f) == Rational(2));

    SupportSet xy = parse_support("x*y");
    REQUIRE(ideal_order(kI32, xy) == 0);
    REQUIRE(hat_order(kI32, xy) == Rational(5, 6));
    REQUIRE(Rational(static_cast<long long>(ideal_order(kI32, xy))) <= hat_order(kI32, xy));

    // superadditivity of ord under powers
    SplitMix64 rng(808);
    for (int iter = 0; iter < 15; ++iter) {
        SupportSet g = random_poly(rng, 2, 4, 4, true);
        const int n = static_cast<int>(rng.range(1, 3)), np = static_cast<int>(rng.range(1, 3));
        REQUIRE(ideal_order(kStairs, g.pow(n + np)) >=
                ideal_order(kStairs, g.pow(n)) + ideal_order(kStairs, g.pow(np)));
    }
}

TEST_CASE("T107 scan: closure(I^n) inside I^{n-N}") {
    for (const auto& ideal : {kM0, kI32, kStairs}) {
        std::int64_t worst = 0;
        for (int n = 1; n <= 20; ++n) {
            const auto closed = closure_of_power_2d(ideal, n);
            // largest j with closure(I^n) subset I^j
            int j = n;
            while (j > 0 && !ideal.pow(j).contains(closed)) --j;
            worst = std::max<std::int64_t>(worst, n - j);
        }
        REQUIRE(worst <= 3);
    }
}

TEST_CASE("hilbert-samuel multiplicities") {
    REQUIRE(hilbert_samuel(kM0) == Rational(1));
    REQUIRE(hilbert_samuel(ideal2({{2, 0}, {0, 3}})) == Rational(6));
    REQUIRE(hilbert_samuel(kStairs) == Rational(5));
    REQUIRE(hilbert_samuel(MonomialIdeal::maximal(3)) == Rational(1));
    REQUIRE(hilbert_samuel(MonomialIdeal::from_generators(
                3, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {1, 1, 0}})) == Rational(18));

    // counting oracle converges: e(I) = lim m!/n^m colength(I^n)
    const Rational exact = hilbert_samuel(kStairs);
    const Rational o64 = hilbert_samuel_oracle(kStairs, 64);
    const Rational o128 = hilbert_samuel_oracle(kStairs, 128);
    REQUIRE((o128 - exact).abs() < (o64 - exact).abs());
    REQUIRE((o128 - exact).abs() * Rational(128) <= Rational(20));  // c/n decay
}

TEST_CASE("mixed multiplicities") {
    // I = J = m_0: all powers of the maximal ideal
    REQUIRE(mixed_multiplicities(kM0, kM0) == QVec{Rational(1), Rational(1), Rational(1)});

    // spec example: e(I) = 1, e(I;J) = 1, e(J) = 2 for J = (x, y^2)
    auto j = ideal2({{1, 0}, {0, 2}});
    REQUIRE(mixed_multiplicities(kM0, j) == QVec{Rational(1), Rational(1), Rational(2)});
    REQUIRE(hilbert_samuel(kM0 * j) == Rational(5));

    // symmetry and endpoint normalization
    SplitMix64 rng(5150);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<ExponentVec> g1, g2;
        g1.push_back({rng.range(1, 4), 0});
        g1.push_back({0, rng.range(1, 4)});
        g1.push_back({rng.range(0, 3), rng.range(0, 3)});
        g2.push_back({rng.range(1, 4), 0});
        g2.push_back({0, rng.range(1, 4)});
        auto a = ideal2(g1);
        auto b = ideal2(g2);
        const auto ab = mixed_multiplicities(a, b);
        auto ba = mixed_multiplicities(b, a);
        std::reverse(ba.begin(), ba.end());
        REQUIRE(ab == ba);
        REQUIRE(ab.front() == hilbert_samuel(a));
        REQUIRE(ab.back() == hilbert_samuel(b));
        for (const auto& e : ab) REQUIRE(e.is_integer());
        // monotonicity under inclusion: a * b subset a implies larger e
        const auto finer = mixed_multiplicities(a * b, b);
        for (std::size_t i = 0; i < ab.size(); ++i) REQUIRE(finer[i] >= ab[i]);
    }
}

TEST_CASE("alpha invariants") {
    // t = (1,1): ord_0 itself, alpha = (1,1,1)
    auto a1 = alpha({Rational(1), Rational(1)});
    REQUIRE(a1.exact == QVec{Rational(1), Rational(1), Rational(1)});

    // t = (1,2): alpha = (1, 1/2, 1/2)
    auto a2 = alpha({Rational(1), Rational(2)});
    REQUIRE(a2.exact == QVec{Rational(1), Rational(1, 2), Rational(1, 2)});
    // Teissier: (1/2)^2 <= 1 * (1/2)
    REQUIRE(a2.exact[1] * a2.exact[1] <= a2.exact[0] * a2.exact[2]);

    // oracle at n = 64 sits within 10% of the exact alpha_1
    auto a3 = alpha({Rational(1), Rational(2)}, {64});
    const Rational est = a3.oracle[0][1];
    REQUIRE((est - Rational(1, 2)).abs() <= Rational(1, 20));

    SplitMix64 rng(22);
    for (int iter = 0; iter < 12; ++iter) {
        const int m = 2 + static_cast<int>(rng.below(2));
        const QVec t = random_weights(rng, m, Rational(1, 3), Rational(3));
        const auto av = alpha(t, {});
        // alpha_0 = e(m_0) = 1 at a smooth point
        REQUIRE(av.exact[0] == Rational(1));
        // Prop p8 smooth case: alpha_1 * max t_i = 1
        Rational mx = t[0];
        for (const auto& x : t) mx = max(mx, x);
        REQUIRE(av.exact[1] * mx == Rational(1));
        // alpha_m = vol = 1 / prod t_i
        REQUIRE(av.exact[m] == volume_exact(t));
        // Teissier log-convexity
        for (int i = 1; i < m; ++i)
            REQUIRE(av.exact[i] * av.exact[i] <= av.exact[i - 1] * av.exact[i + 1]);
    }
}

TEST_CASE("volume") {
    REQUIRE(volume_exact({Rational(1), Rational(1)}) == Rational(1));
    REQUIRE(volume_exact({Rational(1), Rational(2)}) == Rational(1, 2));
    REQUIRE(volume_exact({Rational(1), Rational(1), Rational(1)}) == Rational(1));
    const Rational oracle = volume_oracle({Rational(1), Rational(2)}, 200);
    REQUIRE((oracle - Rational(1, 2)).abs() <= Rational(1, 40));  // within 5%
}

TEST_CASE("linking numbers") {
    const QVec v = {Rational(1), Rational(2)};
    const QVec w = {Rational(1), Rational(1)};
    REQUIRE(linking_number(v, w) == Rational(2));
    REQUIRE(linking_number(v, v) == Rational(1));
    REQUIRE(linking_number_bruteforce(v, w, 20) == Rational(2));
    // lembdiv route: w(a(v,n))/n decreases to 1/beta = 1/2
    const Rational approx = linking_number_ideal_approx(v, w, 512);
    REQUIRE(approx >= Rational(1, 2));
    REQUIRE(approx - Rational(1, 2) <= Rational(1, 100));  // within 2%

    SplitMix64 rng(71);
    for (int iter = 0; iter < 20; ++iter) {
        const QVec a = random_weights(rng, 2, Rational(1, 3), Rational(3));
        const QVec b = random_weights(rng, 2, Rational(1, 3), Rational(3));
        const QVec c = random_weights(rng, 2, Rational(1, 3), Rational(3));
        REQUIRE(linking_number(a, b) == linking_number_bruteforce(a, b, 12));
        // submultiplicativity and the reciprocal bound
        REQUIRE(linking_number(a, c) <= linking_number(a, b) * linking_number(b, c));
        REQUIRE(linking_number(a, b) * linking_number(b, a) >= Rational(1));
    }
}

TEST_CASE("corollary D experiment rows") {
    // normalization min_i t_i = 1 makes the inclusion exact for any A >= 1
    const QVec v = {Rational(1), Rational(1)};
    const QVec w = {Rational(10, 9), Rational(1)};
    const Rational a_const(3);
    QVec sup(3, Rational(1));  // alpha_i <= 1 on this pair
    auto row = corollary_d_case(v, w, a_const, sup);
    REQUIRE(row.inclusion_ok);
    REQUIRE(row.ratios_ok);

    // v = w: zero ratios
    auto same = corollary_d_case(v, v, a_const, sup);
    REQUIRE(same.distance == Rational(0));
    REQUIRE(same.inclusion_ok);
    for (const auto& r : same.alpha_gap_ratio) REQUIRE(r == Rational(0));
}

TEST_CASE("corollary E experiment rows") {
    const QVec v = {Rational(1), Rational(2)};
    const QVec vp = {Rational(1), Rational(1)};
    const QVec w = {Rational(1), Rational(15, 8)};
    const QVec wp = {Rational(1), Rational(9, 8)};
    auto row = corollary_e_case(v, vp, w, wp, Rational(2));
    REQUIRE(row.submultiplicative_ok);
    REQUIRE(row.reciprocal_ok);
    REQUIRE(row.chain_bound_ok);

    auto zero = corollary_e_case(v, vp, v, vp, Rational(2));
    REQUIRE(zero.displacement == Rational(0));
    REQUIRE(zero.gap_ratio == Rational(0));
}
