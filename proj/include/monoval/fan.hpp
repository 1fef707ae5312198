// Simplicial fans given by primitive integer rays and cones of ray indices.
// Two uses: fans over the nonnegative orthant coming from subdivisions of a
// monomial-model dual complex, and complete plane fans for toric
// compactifications of the affine plane.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monoval/piecewise.hpp"
#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval {

using Ray = std::vector<std::int64_t>;

struct Fan {
    std::vector<Ray> rays;
    std::vector<std::vector<int>> cones;  // ray index lists, simplicial
};

inline Ray primitive_ray(const QVec& direction) {
    BigInt lcm_den(1);
    for (const auto& x : direction) {
        BigInt d = x.denominator();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<BigInt> ints;
    BigInt gcd(0);
    for (const auto& x : direction) {
        BigInt n = x.numerator() * (lcm_den / x.denominator());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
        ints.push_back(n);
    }
    if (gcd == 0) throw std::invalid_argument("primitive ray of zero vector");
    Ray out;
    for (auto& n : ints) {
        BigInt q = n / gcd;
        if (!q.fits_slong_p()) throw std::overflow_error("ray entry too large");
        out.push_back(q.get_si());
    }
    return out;
}

inline std::int64_t ray_gcd(const Ray& r) {
    std::int64_t g = 0;
    for (auto x : r) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

// Coordinates of w in the simplicial cone spanned by the given rays (a
// square solve when the cone is full-dimensional); nullopt when w is not in
// the cone.
inline std::optional<QVec> cone_coordinates(const Fan& fan, const std::vector<int>& cone,
                                            const QVec& w) {
    const std::size_t m = w.size();
    if (cone.size() != m) return std::nullopt;  // only full-dimensional cones carry points here
    std::vector<QVec> a(m, QVec(m, Rational(0)));
    for (std::size_t col = 0; col < cone.size(); ++col) {
        const Ray& r = fan.rays.at(cone[col]);
        if (r.size() != m) throw std::invalid_argument("ray dimension mismatch");
        for (std::size_t row = 0; row < m; ++row)
            a[row][col] = Rational(static_cast<long long>(r[row]));
    }
    auto sol = solve_linear(a, w);
    if (!sol) return std::nullopt;
    for (const auto& c : *sol)
        if (c.sign() < 0) return std::nullopt;
    return sol;
}

// w(E'_i): write w in a cone containing it and return the coefficient of
// ray i (zero when the ray does not belong to that cone). Well-defined on
// overlaps because cone charts agree on shared faces.
inline Rational divisor_valuation_fn(const Fan& fan, int ray_index, const QVec& w) {
    if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
        throw std::invalid_argument("ray index out of range");
    for (const auto& cone : fan.cones) {
        auto coords = cone_coordinates(fan, cone, w);
        if (!coords) continue;
        for (std::size_t k = 0; k < cone.size(); ++k)
            if (cone[k] == ray_index) return (*coords)[k];
        return Rational(0);
    }
    throw std::invalid_argument("point outside the support of the fan");
}

inline std::vector<std::string> validate_fan(const Fan& fan) {
    std::vector<std::string> errors;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        if (fan.rays[i].empty()) errors.push_back("empty ray");
        else if (ray_gcd(fan.rays[i]) != 1)
            errors.push_back("ray " + std::to_string(i) + " is not primitive");
    }
    for (const auto& cone : fan.cones) {
        for (int i : cone)
            if (i < 0 || i >= static_cast<int>(fan.rays.size())) {
                errors.push_back("cone references unknown ray");
                continue;
            }
        // simpliciality: the rays of the cone are linearly independent
        if (!cone.empty()) {
            const std::size_t m = fan.rays[cone[0]].size();
            std::vector<QVec> rows;
            for (int i : cone) {
                QVec r;
                for (auto x : fan.rays[i]) r.emplace_back(static_cast<long long>(x));
                rows.push_back(std::move(r));
            }
            // rank via Gaussian elimination
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
            if (rank != cone.size()) errors.push_back("cone is not simplicial");
        }
    }
    return errors;
}

inline bool fan_in_orthant(const Fan& fan) {
    for (const auto& r : fan.rays)
        for (auto x : r)
            if (x < 0) return false;
    return true;
}

// Angular comparator for 2d integer rays (counterclockwise from (1,0)).
inline bool angle_less(const Ray& a, const Ray& b) {
    auto half = [](const Ray& r) {
        return (r[1] > 0 || (r[1] == 0 && r[0] > 0)) ? 0 : 1;
    };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const std::int64_t cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

// A complete 2d fan refining the standard fan of the projective plane:
// contains the rays (1,0), (0,1), (-1,-1), nothing strictly inside the
// open first quadrant, and consecutive rays span the cones.
inline std::vector<std::string> validate_plane_compactification(const Fan& fan) {
    std::vector<std::string> errors = validate_fan(fan);
    for (const auto& r : fan.rays)
        if (r.size() != 2) errors.push_back("plane fan needs 2d rays");
    if (!errors.empty()) return errors;

    auto has_ray = [&](std::int64_t x, std::int64_t y) {
        for (const auto& r : fan.rays)
            if (r[0] == x && r[1] == y) return true;
        return false;
    };
    if (!has_ray(1, 0) || !has_ray(0, 1)) errors.push_back("fan must contain the orthant rays");
    if (!has_ray(-1, -1)) errors.push_back("fan must refine the plane fan (ray (-1,-1) missing)");
    for (const auto& r : fan.rays)
        if (r[0] > 0 && r[1] > 0)
            errors.push_back("ray strictly inside the first quadrant; not an isomorphism over the plane");

    // completeness: angular sort, consecutive pairs must be cones
    std::vector<int> order(fan.rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return angle_less(fan.rays[i], fan.rays[j]); });
    auto is_cone = [&](int i, int j) {
        for (const auto& c : fan.cones) {
            if (c.size() != 2) continue;
            if ((c[0] == i && c[1] == j) || (c[0] == j && c[1] == i)) return true;
        }
        return false;
    };
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int i = order[k];
        const int j = order[(k + 1) % order.size()];
        if (!is_cone(i, j))
            errors.push_back("fan is not complete: consecutive rays " + std::to_string(i) +
                             "," + std::to_string(j) + " span no cone");
    }
    return errors;
}

}  // namespace monoval
