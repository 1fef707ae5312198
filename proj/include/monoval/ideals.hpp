// Monomial ideals as staircases of exponents: minimal generators, valuation
// ideals a(v,n), colengths, products and powers, integral closure via the
// Newton polyhedron, Rees valuations from bounded facets, and the two order
// functions ord_I and its superadditive limit.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monoval/newton.hpp"
#include "monoval/rational.hpp"
#include "monoval/support_set.hpp"
#include "monoval/valuation.hpp"
#include "monoval/vec.hpp"

namespace monoval {

namespace detail {

inline std::vector<ExponentVec> minimalize(std::vector<ExponentVec> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (!gens.empty() && gens[0].size() == 2) {
        // 2d fast path: sort by (x asc, y asc); keep strictly decreasing y
        std::vector<ExponentVec> keep;
        std::int64_t best_y = -1;
        for (const auto& g : gens) {
            if (best_y >= 0 && g[1] >= best_y) continue;
            keep.push_back(g);
            best_y = g[1];
        }
        return keep;
    }
    std::vector<ExponentVec> keep;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < gens.size() && !dominated; ++j)
            if (i != j && (divides(gens[j], gens[i]) && gens[j] != gens[i])) dominated = true;
        if (!dominated) keep.push_back(gens[i]);
    }
    return keep;
}

}  // namespace detail

class MonomialIdeal {
public:
    MonomialIdeal() : arity_(0) {}

    static MonomialIdeal from_generators(int arity, std::vector<ExponentVec> gens) {
        if (arity <= 0) throw std::invalid_argument("ideal arity must be positive");
        for (const auto& g : gens) {
            if (static_cast<int>(g.size()) != arity)
                throw std::invalid_argument("generator arity mismatch");
            for (auto x : g)
                if (x < 0) throw std::invalid_argument("negative exponent in generator");
        }
        MonomialIdeal out;
        out.arity_ = arity;
        out.gens_ = detail::minimalize(std::move(gens));
        return out;
    }

    static MonomialIdeal unit(int arity) {
        return from_generators(arity, {ExponentVec(arity, 0)});
    }

    // m_0 = (x_1, ..., x_m)
    static MonomialIdeal maximal(int arity) {
        std::vector<ExponentVec> gens;
        for (int i = 0; i < arity; ++i) {
            ExponentVec e(arity, 0);
            e[i] = 1;
            gens.push_back(e);
        }
        return from_generators(arity, gens);
    }

    int arity() const { return arity_; }
    const std::vector<ExponentVec>& generators() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const {
        return gens_.size() == 1 && total_degree(gens_[0]) == 0;
    }

    bool contains(const ExponentVec& e) const {
        for (const auto& g : gens_)
            if (divides(g, e)) return true;
        return false;
    }

    // A polynomial lies in a monomial ideal iff its whole support does.
    bool contains(const SupportSet& f) const {
        if (f.is_zero()) return true;
        for (const auto& [e, c] : f.terms())
            if (!contains(e)) return false;
        return true;
    }

    bool contains(const MonomialIdeal& other) const {
        for (const auto& g : other.gens_)
            if (!contains(g)) return false;
        return true;
    }

    // Every coordinate axis must meet the staircase.
    bool is_primary() const {
        if (is_zero()) return false;
        for (int i = 0; i < arity_; ++i) {
            bool found = false;
            for (const auto& g : gens_) {
                bool pure = true;
                for (int j = 0; j < arity_ && pure; ++j)
                    if (j != i && g[j] != 0) pure = false;
                if (pure) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    friend MonomialIdeal operator*(const MonomialIdeal& a, const MonomialIdeal& b) {
        if (a.arity_ != b.arity_) throw std::invalid_argument("ideal product: arity mismatch");
        std::vector<ExponentVec> gens;
        gens.reserve(a.gens_.size() * b.gens_.size());
        for (const auto& ga : a.gens_)
            for (const auto& gb : b.gens_) gens.push_back(ga + gb);
        return from_generators(a.arity_, std::move(gens));
    }

    MonomialIdeal pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative ideal power");
        MonomialIdeal out = unit(arity_);
        for (int i = 0; i < k; ++i) out = out * (*this);
        return out;
    }

    friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
        return a.arity_ == b.arity_ && a.gens_ == b.gens_;
    }

    NewtonPolyhedron newton() const {
        if (is_zero()) throw std::domain_error("newton polyhedron of zero ideal");
        std::vector<QVec> pts;
        for (const auto& g : gens_) pts.push_back(to_qvec(g));
        return newton_region(std::move(pts), arity_);
    }

private:
    int arity_;
    std::vector<ExponentVec> gens_;
};

// Number of standard monomials (lattice points outside the ideal); errors
// out for non-primary ideals, where the count is infinite.
inline std::int64_t colength(const MonomialIdeal& ideal) {
    if (!ideal.is_primary())
        throw std::domain_error("colength: ideal is not m0-primary (infinite colength)");
    struct Rec {
        static std::int64_t count(const std::vector<ExponentVec>& gens, int arity) {
            if (arity == 1) {
                std::int64_t m = gens.empty() ? -1 : gens[0][0];
                for (const auto& g : gens) m = std::min(m, g[0]);
                return m;
            }
            // pure power bound in the first coordinate
            std::int64_t bound = -1;
            for (const auto& g : gens) {
                bool pure = true;
                for (std::size_t j = 1; j < g.size(); ++j)
                    if (g[j] != 0) pure = false;
                if (pure) bound = bound < 0 ? g[0] : std::min(bound, g[0]);
            }
            std::int64_t total = 0;
            for (std::int64_t x = 0; x < bound; ++x) {
                std::vector<ExponentVec> slice;
                for (const auto& g : gens)
                    if (g[0] <= x) slice.push_back(ExponentVec(g.begin() + 1, g.end()));
                slice = detail::minimalize(std::move(slice));
                total += count(slice, arity - 1);
            }
            return total;
        }
    };
    return Rec::count(ideal.generators(), ideal.arity());
}

// a(v, n) = monomials with weighted value at least n; t must have full
// support so the result is m0-primary.
inline MonomialIdeal valuation_ideal(const QVec& t, const Rational& n) {
    const int m = static_cast<int>(t.size());
    for (const auto& x : t)
        if (x.sign() <= 0)
            throw std::invalid_argument("valuation ideal needs a full-support weight vector");
    if (n.sign() <= 0) return MonomialIdeal::unit(m);
    struct Rec {
        static void gather(const QVec& t, std::size_t coord, const Rational& need,
                           ExponentVec& prefix, std::vector<ExponentVec>& out) {
            if (coord + 1 == t.size()) {
                const Rational q = need / t[coord];
                const std::int64_t e = q.sign() > 0 ? q.ceil().get_si() : 0;
                prefix.push_back(e);
                out.push_back(prefix);
                prefix.pop_back();
                return;
            }
            const Rational q = need / t[coord];
            const std::int64_t hi = q.sign() > 0 ? q.ceil().get_si() : 0;
            for (std::int64_t a = 0; a <= hi; ++a) {
                prefix.push_back(a);
                gather(t, coord + 1, need - (Rational(static_cast<long long>(a)) * t[coord]),
                       prefix, out);
                prefix.pop_back();
            }
        }
    };
    std::vector<ExponentVec> candidates;
    ExponentVec prefix;
    Rec::gather(t, 0, n, prefix, candidates);
    return MonomialIdeal::from_generators(m, std::move(candidates));
}

// Integral closure: minimal lattice points of the Newton polyhedron. For
// arity 2 the facet description is complete (bounded facets plus coordinate
// minima), which also answers powers without rebuilding staircases.
inline MonomialIdeal closure_of_power_2d(const MonomialIdeal& ideal, std::int64_t n) {
    if (ideal.arity() != 2) throw std::invalid_argument("closure_of_power_2d: arity 2 only");
    if (ideal.is_zero()) throw std::domain_error("closure of zero ideal");
    const auto np = ideal.newton();
    const auto facets = bounded_facets(np);
    Rational min_x, min_y;
    bool first = true;
    for (const auto& p : np.extremal) {
        if (first || p[0] < min_x) min_x = p[0];
        if (first || p[1] < min_y) min_y = p[1];
        first = false;
    }
    const Rational nn(static_cast<long long>(n));
    const std::int64_t x0 = (nn * min_x).ceil().get_si();
    // largest x needed: the pure-x requirement from all facets at y = n*min_y
    std::int64_t x_hi = x0;
    for (const auto& f : facets) {
        const Rational need = (nn * f.value - f.normal[1] * nn * min_y) / f.normal[0];
        x_hi = std::max(x_hi, need.ceil().get_si());
    }
    std::vector<ExponentVec> gens;
    for (std::int64_t x = x0; x <= x_hi; ++x) {
        Rational y_need = nn * min_y;
        for (const auto& f : facets) {
            const Rational rest =
                (nn * f.value - f.normal[0] * Rational(static_cast<long long>(x))) / f.normal[1];
            y_need = max(y_need, rest);
        }
        const std::int64_t y = y_need.sign() > 0 ? y_need.ceil().get_si() : 0;
        gens.push_back({x, y});
    }
    return MonomialIdeal::from_generators(2, std::move(gens));
}

inline MonomialIdeal integral_closure(const MonomialIdeal& ideal) {
    if (ideal.is_zero()) throw std::domain_error("closure of zero ideal");
    if (ideal.arity() == 2) return closure_of_power_2d(ideal, 1);
    // general path: LP membership over the box spanned by the generators
    const int m = ideal.arity();
    std::vector<QVec> pts;
    for (const auto& g : ideal.generators()) pts.push_back(to_qvec(g));
    ExponentVec box(m, 0);
    for (const auto& g : ideal.generators())
        for (int i = 0; i < m; ++i) box[i] = std::max(box[i], g[i]);
    std::map<ExponentVec, bool> member;
    struct Rec {
        static void walk(const ExponentVec& box, std::size_t coord, ExponentVec& cur,
                         const std::function<void(const ExponentVec&)>& visit) {
            if (coord == box.size()) {
                visit(cur);
                return;
            }
            for (std::int64_t x = 0; x <= box[coord]; ++x) {
                cur.push_back(x);
                walk(box, coord + 1, cur, visit);
                cur.pop_back();
            }
        }
    };
    auto in_np = [&](const ExponentVec& e) {
        auto it = member.find(e);
        if (it != member.end()) return it->second;
        const bool r = region_contains(pts, to_qvec(e));
        member.emplace(e, r);
        return r;
    };
    std::vector<ExponentVec> gens;
    ExponentVec cur;
    Rec::walk(box, 0, cur, [&](const ExponentVec& e) {
        if (!in_np(e)) return;
        for (int i = 0; i < m; ++i) {
            if (e[i] == 0) continue;
            ExponentVec down = e;
            --down[i];
            if (in_np(down)) return;  // not minimal
        }
        gens.push_back(e);
    });
    return MonomialIdeal::from_generators(m, std::move(gens));
}

// Rees valuations of an m0-primary monomial ideal: one weight vector per
// bounded facet of the Newton polyhedron, normalized so that w(I) = 1.
// Supported for arity <= 3.
inline std::vector<QVec> rees_valuations(const MonomialIdeal& ideal) {
    if (!ideal.is_primary()) throw std::invalid_argument("rees valuations need a primary ideal");
    if (ideal.is_unit()) throw std::invalid_argument("unit ideal has no Rees valuations");
    std::vector<QVec> out;
    for (const auto& f : bounded_facets(ideal.newton())) {
        QVec w = f.normal;
        for (auto& x : w) x /= f.value;
        out.push_back(std::move(w));
    }
    return out;
}

// ord_I(f) = max j with f in I^j (0 when f is not even in I).
inline std::int64_t ideal_order(const MonomialIdeal& ideal, const SupportSet& f) {
    if (f.is_zero()) throw std::invalid_argument("order of zero polynomial");
    if (ideal.is_unit()) throw std::domain_error("order with respect to the unit ideal");
    std::int64_t j = 0;
    MonomialIdeal power = ideal;
    while (power.contains(f)) {
        ++j;
        power = power * ideal;
    }
    return j;
}

inline Rational valuation_of_support(const QVec& w, const SupportSet& f) {
    auto v = eval_valuation(w, f);
    if (!v) throw std::invalid_argument("valuation of zero polynomial");
    return *v;
}

// hat-ord_I(f) = lim ord_I(f^k)/k = min over the Rees valuations of w(f).
inline Rational hat_order(const MonomialIdeal& ideal, const SupportSet& f) {
    if (f.is_zero()) throw std::invalid_argument("hat order of zero polynomial");
    std::optional<Rational> best;
    for (const auto& w : rees_valuations(ideal)) {
        const Rational v = *eval_valuation(w, f);
        if (!best || v < *best) best = v;
    }
    return *best;
}

}  // namespace monoval
