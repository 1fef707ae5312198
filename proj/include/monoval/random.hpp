// Deterministic sampling for the experiment suites. All randomness flows
// through splitmix64 so that a (seed, version) pair pins every corpus
// byte-for-byte on any platform; none of the std distributions are used.

#pragma once

#include <cstdint>
#include <vector>

#include "monoval/rational.hpp"
#include "monoval/support_set.hpp"
#include "monoval/vec.hpp"

namespace monoval {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n > 0 (modulo bias is irrelevant here, determinism
    // is what matters)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Rational rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_hi) {
        return Rational(range(num_lo, num_hi), range(1, den_hi));
    }

private:
    std::uint64_t state_;
};

// Sparse polynomial with exponents <= max_exp and small nonzero integer
// coefficients; with in_m0 set, constant terms are bumped to degree 1.
inline SupportSet random_poly(SplitMix64& rng, int arity, int max_terms, int max_exp,
                              bool in_m0 = false) {
    SupportSet f(arity);
    const int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        ExponentVec e(arity);
        for (auto& x : e) x = rng.range(0, max_exp);
        if (in_m0 && total_degree(e) == 0) e[static_cast<std::size_t>(rng.below(arity))] = 1;
        std::int64_t c = rng.range(-9, 9);
        if (c == 0) c = 1;
        f.add_term(e, Rational(static_cast<long long>(c)));
    }
    if (f.is_zero()) {
        ExponentVec e(arity, 0);
        e[0] = 1;
        f.add_term(e, Rational(1));
    }
    return f;
}

// Structural extreme cases prepended to every Theorem A' corpus: the
// fitted constant saturates on these, which is what makes the fit stable
// across corpus halves.
inline std::vector<SupportSet> frame_polynomials(int arity, int max_exp) {
    std::vector<SupportSet> out;
    const std::int64_t e = max_exp;
    auto mono = [&](std::vector<std::int64_t> exps) {
        SupportSet f(arity);
        ExponentVec v(arity, 0);
        for (int i = 0; i < arity && i < static_cast<int>(exps.size()); ++i) v[i] = exps[i];
        f.add_term(v, Rational(1));
        return f;
    };
    auto axis = [&](int i, std::int64_t k) {
        std::vector<std::int64_t> v(arity, 0);
        v[i] = k;
        return v;
    };
    for (int i = 0; i < arity; ++i) {
        for (int j = 0; j < arity; ++j) {
            if (i == j) continue;
            SupportSet f(arity);
            ExponentVec a(arity, 0), b(arity, 0);
            a[i] = 1;
            b[j] = e;
            f.add_term(a, Rational(1));
            f.add_term(b, Rational(1));
            out.push_back(f);  // x_i + x_j^E
        }
    }
    {
        SupportSet f(arity);
        for (int i = 0; i < arity; ++i) {
            ExponentVec a(arity, 0);
            a[i] = 1;
            f.add_term(a, Rational(1));
        }
        out.push_back(f);  // x_1 + ... + x_m
    }
    out.push_back(mono(axis(0, 1)));
    out.push_back(mono(axis(0, e)));
    out.push_back(mono(std::vector<std::int64_t>(arity, e)));
    return out;
}

// Full-support weight vector with entries in [lo, hi] and denominator up
// to den_hi.
inline QVec random_weights(SplitMix64& rng, int arity, const Rational& lo, const Rational& hi,
                           std::int64_t den_hi = 8) {
    QVec t(arity);
    for (auto& x : t) {
        const std::int64_t den = rng.range(2, den_hi);
        const Rational span = hi - lo;
        const std::int64_t steps = rng.range(0, den);
        x = lo + span * Rational(static_cast<long long>(steps), static_cast<long>(den));
        if (x.sign() <= 0) x = lo;
    }
    return t;
}

}  // namespace monoval
