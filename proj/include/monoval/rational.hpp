// Exact rational scalar type backed by GMP.
//
// Every scalar in the library (weights, chi values, covolumes, fitted
// constants) is a Rational; there is no floating point anywhere in the
// computational core.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monoval {

using BigInt = mpz_class;

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(n) {}
    Rational(long long n) : q_(BigInt(std::to_string(n))) {}
    Rational(BigInt n) : q_(std::move(n)) {}
    Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(text)));
            BigInt num(std::string(text.substr(0, slash)));
            BigInt den(std::string(text.substr(slash + 1)));
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
    }

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational abs() const { return Rational(::abs(q_)); }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return r;
    }
    // Smallest integer >= value.
    BigInt ceil() const {
        BigInt r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return r;
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    // Canonical "p" or "p/q" form.
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    double to_double() const { return q_.get_d(); }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

// Optional-as-infinity: nullopt stands for +infinity (value of the zero
// polynomial under any valuation).
using RationalOrInf = std::optional<Rational>;

inline RationalOrInf min_or_inf(const RationalOrInf& a, const RationalOrInf& b) {
    if (!a) return b;
    if (!b) return a;
    return min(*a, *b);
}

inline std::string str_or_inf(const RationalOrInf& v) {
    return v ? v->str() : std::string("inf");
}

}  // namespace monoval
