// Small dense vector helpers: rational weight vectors and integer exponent
// vectors, dot products, the two supported norms (l1 / linf) and their
// duality.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoval/rational.hpp"

namespace monoval {

using QVec = std::vector<Rational>;
using ExponentVec = std::vector<std::int64_t>;

enum class Norm { L1, LInf };

inline Norm dual(Norm n) { return n == Norm::L1 ? Norm::LInf : Norm::L1; }

inline std::string norm_name(Norm n) { return n == Norm::L1 ? "l1" : "linf"; }

inline Rational norm_eval(Norm n, const QVec& v) {
    if (v.empty()) throw std::invalid_argument("norm of empty vector");
    Rational acc(0);
    for (const auto& x : v) {
        if (n == Norm::L1)
            acc += x.abs();
        else
            acc = max(acc, x.abs());
    }
    return acc;
}

inline Rational norm_eval(Norm n, const ExponentVec& v) {
    QVec q;
    q.reserve(v.size());
    for (auto x : v) q.emplace_back(static_cast<long long>(x));
    return norm_eval(n, q);
}

inline Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rational dot(const QVec& a, const ExponentVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * Rational(static_cast<long long>(b[i]));
    return acc;
}

inline std::int64_t total_degree(const ExponentVec& a) {
    std::int64_t s = 0;
    for (auto x : a) s += x;
    return s;
}

// Componentwise partial order on exponent vectors: a <= b everywhere.
inline bool divides(const ExponentVec& a, const ExponentVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("divides: arity mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline ExponentVec operator+(const ExponentVec& a, const ExponentVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent add: arity mismatch");
    ExponentVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec to_qvec(const ExponentVec& a) {
    QVec q;
    q.reserve(a.size());
    for (auto x : a) q.emplace_back(static_cast<long long>(x));
    return q;
}

inline QVec operator+(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("qvec add: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec operator-(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("qvec sub: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec operator*(const Rational& c, const QVec& a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline std::string vec_str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace monoval
