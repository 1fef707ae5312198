// Polynomial support sets: finite maps exponent -> nonzero rational
// coefficient. This is the only polynomial representation in the library;
// everything downstream (valuations, Newton polyhedra, chart pullbacks)
// consumes support sets.

#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "monoval/rational.hpp"
#include "monoval/vec.hpp"

namespace monoval {

class SupportSet {
public:
    SupportSet() : arity_(0) {}
    explicit SupportSet(int arity) : arity_(arity) {
        if (arity <= 0) throw std::invalid_argument("support set arity must be positive");
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExponentVec, Rational>& terms() const { return terms_; }

    // Adds c*x^e, merging with an existing term; exact cancellation drops
    // the term entirely.
    void add_term(const ExponentVec& e, const Rational& c) {
        if (static_cast<int>(e.size()) != arity_)
            throw std::invalid_argument("term arity mismatch");
        for (auto x : e)
            if (x < 0) throw std::invalid_argument("negative exponent");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coeff(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SupportSet& operator+=(const SupportSet& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SupportSet& operator-=(const SupportSet& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend SupportSet operator+(SupportSet a, const SupportSet& b) { return a += b; }
    friend SupportSet operator-(SupportSet a, const SupportSet& b) { return a -= b; }

    friend SupportSet operator*(const SupportSet& a, const SupportSet& b) {
        a.check_arity(b);
        SupportSet r(a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend bool operator==(const SupportSet& a, const SupportSet& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    SupportSet pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative power");
        SupportSet r(arity_);
        r.add_term(ExponentVec(arity_, 0), Rational(1));
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    // min over the support of the total degree; nullopt (= +infinity) for
    // the zero polynomial.
    std::optional<std::int64_t> min_total_degree() const {
        std::optional<std::int64_t> best;
        for (const auto& [e, c] : terms_) {
            auto d = total_degree(e);
            if (!best || d < *best) best = d;
        }
        return best;
    }

    std::optional<std::int64_t> max_total_degree() const {
        std::optional<std::int64_t> best;
        for (const auto& [e, c] : terms_) {
            auto d = total_degree(e);
            if (!best || d > *best) best = d;
        }
        return best;
    }

    // Canonical human-readable form; parse_support(serialize(f)) == f.
    std::string serialize() const;

private:
    void check_arity(const SupportSet& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("mixed arities");
    }

    int arity_;
    std::map<ExponentVec, Rational> terms_;
};

namespace detail {

inline constexpr const char* kVarNames = "xyzw";

inline int var_index(char c) {
    for (int i = 0; i < 4; ++i)
        if (kVarNames[i] == c) return i;
    return -1;
}

struct PolyParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + what);
    }

    BigInt parse_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return BigInt(std::string(text.substr(start, pos - start)));
    }

    Rational parse_coeff() {
        BigInt num = parse_integer();
        if (peek() == '/') {
            ++pos;
            BigInt den = parse_integer();
            return Rational(num, den);
        }
        return Rational(num);
    }

    // term := factor ('*' factor)*, factor := coeff | var ['^' int]
    void parse_term(int arity, Rational sign, SupportSet& out, int& max_var) {
        Rational coeff = sign;
        ExponentVec exp(arity, 0);
        bool saw_factor = false;
        while (true) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_coeff();
                saw_factor = true;
            } else if (var_index(c) >= 0) {
                int vi = var_index(c);
                if (vi >= arity) fail(std::string("variable '") + c + "' exceeds arity");
                if (vi > max_var) max_var = vi;
                ++pos;
                std::int64_t e = 1;
                if (peek() == '^') {
                    ++pos;
                    if (peek() == '-') fail("negative exponent");
                    BigInt b = parse_integer();
                    if (!b.fits_slong_p()) fail("exponent too large");
                    e = b.get_si();
                }
                exp[vi] += e;
                saw_factor = true;
            } else {
                fail("expected coefficient or variable");
            }
            if (peek() == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_factor) fail("empty term");
        out.add_term(exp, coeff);
    }
};

}  // namespace detail

// Parses the human monomial syntax, e.g. "x^2 + 3*x*y^3 - 1/2*y".
// Variables are x, y, z, w. With arity = 0 the arity is inferred from the
// highest variable that occurs (a constant polynomial infers arity 1).
inline SupportSet parse_support(std::string_view text, int arity = 0) {
    const int cap = arity > 0 ? arity : 4;
    SupportSet acc(cap);
    detail::PolyParser p{text};
    int max_var = 0;
    bool first = true;
    while (!p.eof()) {
        Rational sign(1);
        char c = p.peek();
        if (c == '+' || c == '-') {
            if (c == '-') sign = Rational(-1);
            ++p.pos;
        } else if (!first) {
            p.fail("expected '+' or '-' between terms");
        }
        p.parse_term(cap, sign, acc, max_var);
        first = false;
    }
    if (first) p.fail("empty polynomial");
    const int want = arity > 0 ? arity : max_var + 1;
    SupportSet out(want);
    for (const auto& [e, coeff] : acc.terms()) {
        ExponentVec trimmed(e.begin(), e.begin() + want);
        for (std::size_t i = want; i < e.size(); ++i)
            if (e[i] != 0) throw std::invalid_argument("variable exceeds requested arity");
        out.add_term(trimmed, coeff);
    }
    return out;
}

inline std::string SupportSet::serialize() const {
    if (arity_ > 4)
        throw std::invalid_argument("string syntax supports arity <= 4; use the JSON form");
    if (terms_.empty()) return "0*" + std::string(1, detail::kVarNames[arity_ - 1]);
    std::string s;
    for (const auto& [e, c] : terms_) {
        const bool neg = c.sign() < 0;
        const Rational a = c.abs();
        if (!s.empty())
            s += neg ? " - " : " + ";
        else if (neg)
            s += "-";
        std::string body;
        for (int i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (!body.empty()) body += "*";
            body += detail::kVarNames[i];
            if (e[i] > 1) body += "^" + std::to_string(e[i]);
        }
        if (body.empty()) {
            s += a.str();
        } else if (a == Rational(1)) {
            s += body;
        } else {
            s += a.str() + "*" + body;
        }
    }
    return s;
}

// Note "0*x" serializes the zero polynomial: the term list syntax has no
// empty production, and the parser cancels it back to the empty set.

}  // namespace monoval
