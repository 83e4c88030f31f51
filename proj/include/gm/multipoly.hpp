#ifndef GM_MULTIPOLY_HPP
#define GM_MULTIPOLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gm/errors.hpp"
#include "gm/rational.hpp"

namespace gm {

/// Exponent vector of a monomial; length equals the variable count.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

/// True when a | b componentwise.
inline bool monomial_divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents monomial_quotient(const Exponents& b, const Exponents& a) {
    Exponents q(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
    return q;
}

inline Exponents monomial_product(const Exponents& a, const Exponents& b) {
    Exponents p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + b[i];
    return p;
}

inline std::string monomial_string(const std::vector<std::string>& vars, const Exponents& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

/// Exact multivariate polynomial over Q with a fixed, ordered variable list.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly zero(std::vector<std::string> vars) { return MultiPoly(std::move(vars)); }

    static MultiPoly constant(std::vector<std::string> vars, const Rational& c) {
        MultiPoly p(std::move(vars));
        p.add_term(Exponents(p.nvars(), 0), c);
        return p;
    }

    static MultiPoly monomial(std::vector<std::string> vars, Exponents e, const Rational& c) {
        MultiPoly p(std::move(vars));
        if (e.size() != p.vars_.size()) throw Error("exponent vector length mismatch");
        p.add_term(std::move(e), c);
        return p;
    }

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_coeff() const { return coeff(Exponents(nvars(), 0)); }

    void add_term(Exponents e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(monomial_product(ea, eb), ca * cb);
        return r;
    }

    friend MultiPoly operator*(const Rational& c, const MultiPoly& p) {
        MultiPoly r(p.vars_);
        if (c == 0) return r;
        for (const auto& [e, k] : p.terms_) r.terms_.emplace(e, c * k);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& p, const Rational& c) { return c * p; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Exact partial derivative with respect to variable i.
    MultiPoly partial(std::size_t i) const {
        if (i >= nvars()) throw Error("partial: variable index out of range");
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_term(std::move(d), c * Rational(e[i]));
        }
        return r;
    }

    /// Term-by-term antiderivative with respect to variable i.
    MultiPoly antiderivative(std::size_t i) const {
        if (i >= nvars()) throw Error("antiderivative: variable index out of range");
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents d = e;
            d[i] += 1;
            r.add_term(std::move(d), c / Rational(d[i]));
        }
        return r;
    }

    MultiPoly pow(long n) const {
        if (n < 0) throw Error("pow: negative exponent");
        MultiPoly acc = constant(vars_, 1);
        MultiPoly base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = (n >>= 1) ? base * base : base;
        }
        return acc;
    }

    /// Drop all terms of total degree > bound.
    MultiPoly truncate_degree(int bound) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= bound) r.terms_.emplace(e, c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            const bool unit_monomial = total_degree(e) == 0;
            if (c != 1 || unit_monomial) {
                out += to_string(c);
                if (!unit_monomial) out += "*";
            }
            if (!unit_monomial) out += monomial_string(vars_, e);
        }
        return out;
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (vars_ != o.vars_) throw Error("polynomial variable lists differ");
    }

    std::vector<std::string> vars_;
    std::map<Exponents, Rational> terms_;
};

} // namespace gm

#endif // GM_MULTIPOLY_HPP
