#ifndef GM_SERIES_HPP
#define GM_SERIES_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gm/errors.hpp"
#include "gm/rational.hpp"

namespace gm {

/// Formal variable of a truncated series. "t" is the base coordinate, "s" the
/// microlocal variable; the two never mix in arithmetic.
enum class Var : char { t = 't', s = 's' };

inline char var_letter(Var v) { return static_cast<char>(v); }

/// Truncated Laurent series: coefficients are exactly known for every
/// exponent below `precision`, and identically zero below `valuation`.
/// Arithmetic propagates precision pessimistically and never extends it.
class TruncatedSeries {
public:
    /// The zero series, known to be 0 modulo var^prec.
    TruncatedSeries(Var var, long prec) : var_(var), val_(prec), prec_(prec) {}

    static TruncatedSeries zero(Var var, long prec) { return TruncatedSeries(var, prec); }

    static TruncatedSeries constant(Var var, const Rational& c, long prec) {
        return monomial(var, 0, c, prec);
    }

    /// c * var^k, known to precision prec.
    static TruncatedSeries monomial(Var var, long k, const Rational& c, long prec) {
        TruncatedSeries r(var, prec);
        if (c == 0 || k >= prec) return r;
        r.val_ = k;
        r.coeffs_.assign(1, c);
        return r;
    }

    Var var() const { return var_; }
    long precision() const { return prec_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Valuation of a nonzero series; equals the precision for the zero
    /// series (all that is known is "valuation >= precision").
    long valuation() const { return val_; }

    /// Coefficient of var^k; exact for any k < precision.
    Rational coeff(long k) const {
        if (k >= prec_) throw Error("series coefficient requested beyond precision");
        if (k < val_ || k - val_ >= static_cast<long>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<std::size_t>(k - val_)];
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a) {
        TruncatedSeries r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_var(b);
        const long prec = std::min(a.prec_, b.prec_);
        const long lo = std::min(a.known_from(), b.known_from());
        TruncatedSeries r(a.var_, prec);
        if (lo >= prec) return r;
        std::vector<Rational> sum;
        sum.reserve(static_cast<std::size_t>(prec - lo));
        for (long k = lo; k < prec; ++k) sum.push_back(a.coeff(k) + b.coeff(k));
        return from_window(a.var_, lo, std::move(sum), prec);
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_var(b);
        // min(N_a + v_b, N_b + v_a); a zero factor contributes v = N.
        const long va = a.is_zero() ? a.prec_ : a.val_;
        const long vb = b.is_zero() ? b.prec_ : b.val_;
        const long prec = std::min(a.prec_ + vb, b.prec_ + va);
        TruncatedSeries r(a.var_, prec);
        if (a.is_zero() || b.is_zero()) return r;
        const long lo = va + vb;
        if (lo >= prec) return r;
        std::vector<Rational> conv(static_cast<std::size_t>(prec - lo), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                const long k = a.val_ + static_cast<long>(i) + b.val_ + static_cast<long>(j);
                if (k >= prec) break;
                conv[static_cast<std::size_t>(k - lo)] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return from_window(a.var_, lo, std::move(conv), prec);
    }

    friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
        if (c == 0) return TruncatedSeries(a.var_, a.prec_);
        TruncatedSeries r = a;
        for (auto& k : r.coeffs_) k *= c;
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) { return c * a; }

    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }

    /// Multiplicative inverse: valuation -v, precision N - 2v, so that
    /// a * invert(a) = 1 + O(var^(N-v)).
    TruncatedSeries invert() const {
        if (is_zero()) throw NotInvertible("cannot invert the zero series");
        const long rel = prec_ - val_; // number of known coefficients
        std::vector<Rational> inv(static_cast<std::size_t>(rel), Rational(0));
        const Rational lead = coeffs_[0];
        inv[0] = Rational(1) / lead;
        for (long k = 1; k < rel; ++k) {
            Rational acc(0);
            for (long i = 1; i <= k; ++i) {
                const Rational ci = i < static_cast<long>(coeffs_.size())
                                        ? coeffs_[static_cast<std::size_t>(i)]
                                        : Rational(0);
                if (ci != 0) acc += ci * inv[static_cast<std::size_t>(k - i)];
            }
            inv[static_cast<std::size_t>(k)] = -acc / lead;
        }
        return from_window(var_, -val_, std::move(inv), prec_ - 2 * val_);
    }

    /// Formal derivative; precision drops by one.
    TruncatedSeries derivative() const {
        const long prec = prec_ - 1;
        std::vector<Rational> d;
        long lo = 0;
        if (!is_zero()) {
            lo = val_ - 1;
            d.reserve(coeffs_.size());
            for (long k = val_; k < prec_; ++k) d.push_back(coeff(k) * Rational(k));
        }
        return from_window(var_, lo, std::move(d), prec);
    }

    /// Multiply by the exact monomial var^k.
    TruncatedSeries shift(long k) const {
        TruncatedSeries r = *this;
        r.val_ += k;
        r.prec_ += k;
        return r;
    }

    /// Lower the precision; refuses to extend it.
    TruncatedSeries truncate(long new_prec) const {
        if (new_prec > prec_) throw Error("truncate cannot extend precision");
        std::vector<Rational> w;
        const long lo = known_from();
        for (long k = lo; k < new_prec; ++k) w.push_back(coeff(k));
        return from_window(var_, lo, std::move(w), new_prec);
    }

    /// Keep only coefficients of exponent >= 0 (the power-series part).
    TruncatedSeries nonnegative_part() const {
        std::vector<Rational> w;
        for (long k = 0; k < prec_; ++k) w.push_back(coeff(k));
        return from_window(var_, 0, std::move(w), prec_);
    }

    /// Equality of everything both operands know: same variable and equal
    /// coefficients below the shared precision.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.var_ != b.var_) return false;
        const long prec = std::min(a.prec_, b.prec_);
        for (long k = std::min(a.known_from(), b.known_from()); k < prec; ++k)
            if (a.coeff(k) != b.coeff(k)) return false;
        return true;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
        return !(a == b);
    }

    std::string str() const {
        const char x = var_letter(var_);
        std::string out;
        for (long k = val_; k < prec_ && !is_zero(); ++k) {
            const Rational c = coeff(k);
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += to_string(c);
                continue;
            }
            if (c != 1) out += to_string(c) + "*";
            out += x;
            if (k != 1) out += "^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        out += " + O(" + std::string(1, x) + "^" + std::to_string(prec_) + ")";
        return out;
    }

private:
    static TruncatedSeries from_window(Var var, long lo, std::vector<Rational> w, long prec) {
        TruncatedSeries r(var, prec);
        std::size_t first = 0;
        while (first < w.size() && w[first] == 0) ++first;
        if (first == w.size()) return r;
        std::size_t last = w.size();
        while (last > first && w[last - 1] == 0) --last;
        r.val_ = lo + static_cast<long>(first);
        r.coeffs_.assign(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(last));
        return r;
    }

    // Lowest exponent whose coefficient is explicitly stored (for the zero
    // series this equals the precision: everything below it is known zero).
    long known_from() const { return val_; }

    void check_var(const TruncatedSeries& o) const {
        if (var_ != o.var_)
            throw MixedVariable("series variables differ: " + std::string(1, var_letter(var_)) +
                                " vs " + std::string(1, var_letter(o.var_)));
    }

    Var var_;
    long val_;
    std::vector<Rational> coeffs_;
    long prec_;
};

} // namespace gm

#endif // GM_SERIES_HPP
