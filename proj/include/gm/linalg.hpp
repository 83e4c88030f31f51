#ifndef GM_LINALG_HPP
#define GM_LINALG_HPP

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "gm/errors.hpp"
#include "gm/multipoly.hpp"
#include "gm/rational.hpp"
#include "gm/series.hpp"

namespace gm {

/// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& c : a_)
            if (c != 0) return false;
        return true;
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && at(i, j) != 0) return false;
        return true;
    }

    Rational trace() const {
        Rational t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
        return t;
    }

    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
        a.check_same_shape(b);
        RationalMatrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
        return r;
    }

    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
        a.check_same_shape(b);
        RationalMatrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
        return r;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        RationalMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend RationalMatrix operator*(const Rational& c, const RationalMatrix& m) {
        RationalMatrix r = m;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) { return !(a == b); }

private:
    void check_same_shape(const RationalMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shapes differ");
    }

    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

/// m^rows == 0? (For an n x n matrix nilpotency is decided by the n-th power.)
inline bool is_nilpotent(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw NonSquare("nilpotency of a non-square matrix");
    RationalMatrix p = m;
    for (std::size_t k = 1; k < m.rows(); ++k) {
        if (p.is_zero()) return true;
        p = p * m;
    }
    return p.is_zero();
}

/// Monic characteristic polynomial det(lambda*I - M), exact, by the
/// Faddeev-LeVerrier trace recursion.
inline MultiPoly char_poly(const RationalMatrix& m, const std::string& varname = "lambda") {
    if (m.rows() != m.cols()) throw NonSquare("char_poly of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> p(n + 1, Rational(0));
    p[n] = 1;
    RationalMatrix acc = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix am = m * acc;
        const Rational c = -am.trace() / Rational(k);
        p[n - k] = c;
        acc = am;
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += c;
    }
    MultiPoly poly({varname});
    for (std::size_t i = 0; i <= n; ++i) poly.add_term({static_cast<int>(i)}, p[i]);
    return poly;
}

namespace detail {

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (Int d : {Int(2), Int(3), Int(5)}) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    Int d = 7;
    const Int trial_bound = 1000000;
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int w = 0;
    while (d <= trial_bound && d * d <= n) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
        d += wheel[w];
        w = (w + 1) % 8;
    }
    if (n == 1) return;
    std::mt19937_64 rng(0x5eed);
    if (boost::multiprecision::miller_rabin_test(n, 32, rng)) {
        ++out[n];
        return;
    }
    // Pollard rho on a composite remainder.
    while (true) {
        Int x = Int(rng()) % n, y = x, c = Int(rng()) % n + 1;
        Int g = 1;
        while (g == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            g = gcd(abs(x - y), n);
        }
        if (g != n) {
            factor_into(g, out);
            factor_into(n / g, out);
            return;
        }
    }
}

inline std::vector<Int> divisors(const Int& n) {
    std::map<Int, int> f;
    factor_into(n, f);
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : f) {
        const std::size_t base = divs.size();
        if (base > (1u << 20)) throw Error("divisor enumeration too large");
        Int pe = 1;
        for (int k = 1; k <= e; ++k) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

struct RationalRoots {
    std::vector<Rational> roots; // with multiplicity, sorted ascending
    MultiPoly cofactor;          // monic factor without rational roots (1 if split)
};

/// All rational roots, with multiplicity, of a monic univariate polynomial
/// over Q, together with the remaining root-free cofactor.
inline RationalRoots rational_roots(const MultiPoly& p) {
    if (p.nvars() != 1) throw Error("rational_roots expects a univariate polynomial");
    const int deg = p.degree();
    if (deg < 0 || p.coeff({deg}) != 1) throw Error("rational_roots expects a monic polynomial");

    std::vector<Rational> a(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) a[static_cast<std::size_t>(e[0])] = c;

    std::vector<Rational> roots;
    // Roots at zero first.
    while (a.size() > 1 && a[0] == 0) {
        roots.emplace_back(0);
        a.erase(a.begin());
    }

    if (a.size() > 1) {
        // y = L*lambda turns the polynomial into a monic integer one; its
        // rational roots are then integers dividing the constant term.
        Int lcm_den = 1;
        for (const auto& c : a) lcm_den = lcm(lcm_den, denominator(c));
        std::vector<Int> q(a.size());
        Int pw = 1; // L^(n-i) for coefficient i
        for (std::size_t i = a.size(); i-- > 0;) {
            const Rational c = a[i] * Rational(pw);
            q[i] = numerator(c) / denominator(c); // exact: denominator(a_i) | pw
            pw *= lcm_den;
        }

        const auto candidates = detail::divisors(q[0]);
        std::size_t ci = 0;
        while (ci < candidates.size() && q.size() > 1) {
            bool found = false;
            for (const Int& sign : {Int(1), Int(-1)}) {
                const Int y = sign * candidates[ci];
                // Horner evaluation and synthetic division in one pass.
                std::vector<Int> div(q.size() - 1);
                Int acc = q.back();
                for (std::size_t i = q.size() - 1; i-- > 0;) {
                    div[i] = acc;
                    acc = acc * y + q[i];
                }
                if (acc == 0) {
                    roots.push_back(make_rational(y, lcm_den));
                    q = std::move(div);
                    found = true;
                    break;
                }
            }
            if (!found) ++ci; // a repeated root must be retried before moving on
        }

        // Map the remaining integer polynomial back to lambda:
        // coefficient of lambda^i is q[i] * L^i / L^deg.
        MultiPoly cof({p.vars()[0]});
        const Int lead = pow(lcm_den, static_cast<unsigned>(q.size() - 1));
        Int back = 1;
        for (std::size_t i = 0; i < q.size(); ++i) {
            cof.add_term({static_cast<int>(i)}, make_rational(q[i] * back, lead));
            back *= lcm_den;
        }
        std::sort(roots.begin(), roots.end());
        return {std::move(roots), std::move(cof)};
    }

    std::sort(roots.begin(), roots.end());
    MultiPoly one = MultiPoly::constant({p.vars()[0]}, 1);
    return {std::move(roots), std::move(one)};
}

/// Dense matrix over truncated Laurent series in one shared variable.
class SeriesMatrix {
public:
    SeriesMatrix(std::size_t rows, std::size_t cols, Var var, long prec)
        : rows_(rows), cols_(cols), var_(var), e_(rows * cols, TruncatedSeries(var, prec)) {}

    static SeriesMatrix identity(std::size_t n, Var var, long prec) {
        SeriesMatrix m(n, n, var, prec);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = TruncatedSeries::constant(var, 1, prec);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Var var() const { return var_; }

    TruncatedSeries& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const TruncatedSeries& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
        a.check_same_shape(b);
        SeriesMatrix r = a;
        for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = r.e_[k] + b.e_[k];
        return r;
    }

    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
        a.check_same_shape(b);
        SeriesMatrix r = a;
        for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = r.e_[k] - b.e_[k];
        return r;
    }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("series matrix product shape mismatch");
        const long guard = a.min_precision() + b.min_precision(); // loose upper bound
        SeriesMatrix r(a.rows_, b.cols_, a.var_, guard);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                TruncatedSeries acc = a.at(i, 0) * b.at(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    friend std::vector<TruncatedSeries> operator*(const SeriesMatrix& a,
                                                  const std::vector<TruncatedSeries>& v) {
        if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<TruncatedSeries> r;
        r.reserve(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            TruncatedSeries acc = a.at(i, 0) * v[0];
            for (std::size_t k = 1; k < a.cols_; ++k) acc += a.at(i, k) * v[k];
            r.push_back(acc);
        }
        return r;
    }

    friend SeriesMatrix operator*(const TruncatedSeries& c, const SeriesMatrix& m) {
        SeriesMatrix r = m;
        for (auto& x : r.e_) x = c * x;
        return r;
    }

    friend SeriesMatrix operator*(const Rational& c, const SeriesMatrix& m) {
        SeriesMatrix r = m;
        for (auto& x : r.e_) x = c * x;
        return r;
    }

    SeriesMatrix derivative() const {
        SeriesMatrix r = *this;
        for (auto& x : r.e_) x = x.derivative();
        return r;
    }

    SeriesMatrix truncate(long prec) const {
        SeriesMatrix r = *this;
        for (auto& x : r.e_) x = x.truncate(std::min(prec, x.precision()));
        return r;
    }

    long min_precision() const {
        long p = e_.empty() ? 0 : e_[0].precision();
        for (const auto& x : e_) p = std::min(p, x.precision());
        return p;
    }

    /// Coefficient of var^k as a rational matrix.
    RationalMatrix coeff_matrix(long k) const {
        RationalMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).coeff(k);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Gauss elimination over the Laurent-series field with minimal-valuation
    /// pivoting. Throws NotInvertible when no nonzero pivot exists.
    SeriesMatrix inverse() const {
        if (rows_ != cols_) throw NonSquare("inverse of non-square matrix");
        SeriesMatrix a = *this;
        SeriesMatrix inv = SeriesMatrix::identity(rows_, var_, min_precision());
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = rows_;
            long best = 0;
            for (std::size_t r = col; r < rows_; ++r) {
                const auto& x = a.at(r, col);
                if (x.is_zero()) continue;
                if (pivot == rows_ || x.valuation() < best) {
                    pivot = r;
                    best = x.valuation();
                }
            }
            if (pivot == rows_) throw NotInvertible("series matrix is singular at this precision");
            if (pivot != col) {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            const TruncatedSeries pinv = a.at(col, col).invert();
            a.scale_row(col, pinv);
            inv.scale_row(col, pinv);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == col || a.at(r, col).is_zero()) continue;
                const TruncatedSeries f = a.at(r, col);
                a.sub_scaled_row(r, col, f);
                inv.sub_scaled_row(r, col, f);
            }
        }
        return inv;
    }

    TruncatedSeries determinant() const {
        if (rows_ != cols_) throw NonSquare("determinant of non-square matrix");
        SeriesMatrix a = *this;
        TruncatedSeries det = TruncatedSeries::constant(var_, 1, min_precision());
        bool flip = false;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = rows_;
            long best = 0;
            for (std::size_t r = col; r < rows_; ++r) {
                const auto& x = a.at(r, col);
                if (x.is_zero()) continue;
                if (pivot == rows_ || x.valuation() < best) {
                    pivot = r;
                    best = x.valuation();
                }
            }
            if (pivot == rows_) {
                long p = min_precision();
                for (std::size_t r = col; r < rows_; ++r)
                    p = std::min(p, a.at(r, col).precision());
                return TruncatedSeries::zero(var_, p); // zero at the honest precision
            }
            if (pivot != col) {
                a.swap_rows(pivot, col);
                flip = !flip;
            }
            det = det * a.at(col, col);
            const TruncatedSeries pinv = a.at(col, col).invert();
            for (std::size_t r = col + 1; r < rows_; ++r) {
                if (a.at(r, col).is_zero()) continue;
                const TruncatedSeries f = a.at(r, col) * pinv;
                for (std::size_t j = col; j < cols_; ++j)
                    a.at(r, j) = a.at(r, j) - f * a.at(col, j);
            }
        }
        return flip ? -det : det;
    }

    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.var_ != b.var_) return false;
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            if (a.e_[k] != b.e_[k]) return false;
        return true;
    }
    friend bool operator!=(const SeriesMatrix& a, const SeriesMatrix& b) { return !(a == b); }

private:
    void check_same_shape(const SeriesMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || var_ != o.var_)
            throw DimensionMismatch("series matrix shapes or variables differ");
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void scale_row(std::size_t i, const TruncatedSeries& f) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) = f * at(i, c);
    }
    void sub_scaled_row(std::size_t i, std::size_t j, const TruncatedSeries& f) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) = at(i, c) - f * at(j, c);
    }

    std::size_t rows_, cols_;
    Var var_;
    std::vector<TruncatedSeries> e_;
};

} // namespace gm

#endif // GM_LINALG_HPP
