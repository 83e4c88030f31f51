#ifndef GM_CONNECTION_HPP
#define GM_CONNECTION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gm/errors.hpp"
#include "gm/linalg.hpp"
#include "gm/rational.hpp"
#include "gm/series.hpp"

namespace gm {

/// Formal meromorphic connection on K^dim, K = k((t)): the k-linear operator
/// v |-> v' + P v. Entry P(i,j) is the e_i-coefficient of the image of e_j.
class FormalMeromorphicConnection {
public:
    FormalMeromorphicConnection(std::vector<std::string> basis_labels, SeriesMatrix matrix)
        : labels_(std::move(basis_labels)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols()) throw NonSquare("connection matrix must be square");
        if (labels_.size() != matrix_.rows())
            throw DimensionMismatch("label count differs from dimension");
        if (matrix_.var() != Var::t) throw MixedVariable("connection matrix must be in t");
        std::set<std::string> distinct(labels_.begin(), labels_.end());
        if (distinct.size() != labels_.size()) throw Error("basis labels must be distinct");
    }

    std::size_t dim() const { return matrix_.rows(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const SeriesMatrix& matrix() const { return matrix_; }
    long precision() const { return matrix_.min_precision(); }

private:
    std::vector<std::string> labels_;
    SeriesMatrix matrix_;
};

/// The rank-one connection with zero matrix: d/dt acting on K itself.
inline FormalMeromorphicConnection trivial_connection(long prec) {
    return FormalMeromorphicConnection({"1"}, SeriesMatrix(1, 1, Var::t, prec));
}

/// Covariant derivative: v' + P v, one unit of precision spent on v'.
inline std::vector<TruncatedSeries> apply(const FormalMeromorphicConnection& conn,
                                          const std::vector<TruncatedSeries>& v) {
    if (v.size() != conn.dim()) throw DimensionMismatch("vector length differs from dimension");
    std::vector<TruncatedSeries> out = conn.matrix() * v;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i].derivative();
    return out;
}

/// Base change by an invertible G: new matrix G^-1 P G + G^-1 G'.
inline FormalMeromorphicConnection gauge(const FormalMeromorphicConnection& conn,
                                         const SeriesMatrix& g) {
    if (g.rows() != conn.dim() || g.cols() != conn.dim())
        throw DimensionMismatch("gauge matrix has wrong shape");
    const SeriesMatrix ginv = g.inverse(); // NotInvertible when singular
    SeriesMatrix p = ginv * (conn.matrix() * g) + ginv * g.derivative();
    return FormalMeromorphicConnection(conn.basis_labels(), std::move(p));
}

namespace detail {

using Column = std::vector<TruncatedSeries>;

inline bool column_is_zero(const Column& c) {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

/// Hermite-style canonical generating matrix of the R-module spanned by the
/// given columns: pivots are exact monomials t^(a_i) on the diagonal (row
/// order), entries above a pivot vanish and entries below row j are reduced
/// modulo t^(a_j). Canonical at the working precision, so lattice equality
/// is decidable by comparing matrices. Throws when the columns do not span a
/// full-rank lattice.
inline std::vector<Column> lattice_canonical_form(std::vector<Column> cols, std::size_t dim) {
    std::erase_if(cols, column_is_zero);
    std::vector<std::size_t> pivot_of_row(dim, SIZE_MAX);
    std::vector<bool> fixed(cols.size(), false);
    std::vector<long> pivot_val(dim, 0);

    for (std::size_t row = 0; row < dim; ++row) {
        std::size_t best = SIZE_MAX;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (fixed[c] || cols[c][row].is_zero()) continue;
            if (best == SIZE_MAX || cols[c][row].valuation() < cols[best][row].valuation())
                best = c;
        }
        if (best == SIZE_MAX) continue;
        const long a = cols[best][row].valuation();
        const TruncatedSeries scale = cols[best][row].invert().shift(a); // unit, makes pivot t^a
        for (auto& x : cols[best]) x = scale * x;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == best || fixed[c] || cols[c][row].is_zero()) continue;
            const TruncatedSeries q = cols[c][row].shift(-a); // valuation >= 0 by pivot choice
            for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= q * cols[best][r];
        }
        fixed[best] = true;
        pivot_of_row[row] = best;
        pivot_val[row] = a;
    }
    for (std::size_t row = 0; row < dim; ++row)
        if (pivot_of_row[row] == SIZE_MAX)
            throw Error("generators are not K-linearly independent (rank-deficient lattice)");

    std::vector<Column> basis;
    basis.reserve(dim);
    for (std::size_t row = 0; row < dim; ++row) basis.push_back(cols[pivot_of_row[row]]);

    // Reduce below-pivot entries modulo the pivot of their row.
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t j = c + 1; j < dim; ++j) {
            const TruncatedSeries& e = basis[c][j];
            if (e.is_zero()) continue;
            const TruncatedSeries q = e.shift(-pivot_val[j]).nonnegative_part();
            if (q.is_zero()) continue;
            for (std::size_t r = 0; r < dim; ++r) basis[c][r] -= q * basis[j][r];
        }
    return basis;
}

} // namespace detail

/// R-lattice in K^dim, held by its canonical generating matrix.
class Lattice {
public:
    /// Canonicalizes the given generators; throws if they are rank-deficient.
    static Lattice from_generators(const SeriesMatrix& gens) {
        std::vector<detail::Column> cols;
        for (std::size_t j = 0; j < gens.cols(); ++j) {
            detail::Column c;
            for (std::size_t i = 0; i < gens.rows(); ++i) c.push_back(gens.at(i, j));
            cols.push_back(std::move(c));
        }
        return Lattice(detail::lattice_canonical_form(std::move(cols), gens.rows()), gens.var());
    }

    /// The standard lattice R^dim.
    static Lattice standard(std::size_t dim, long prec) {
        return from_generators(SeriesMatrix::identity(dim, Var::t, prec));
    }

    std::size_t dim() const { return gens_.rows(); }
    const SeriesMatrix& generators() const { return gens_; }

    long pivot_valuation(std::size_t row) const { return gens_.at(row, row).valuation(); }

    long min_valuation() const {
        long v = 0;
        bool first = true;
        for (std::size_t i = 0; i < gens_.rows(); ++i)
            for (std::size_t j = 0; j < gens_.cols(); ++j) {
                const auto& x = gens_.at(i, j);
                if (x.is_zero()) continue;
                if (first || x.valuation() < v) v = x.valuation();
                first = false;
            }
        return v;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.gens_ == b.gens_; }
    friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

private:
    Lattice(std::vector<detail::Column> basis, Var var)
        : gens_(basis.size(), basis.size(), var, 1) {
        const std::size_t n = basis.size();
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) gens_.at(i, j) = basis[j][i];
    }

    SeriesMatrix gens_;
};

enum class Regularity { Regular, Irregular, Inconclusive };

inline std::string to_string(Regularity r) {
    switch (r) {
        case Regularity::Regular: return "regular";
        case Regularity::Irregular: return "irregular";
        default: return "inconclusive";
    }
}

struct SaturationResult {
    Lattice lattice;
    Regularity verdict;
    int steps; // iterations performed before stabilization or give-up
};

namespace detail {

inline std::vector<TruncatedSeries> t_nabla(const FormalMeromorphicConnection& conn,
                                            const std::vector<TruncatedSeries>& v) {
    std::vector<TruncatedSeries> w = apply(conn, v);
    for (auto& x : w) x = x.shift(1);
    return w;
}

} // namespace detail

/// Lattice saturation: iterate L <- L + t*nabla(L). Stabilization within the
/// step budget certifies a saturated lattice (Regular). If the budget runs
/// out, the verdict is Irregular when the minimal valuation dropped strictly
/// for the last dim consecutive steps (unbounded pole growth), else
/// Inconclusive. Both failure verdicts are bounded-precision statements, not
/// certificates.
inline SaturationResult saturate(const FormalMeromorphicConnection& conn, const Lattice& start,
                                 int max_steps) {
    if (start.dim() != conn.dim()) throw DimensionMismatch("lattice dimension mismatch");
    Lattice current = start;
    long prev_min = current.min_valuation();
    int consecutive_drops = 0;
    for (int step = 1; step <= max_steps; ++step) {
        std::vector<detail::Column> cols;
        for (std::size_t j = 0; j < current.dim(); ++j) {
            detail::Column c;
            for (std::size_t i = 0; i < current.dim(); ++i)
                c.push_back(current.generators().at(i, j));
            cols.push_back(c);
            cols.push_back(detail::t_nabla(conn, c));
        }
        Lattice next = Lattice::from_generators([&] {
            SeriesMatrix m(current.dim(), cols.size(), Var::t, 1);
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (std::size_t i = 0; i < current.dim(); ++i) m.at(i, j) = cols[j][i];
            return m;
        }());
        // Below one known coefficient past the pivots, lattice equality is
        // vacuous; stop before declaring anything.
        if (next.generators().min_precision() <= next.min_valuation())
            return {current, Regularity::Inconclusive, step};
        if (next == current) return {current, Regularity::Regular, step - 1};
        const long v = next.min_valuation();
        consecutive_drops = v < prev_min ? consecutive_drops + 1 : 0;
        prev_min = v;
        current = next;
    }
    const Regularity verdict = consecutive_drops >= static_cast<int>(conn.dim())
                                   ? Regularity::Irregular
                                   : Regularity::Inconclusive;
    return {current, verdict, max_steps};
}

inline SaturationResult saturate(const FormalMeromorphicConnection& conn, const Lattice& start) {
    return saturate(conn, start, static_cast<int>(conn.dim()) + 2);
}

/// Matrix of t*nabla on L/tL in the canonical generator basis; exact
/// rationals. Throws NotSaturated when t*nabla does not stabilize L.
inline RationalMatrix residue(const FormalMeromorphicConnection& conn, const Lattice& lat) {
    if (lat.dim() != conn.dim()) throw DimensionMismatch("lattice dimension mismatch");
    const std::size_t n = lat.dim();
    const SeriesMatrix& b = lat.generators();
    RationalMatrix res(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        detail::Column col;
        for (std::size_t i = 0; i < n; ++i) col.push_back(b.at(i, j));
        const std::vector<TruncatedSeries> w = detail::t_nabla(conn, col);
        // Forward substitution against the lower-triangular canonical basis.
        std::vector<TruncatedSeries> x;
        for (std::size_t i = 0; i < n; ++i) {
            TruncatedSeries rhs = w[i];
            for (std::size_t k = 0; k < i; ++k) rhs -= b.at(i, k) * x[k];
            const TruncatedSeries xi = rhs.shift(-lat.pivot_valuation(i));
            if (!xi.is_zero() && xi.valuation() < 0)
                throw NotSaturated("t*nabla leaves the lattice");
            x.push_back(xi);
        }
        for (std::size_t i = 0; i < n; ++i) res.at(i, j) = x[i].coeff(0);
    }
    return res;
}

/// Monodromy data derived from a residue matrix: eigenvalue rho contributes
/// the rotation number (-rho) mod 1, i.e. the monodromy eigenvalue
/// exp(-2*pi*i*rho) recorded exactly. Non-rational eigenvalues stay inside
/// the returned characteristic-polynomial cofactor.
struct MonodromyData {
    std::vector<Rational> rotation_numbers; // multiset in [0,1), ascending
    MultiPoly nonrational_factor;           // monic; degree 0 when fully split
};

inline MonodromyData monodromy_rotation_numbers(const RationalMatrix& res) {
    const RationalRoots rr = rational_roots(char_poly(res));
    MonodromyData out{{}, rr.cofactor};
    for (const auto& rho : rr.roots) out.rotation_numbers.push_back(mod_one(-rho));
    std::sort(out.rotation_numbers.begin(), out.rotation_numbers.end());
    return out;
}

} // namespace gm

#endif // GM_CONNECTION_HPP
