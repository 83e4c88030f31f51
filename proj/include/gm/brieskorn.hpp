#ifndef GM_BRIESKORN_HPP
#define GM_BRIESKORN_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gm/connection.hpp"
#include "gm/errors.hpp"
#include "gm/forms.hpp"
#include "gm/linalg.hpp"
#include "gm/local_basis.hpp"
#include "gm/series.hpp"

namespace gm {

/// Everything a Brieskorn-lattice computation needs: the polynomial, its
/// certified standard basis, the Milnor data, and the coordinate lookup for
/// the monomial basis {m_i * dx}.
struct BrieskornContext {
    MultiPoly f;
    StandardBasis basis;
    SingularityReport report;
    std::map<Exponents, std::size_t> coordinate_of;

    BrieskornContext(MultiPoly f_, StandardBasis basis_, SingularityReport report_)
        : f(std::move(f_)), basis(std::move(basis_)), report(std::move(report_)) {
        for (std::size_t i = 0; i < report.basis_monomials.size(); ++i)
            coordinate_of.emplace(report.basis_monomials[i], i);
    }
};

using ContextPtr = std::shared_ptr<const BrieskornContext>;

/// Builds the context; throws NotSingular / NonIsolated as appropriate.
inline ContextPtr make_context(const MultiPoly& f, int degree_bound) {
    StandardBasis basis = jacobian_std_basis(f, degree_bound);
    SingularityReport report = milnor_number(basis);
    return std::make_shared<const BrieskornContext>(f, std::move(basis), std::move(report));
}

namespace detail {

inline void check_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return;
    if (!a || !b || a->f != b->f || !(a->report == b->report))
        throw BasisMismatch("operands come from different Brieskorn contexts");
}

} // namespace detail

/// Class of a top form in the Brieskorn lattice: a length-mu coordinate
/// vector over truncated series in the microlocal variable s.
struct BrieskornElement {
    ContextPtr ctx;
    std::vector<TruncatedSeries> coords; // variable s, shared precision

    long precision() const {
        long p = coords.empty() ? 0 : coords[0].precision();
        for (const auto& c : coords) p = std::min(p, c.precision());
        return p;
    }

    friend bool operator==(const BrieskornElement& a, const BrieskornElement& b) {
        detail::check_same_context(a.ctx, b.ctx);
        return a.coords == b.coords;
    }
    friend bool operator!=(const BrieskornElement& a, const BrieskornElement& b) {
        return !(a == b);
    }
};

/// Matrix of the t-action (multiplication by f) on the Brieskorn lattice in
/// the monomial basis; column j is reduce_to_basis(f * m_j * dx).
struct TMatrix {
    ContextPtr ctx;
    SeriesMatrix matrix; // variable s
};

/// Reduce the class of a top form to basis coordinates. Iterates the
/// division-and-differentiate loop: write g_k = sum_j a_j df/dx_j + r_k, emit
/// the coordinates of r_k at order s^k, and continue with
/// g_{k+1} = sum_j da_j/dx_j, which represents the class divided by s.
/// The result equals the class of the input modulo s^prec and modulo
/// degree-bound truncation effects (the stability check guards the latter).
inline BrieskornElement reduce_to_basis(const PolyForm& omega, const ContextPtr& ctx,
                                        long prec) {
    const std::uint32_t full = (1u << omega.nvars()) - 1u;
    if (omega.degree() != static_cast<int>(omega.nvars()))
        throw Error("reduce_to_basis expects a top-degree form");
    const int bound = ctx->basis.degree_bound();

    BrieskornElement out{ctx, std::vector<TruncatedSeries>(
                                  static_cast<std::size_t>(ctx->report.mu),
                                  TruncatedSeries::zero(Var::s, prec))};
    MultiPoly g = omega.component(full);
    for (long k = 0; k < prec && !g.is_zero(); ++k) {
        const DivisionResult div = mora_normal_form(g, ctx->basis);
        for (const auto& [e, c] : div.remainder.terms()) {
            if (total_degree(e) > bound) continue; // unreduced truncation tail
            const auto it = ctx->coordinate_of.find(e);
            if (it == ctx->coordinate_of.end())
                throw Error("normal form left a non-standard monomial");
            out.coords[it->second] += TruncatedSeries::monomial(Var::s, k, c, prec);
        }
        const std::vector<MultiPoly> a = partial_quotients(div, ctx->basis);
        MultiPoly next(g.vars());
        for (std::size_t j = 0; j < a.size(); ++j) next += a[j].partial(j);
        // Terms past the certified bound are cut under the same truncation
        // contract as the division's parked remainder tail.
        g = next.truncate_degree(bound);
    }
    return out;
}

/// The t-action matrix T(s). For quasi-homogeneous f this equals
/// s * diag(alpha_i) exactly, with alpha_i = sum_k (e_k(m_i)+1) w_k.
inline TMatrix t_matrix(const ContextPtr& ctx, long prec) {
    const std::size_t mu = static_cast<std::size_t>(ctx->report.mu);
    SeriesMatrix m(mu, mu, Var::s, prec);
    for (std::size_t j = 0; j < mu; ++j) {
        const MultiPoly mono =
            MultiPoly::monomial(ctx->f.vars(), ctx->report.basis_monomials[j], 1);
        const BrieskornElement col = reduce_to_basis(PolyForm::top(ctx->f * mono), ctx, prec);
        for (std::size_t i = 0; i < mu; ++i) m.at(i, j) = col.coords[i];
    }
    return {ctx, std::move(m)};
}

/// The t-action on coordinate vectors: c(s) |-> T(s) c(s) + s^2 c'(s).
/// (The operator identity t s - s t = s^2 in coordinates.) Precision drops
/// by one.
inline BrieskornElement microlocal_apply(const TMatrix& t, const BrieskornElement& c) {
    detail::check_same_context(t.ctx, c.ctx);
    const long prec = std::min(t.matrix.min_precision(), c.precision()) - 1;
    std::vector<TruncatedSeries> out = t.matrix * c.coords;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += c.coords[i].derivative().shift(2);
    for (auto& x : out) x = x.truncate(std::min(prec, x.precision()));
    return {c.ctx, std::move(out)};
}

/// Multiplication by s at the form level: s*[w] = [df ^ primitive(w)], any
/// primitive axis. Two axes give the same class; reduce_to_basis of the
/// result must agree with the coordinate-level s-shift.
inline PolyForm s_multiply_form(const PolyForm& omega, const ContextPtr& ctx, unsigned axis = 0) {
    return df_wedge(ctx->f, integrate_top(omega, axis));
}

/// Weighted degrees alpha_i = sum_k (e_k(m_i)+1) w_k of the basis monomial
/// forms; defined only in the quasi-homogeneous case.
inline std::vector<Rational> qh_exponents(const SingularityReport& report) {
    if (!report.weights) throw NotQuasiHomogeneous("f has no quasi-homogeneous weights");
    std::vector<Rational> alphas;
    alphas.reserve(report.basis_monomials.size());
    for (const auto& e : report.basis_monomials) {
        Rational a(0);
        for (std::size_t k = 0; k < e.size(); ++k)
            a += Rational(e[k] + 1) * (*report.weights)[k];
        alphas.push_back(a);
    }
    return alphas;
}

/// Exact Gauss-Manin connection in the quasi-homogeneous case: from
/// t u_i = alpha_i s u_i and the Leibniz rule, t d/dt acts on the basis form
/// u_i = m_i dx by alpha_i - 1, so the matrix is diag((alpha_i - 1)/t).
inline FormalMeromorphicConnection gm_connection_qh(const ContextPtr& ctx, long prec_t) {
    const std::vector<Rational> alphas = qh_exponents(ctx->report);
    const std::size_t mu = alphas.size();
    SeriesMatrix m(mu, mu, Var::t, prec_t);
    std::vector<std::string> labels;
    labels.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        m.at(i, i) = TruncatedSeries::monomial(Var::t, -1, alphas[i] - 1, prec_t);
        labels.push_back(monomial_string(ctx->report.vars, ctx->report.basis_monomials[i]) +
                         "*dx");
    }
    return FormalMeromorphicConnection(std::move(labels), std::move(m));
}

/// First-order shadow of the spectrum: T(s) = A0 + A1 s + O(s^2). A0
/// represents multiplication by the normal form of f in the Milnor algebra
/// and must be nilpotent; the exponent list (eigenvalues of A1) is reported
/// only when A0 = 0, i.e. on the quasi-homogeneous path.
struct SpectralFirstOrder {
    RationalMatrix a0;
    RationalMatrix a1;
    bool a0_nilpotent;
    std::optional<std::vector<Rational>> exponents; // ascending, with multiplicity
    MultiPoly exponent_cofactor;                    // non-rational part, 1 when split
};

inline SpectralFirstOrder spectral_first_order(const TMatrix& t) {
    if (t.matrix.min_precision() < 2)
        throw Error("spectral_first_order needs precision >= 2");
    RationalMatrix a0 = t.matrix.coeff_matrix(0);
    RationalMatrix a1 = t.matrix.coeff_matrix(1);
    SpectralFirstOrder out{a0, a1, is_nilpotent(a0), std::nullopt,
                           MultiPoly::constant({"lambda"}, 1)};
    if (a0.is_zero()) {
        RationalRoots rr = rational_roots(char_poly(a1));
        out.exponents = std::move(rr.roots);
        out.exponent_cofactor = std::move(rr.cofactor);
    }
    return out;
}

} // namespace gm

#endif // GM_BRIESKORN_HPP
