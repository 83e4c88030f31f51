#ifndef GM_FORMS_HPP
#define GM_FORMS_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gm/errors.hpp"
#include "gm/local_basis.hpp"
#include "gm/multipoly.hpp"

namespace gm {

namespace detail {

/// Sign of inserting dx_j in front of the sorted product dx_I (j not in I):
/// (-1)^(number of indices of I below j).
inline int insertion_sign(std::uint32_t mask, unsigned j) {
    return std::popcount(mask & ((1u << j) - 1u)) % 2 ? -1 : 1;
}

/// Sign of merging dx_I ^ dx_J into sorted order (I, J disjoint).
inline int merge_sign(std::uint32_t i_mask, std::uint32_t j_mask) {
    int inversions = 0;
    for (unsigned j = 0; j < 32; ++j)
        if (j_mask & (1u << j)) inversions += std::popcount(i_mask & ~((2u << j) - 1u));
    return inversions % 2 ? -1 : 1;
}

} // namespace detail

/// Polynomial differential p-form in the variables of its coefficient ring.
/// Components are indexed by bitmasks of strictly increasing index tuples;
/// zero components are never stored.
class PolyForm {
public:
    PolyForm(std::vector<std::string> vars, int degree)
        : vars_(std::move(vars)), degree_(degree) {
        if (degree_ < 0 || degree_ > static_cast<int>(vars_.size()))
            throw DegreeOverflow("form degree out of range");
    }

    static PolyForm from_poly(const MultiPoly& g) {
        PolyForm f(g.vars(), 0);
        f.add_component(0, g);
        return f;
    }

    /// g * dx_{i1} ^ ... ^ dx_{ip} for the sorted index set held in mask.
    static PolyForm with_component(const MultiPoly& g, std::uint32_t mask) {
        PolyForm f(g.vars(), std::popcount(mask));
        f.add_component(mask, g);
        return f;
    }

    /// g * dx_0 ^ ... ^ dx_n.
    static PolyForm top(const MultiPoly& g) {
        return with_component(g, (1u << g.nvars()) - 1u);
    }

    int degree() const { return degree_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<std::uint32_t, MultiPoly>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    MultiPoly component(std::uint32_t mask) const {
        auto it = comps_.find(mask);
        return it == comps_.end() ? MultiPoly(vars_) : it->second;
    }

    void add_component(std::uint32_t mask, const MultiPoly& g) {
        if (std::popcount(mask) != degree_) throw Error("component index size != form degree");
        if (mask >= (1u << vars_.size())) throw Error("component index out of range");
        if (g.is_zero()) return;
        auto [it, inserted] = comps_.emplace(mask, g);
        if (!inserted) {
            it->second += g;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    friend PolyForm operator+(const PolyForm& a, const PolyForm& b) {
        a.check_compatible(b);
        PolyForm r = a;
        for (const auto& [m, g] : b.comps_) r.add_component(m, g);
        return r;
    }

    friend PolyForm operator-(const PolyForm& a, const PolyForm& b) {
        a.check_compatible(b);
        PolyForm r = a;
        for (const auto& [m, g] : b.comps_) r.add_component(m, -g);
        return r;
    }

    friend PolyForm operator*(const Rational& c, const PolyForm& f) {
        PolyForm r(f.vars_, f.degree_);
        if (c == 0) return r;
        for (const auto& [m, g] : f.comps_) r.comps_.emplace(m, c * g);
        return r;
    }

    friend PolyForm operator*(const MultiPoly& p, const PolyForm& f) {
        PolyForm r(f.vars_, f.degree_);
        for (const auto& [m, g] : f.comps_) r.add_component(m, p * g);
        return r;
    }

    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.vars_ == b.vars_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const PolyForm& a, const PolyForm& b) { return !(a == b); }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::string out;
        for (const auto& [m, g] : comps_) {
            if (!out.empty()) out += " + ";
            out += "(" + g.str() + ")";
            for (unsigned j = 0; j < vars_.size(); ++j)
                if (m & (1u << j)) out += "*d" + vars_[j];
        }
        return out;
    }

private:
    void check_compatible(const PolyForm& o) const {
        if (vars_ != o.vars_ || degree_ != o.degree_)
            throw Error("forms of different degree or variable list");
    }

    std::vector<std::string> vars_;
    int degree_;
    std::map<std::uint32_t, MultiPoly> comps_;
};

/// Exterior derivative; standard alternating-sum formula.
inline PolyForm exterior_d(const PolyForm& w) {
    const int n1 = static_cast<int>(w.nvars());
    if (w.degree() == n1) throw TopDegree("exterior_d of a top-degree form");
    PolyForm out(w.vars(), w.degree() + 1);
    for (const auto& [mask, g] : w.components()) {
        for (unsigned j = 0; j < w.nvars(); ++j) {
            if (mask & (1u << j)) continue;
            const MultiPoly dg = g.partial(j);
            if (dg.is_zero()) continue;
            const int sign = detail::insertion_sign(mask, j);
            out.add_component(mask | (1u << j), sign == 1 ? dg : -dg);
        }
    }
    return out;
}

/// Graded-commutative wedge product.
inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.vars() != b.vars()) throw Error("wedge of forms over different variables");
    if (a.degree() + b.degree() > static_cast<int>(a.nvars()))
        throw DegreeOverflow("wedge degree exceeds variable count");
    PolyForm out(a.vars(), a.degree() + b.degree());
    for (const auto& [ma, ga] : a.components())
        for (const auto& [mb, gb] : b.components()) {
            if (ma & mb) continue;
            const int sign = detail::merge_sign(ma, mb);
            const MultiPoly prod = ga * gb;
            out.add_component(ma | mb, sign == 1 ? prod : -prod);
        }
    return out;
}

/// df ^ w. With the fixed orientation dx_0^...^dx_n this satisfies
/// df ^ dhat_j = (-1)^j (df/dx_j) dx_0^...^dx_n.
inline PolyForm df_wedge(const MultiPoly& f, const PolyForm& w) {
    PolyForm df(f.vars(), 1);
    for (std::size_t j = 0; j < f.nvars(); ++j)
        df.add_component(1u << j, f.partial(j));
    return wedge(df, w);
}

/// dx_0 ^ ... omit j ... ^ dx_n with coefficient g.
inline PolyForm dhat(const MultiPoly& g, unsigned j) {
    const std::uint32_t full = (1u << g.nvars()) - 1u;
    return PolyForm::with_component(g, full & ~(1u << j));
}

/// Primitive of a top form: returns eta with exterior_d(eta) = w, integrating
/// the coefficient with respect to x_axis. Any two choices differ by a closed
/// form, which downstream quotients kill.
inline PolyForm integrate_top(const PolyForm& w, unsigned axis = 0) {
    const std::uint32_t full = (1u << w.nvars()) - 1u;
    if (w.degree() != static_cast<int>(w.nvars()))
        throw Error("integrate_top expects a top-degree form");
    if (axis >= w.nvars()) throw Error("integrate_top axis out of range");
    const MultiPoly g = w.component(full);
    const MultiPoly primitive = g.antiderivative(axis);
    const int sign = axis % 2 ? -1 : 1;
    return dhat(sign == 1 ? primitive : -primitive, axis);
}

/// Gelfand-Leray division of a top form by df.
struct GelfandLeray {
    PolyForm eta;        // degree-n form with df ^ eta = w - remainder * dx
    MultiPoly remainder; // Mora normal form of the coefficient of w
};

/// Writes w = df ^ eta + r * dx exactly, with r the normal form of the
/// coefficient (supported on standard monomials up to the degree bound).
/// When r = 0 the returned eta is the Gelfand-Leray form w/df.
inline GelfandLeray divide_by_df(const MultiPoly& f, const PolyForm& w,
                                 const StandardBasis& basis) {
    if (basis.f() != f) throw BasisMismatch("standard basis belongs to a different polynomial");
    if (w.degree() != static_cast<int>(w.nvars()))
        throw Error("divide_by_df expects a top-degree form");
    const std::uint32_t full = (1u << w.nvars()) - 1u;
    const MultiPoly g = w.component(full);
    if (g.is_zero()) return {PolyForm(w.vars(), w.degree() - 1), MultiPoly(w.vars())};

    const DivisionResult div = mora_normal_form(g, basis);
    const std::vector<MultiPoly> a = partial_quotients(div, basis);
    PolyForm eta(w.vars(), w.degree() - 1);
    for (unsigned j = 0; j < w.nvars(); ++j) {
        if (a[j].is_zero()) continue;
        eta = eta + dhat(j % 2 ? -a[j] : a[j], j);
    }
    return {std::move(eta), div.remainder};
}

} // namespace gm

#endif // GM_FORMS_HPP
