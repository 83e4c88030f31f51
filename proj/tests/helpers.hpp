#ifndef GM_TEST_HELPERS_HPP
#define GM_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "gm/forms.hpp"
#include "gm/multipoly.hpp"
#include "gm/rational.hpp"
#include "gm/series.hpp"

namespace gmtest {

// Deterministic RNG so failures reproduce bit-identically.
inline std::mt19937& rng() {
    static std::mt19937 gen(20240117u);
    return gen;
}

inline int rand_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline gm::Rational rand_rational() {
    const int num = rand_int(-9, 9);
    const int den = rand_int(1, 9);
    return gm::make_rational(num, den);
}

inline gm::Rational rand_nonzero_rational() {
    gm::Rational r = rand_rational();
    while (r == 0) r = rand_rational();
    return r;
}

inline gm::MultiPoly rand_poly(const std::vector<std::string>& vars, int max_deg,
                               int terms = 4) {
    gm::MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        gm::Exponents e(vars.size());
        int budget = max_deg;
        for (auto& k : e) {
            k = rand_int(0, budget);
            budget -= k;
        }
        p.add_term(std::move(e), rand_rational());
    }
    return p;
}

inline gm::TruncatedSeries rand_series(gm::Var var, long prec, long min_val = -3) {
    gm::TruncatedSeries s(var, prec);
    const long val = rand_int(static_cast<int>(min_val), 2);
    for (long k = val; k < prec; ++k)
        s += gm::TruncatedSeries::monomial(var, k, rand_rational(), prec);
    return s;
}

inline gm::TruncatedSeries rand_invertible_series(gm::Var var, long prec) {
    const long val = rand_int(-3, 2);
    gm::TruncatedSeries s = gm::TruncatedSeries::monomial(var, val, rand_nonzero_rational(), prec);
    for (long k = val + 1; k < prec; ++k)
        s += gm::TruncatedSeries::monomial(var, k, rand_rational(), prec);
    return s;
}

inline gm::PolyForm rand_form(const std::vector<std::string>& vars, int degree, int max_deg = 3) {
    gm::PolyForm f(vars, degree);
    const std::uint32_t full = (1u << vars.size()) - 1u;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (std::popcount(mask) != degree) continue;
        if (rand_int(0, 2) == 0) continue; // leave some components zero
        f.add_component(mask, rand_poly(vars, max_deg, 3));
    }
    return f;
}

} // namespace gmtest

#endif // GM_TEST_HELPERS_HPP
