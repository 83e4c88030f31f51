#include <catch2/catch_amalgamated.hpp>

#include "gm/linalg.hpp"
#include "helpers.hpp"

using namespace gm;
using gmtest::rand_int;
using gmtest::rand_invertible_series;
using gmtest::rand_rational;

namespace {

RationalMatrix diag2(const Rational& a, const Rational& b) {
    RationalMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

// Horner evaluation of a univariate polynomial at a matrix.
RationalMatrix eval_at(const MultiPoly& p, const RationalMatrix& m) {
    const int deg = p.degree();
    RationalMatrix acc(m.rows(), m.cols());
    for (int k = deg; k >= 0; --k) {
        acc = acc * m;
        const Rational c = p.coeff({k});
        for (std::size_t i = 0; i < m.rows(); ++i) acc.at(i, i) += c;
    }
    return acc;
}

} // namespace

TEST_CASE("char_poly on small exact matrices") {
    SECTION("diag(-1/6, 1/6) -> lambda^2 - 1/36") {
        const MultiPoly p = char_poly(diag2(make_rational(-1, 6), make_rational(1, 6)));
        CHECK(p.coeff({2}) == 1);
        CHECK(p.coeff({1}) == 0);
        CHECK(p.coeff({0}) == make_rational(-1, 36));
        const RationalRoots rr = rational_roots(p);
        REQUIRE(rr.roots.size() == 2);
        CHECK(rr.roots[0] == make_rational(-1, 6));
        CHECK(rr.roots[1] == make_rational(1, 6));
        CHECK(rr.cofactor.degree() == 0);
    }
    SECTION("zero 1x1 -> lambda, root {0}") {
        const MultiPoly p = char_poly(RationalMatrix(1, 1));
        CHECK(p.coeff({1}) == 1);
        CHECK(p.coeff({0}) == 0);
        const RationalRoots rr = rational_roots(p);
        REQUIRE(rr.roots.size() == 1);
        CHECK(rr.roots[0] == 0);
    }
    SECTION("nilpotent [[0,1],[0,0]] -> lambda^2, roots {0,0}") {
        RationalMatrix n(2, 2);
        n.at(0, 1) = 1;
        const MultiPoly p = char_poly(n);
        CHECK(p.coeff({2}) == 1);
        CHECK(p.coeff({1}) == 0);
        CHECK(p.coeff({0}) == 0);
        const RationalRoots rr = rational_roots(p);
        REQUIRE(rr.roots.size() == 2);
        CHECK(rr.roots[0] == 0);
        CHECK(rr.roots[1] == 0);
        CHECK(is_nilpotent(n));
    }
    SECTION("non-square input refuses") {
        CHECK_THROWS_AS(char_poly(RationalMatrix(2, 3)), NonSquare);
    }
}

TEST_CASE("Cayley-Hamilton on random 3x3 rational matrices") {
    for (int trial = 0; trial < 25; ++trial) {
        RationalMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = rand_rational();
        const RationalMatrix z = eval_at(char_poly(m), m);
        CHECK(z.is_zero());
    }
}

TEST_CASE("rational_roots splits off the non-rational cofactor") {
    // (lambda^2 - 2)(lambda - 1/2)(lambda + 3)
    MultiPoly p({"lambda"});
    MultiPoly l = MultiPoly::monomial({"lambda"}, {1}, 1);
    auto c = [&](const Rational& r) { return MultiPoly::constant({"lambda"}, r); };
    p = (l * l - c(2)) * (l - c(make_rational(1, 2))) * (l + c(3));
    const RationalRoots rr = rational_roots(p);
    REQUIRE(rr.roots.size() == 2);
    CHECK(rr.roots[0] == Rational(-3));
    CHECK(rr.roots[1] == make_rational(1, 2));
    CHECK(rr.cofactor == l * l - c(2));

    // Repeated roots keep multiplicity: (lambda - 2)^3
    const RationalRoots rep = rational_roots((l - c(2)) * (l - c(2)) * (l - c(2)));
    REQUIRE(rep.roots.size() == 3);
    for (const auto& r : rep.roots) CHECK(r == 2);
}

TEST_CASE("series matrix inverse and determinant") {
    SECTION("inverse round-trip on random invertible matrices") {
        for (int trial = 0; trial < 20; ++trial) {
            SeriesMatrix g(2, 2, Var::t, 8);
            g.at(0, 0) = rand_invertible_series(Var::t, 8);
            g.at(0, 1) = gmtest::rand_series(Var::t, 8);
            g.at(1, 0) = TruncatedSeries(Var::t, 8);
            g.at(1, 1) = rand_invertible_series(Var::t, 8);
            const SeriesMatrix gi = g.inverse();
            const SeriesMatrix prod = g * gi;
            CHECK(prod.at(0, 0) == TruncatedSeries::constant(Var::t, 1, 2));
            CHECK(prod.at(1, 1) == TruncatedSeries::constant(Var::t, 1, 2));
            CHECK(prod.at(0, 1).is_zero());
            CHECK(prod.at(1, 0).is_zero());
        }
    }
    SECTION("determinant multiplies pivots with the right sign") {
        SeriesMatrix m(2, 2, Var::t, 8);
        m.at(0, 1) = TruncatedSeries::constant(Var::t, 1, 8);
        m.at(1, 0) = TruncatedSeries::constant(Var::t, 1, 8);
        const TruncatedSeries det = m.determinant();
        CHECK(det.coeff(0) == -1); // swap of two basis vectors
    }
    SECTION("singular matrix refuses inversion") {
        SeriesMatrix m(2, 2, Var::t, 8);
        m.at(0, 0) = TruncatedSeries::constant(Var::t, 1, 8);
        m.at(1, 0) = TruncatedSeries::constant(Var::t, 2, 8);
        CHECK_THROWS_AS(m.inverse(), NotInvertible);
    }
}
