#include <catch2/catch_amalgamated.hpp>

#include "gm/parser.hpp"
#include "helpers.hpp"

using namespace gm;
using gmtest::rand_int;

namespace {

MultiPoly P(const char* text) { return parse_polynomial(text); }

} // namespace

TEST_CASE("parsing the fixture polynomials") {
    SECTION("x^2 + y^3") {
        const MultiPoly f = P("x^2 + y^3");
        CHECK(f.vars() == std::vector<std::string>{"x", "y"});
        CHECK(f.coeff({2, 0}) == 1);
        CHECK(f.coeff({0, 3}) == 1);
        CHECK(f.terms().size() == 2);
    }
    SECTION("x^5+y^5+x^2*y^2") {
        const MultiPoly f = P("x^5+y^5+x^2*y^2");
        CHECK(f.coeff({5, 0}) == 1);
        CHECK(f.coeff({0, 5}) == 1);
        CHECK(f.coeff({2, 2}) == 1);
    }
    SECTION("negative exponents are grammar errors") {
        CHECK_THROWS_AS(P("x^(-1)"), ParseError);
        try {
            P("x^(-1)");
        } catch (const ParseError& e) {
            CHECK(e.position == 3);
            CHECK(e.expected.find("exponent") != std::string::npos);
        }
    }
}

TEST_CASE("grammar and precedence") {
    CHECK(P("-x^2") == Rational(-1) * P("x^2"));       // ^ binds tighter than unary -
    CHECK(P("-x*y") == Rational(-1) * P("x*y"));       // unary - binds tighter than *
    CHECK(P("x - y + y") == P("x + 0*y"));             // left associativity
    CHECK(P("2^3") == MultiPoly::constant({"x"}, 8));  // integer powers
    CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
    CHECK(P("x^(2)") == P("x^2"));
    CHECK(P("3/2*x") == make_rational(3, 2) * P("x")); // rational literal
    CHECK(P("1/2") == MultiPoly::constant({"x"}, make_rational(1, 2)));
    CHECK(P("x0*x1 + x9") == P("x0*x1 + x9"));
    CHECK(P("  x ") == P("x"));
}

TEST_CASE("parse errors carry byte offsets and expected tokens") {
    struct Case {
        const char* text;
        std::size_t pos;
    };
    for (const Case c : {Case{"x/2", 1}, Case{"x +", 3}, Case{"(x", 2}, Case{"x^", 2},
                         Case{"q+1", 0}, Case{"x*/y", 2}, Case{"", 0}, Case{"x^99999", 2}}) {
        INFO(c.text);
        try {
            P(c.text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.position == c.pos);
            CHECK(!e.expected.empty());
        }
    }
    SECTION("division is not an operator") {
        CHECK_THROWS_AS(P("x/2"), ParseError);
        CHECK_THROWS_AS(P("1/2/3"), ParseError);
    }
    SECTION("unknown variables are rejected with the allowed set") {
        try {
            P("x + foo");
        } catch (const ParseError& e) {
            CHECK(e.position == 4);
            CHECK(e.expected.find("x0..x9") != std::string::npos);
        }
    }
}

TEST_CASE("variable order is canonical") {
    CHECK(P("y + x").vars() == std::vector<std::string>{"x", "y"});
    CHECK(P("w*z*y*x").vars() == std::vector<std::string>{"x", "y", "z", "w"});
    CHECK(P("x3 + x1").vars() == std::vector<std::string>{"x1", "x3"});
    CHECK(P("42").vars() == std::vector<std::string>{"x"}); // constants live somewhere
}

TEST_CASE("parser totality under fuzzing") {
    SECTION("random byte strings never abort") {
        const std::string alphabet = "xyzw0123456789+-*^()/ .qT#";
        for (int trial = 0; trial < 500; ++trial) {
            std::string input;
            const int len = rand_int(0, 24);
            for (int i = 0; i < len; ++i)
                input += alphabet[std::size_t(rand_int(0, int(alphabet.size()) - 1))];
            try {
                (void)parse_polynomial(input);
            } catch (const ParseError& e) {
                CHECK(e.position <= input.size());
            }
        }
    }
    SECTION("random token streams never abort") {
        const std::vector<std::string> tokens{"x",  "y", "z",  "w",  "x0", "x7", "12", "3/4",
                                              "+",  "-", "*",  "^",  "(",  ")",  "^2", "^(3)",
                                              "  ", "0", "999"};
        for (int trial = 0; trial < 500; ++trial) {
            std::string input;
            const int len = rand_int(1, 12);
            for (int i = 0; i < len; ++i)
                input += tokens[std::size_t(rand_int(0, int(tokens.size()) - 1))];
            try {
                (void)parse_polynomial(input);
            } catch (const ParseError& e) {
                CHECK(e.position <= input.size());
            }
        }
    }
}
