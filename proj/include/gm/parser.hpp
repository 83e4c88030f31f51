#ifndef GM_PARSER_HPP
#define GM_PARSER_HPP

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gm/errors.hpp"
#include "gm/multipoly.hpp"
#include "gm/rational.hpp"

namespace gm {

/// Abstract syntax tree of a polynomial expression. Grammar (precedence
/// high to low: ^, unary -, *, binary +/-):
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := '-' factor | power
///   power    := atom ('^' exponent)?
///   exponent := INT | '(' INT ')'
///   atom     := INT ('/' INT)? | VAR | '(' expr ')'
/// Variables come from {x, y, z, w} and {x0..x9}. '/' only forms rational
/// literals directly after an integer; there is no division operator.
struct PolyExpr {
    enum class Kind { Literal, Variable, Negate, Add, Sub, Mul, Pow };
    Kind kind = Kind::Literal;
    Rational literal;
    std::string name;
    long exponent = 0;
    std::vector<PolyExpr> kids;
};

namespace detail {

inline const std::set<std::string>& allowed_variables() {
    static const std::set<std::string> names = [] {
        std::set<std::string> s{"x", "y", "z", "w"};
        for (int i = 0; i <= 9; ++i) s.insert("x" + std::to_string(i));
        return s;
    }();
    return names;
}

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    PolyExpr parse() {
        PolyExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("operator or end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(pos_, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    PolyExpr expr() {
        PolyExpr left = term();
        while (true) {
            if (eat('+')) {
                PolyExpr node;
                node.kind = PolyExpr::Kind::Add;
                node.kids = {std::move(left), term()};
                left = std::move(node);
            } else if (eat('-')) {
                PolyExpr node;
                node.kind = PolyExpr::Kind::Sub;
                node.kids = {std::move(left), term()};
                left = std::move(node);
            } else {
                return left;
            }
        }
    }

    PolyExpr term() {
        PolyExpr left = factor();
        while (eat('*')) {
            PolyExpr node;
            node.kind = PolyExpr::Kind::Mul;
            node.kids = {std::move(left), factor()};
            left = std::move(node);
        }
        return left;
    }

    PolyExpr factor() {
        if (eat('-')) {
            PolyExpr node;
            node.kind = PolyExpr::Kind::Negate;
            node.kids = {factor()};
            return node;
        }
        return power();
    }

    PolyExpr power() {
        PolyExpr base = atom();
        if (!eat('^')) return base;
        const bool parenthesized = eat('(');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("non-negative integer exponent");
        const long e = read_small_integer();
        if (parenthesized && !eat(')')) fail("')'");
        PolyExpr node;
        node.kind = PolyExpr::Kind::Pow;
        node.exponent = e;
        node.kids = {std::move(base)};
        return node;
    }

    PolyExpr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("number, variable or '('");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const Int num = read_integer();
            PolyExpr node;
            node.kind = PolyExpr::Kind::Literal;
            if (eat('/')) {
                skip_ws();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("positive integer denominator");
                const Int den = read_integer();
                if (den == 0) fail("nonzero denominator");
                node.literal = make_rational(num, den);
            } else {
                node.literal = Rational(num);
            }
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name(1, c);
            ++pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                name += text_[pos_++];
            if (!detail::allowed_variables().count(name)) {
                pos_ -= name.size();
                fail("variable name from {x, y, z, w, x0..x9}");
            }
            PolyExpr node;
            node.kind = PolyExpr::Kind::Variable;
            node.name = std::move(name);
            return node;
        }
        if (c == '(') {
            ++pos_;
            PolyExpr inner = expr();
            if (!eat(')')) fail("')'");
            return inner;
        }
        fail("number, variable or '('");
    }

    Int read_integer() {
        Int v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return v;
    }

    long read_small_integer() {
        const std::size_t start = pos_;
        const Int v = read_integer();
        if (v > 9999) {
            pos_ = start;
            fail("exponent at most 9999");
        }
        return static_cast<long>(v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void collect_variables(const PolyExpr& e, std::set<std::string>& out) {
    if (e.kind == PolyExpr::Kind::Variable) out.insert(e.name);
    for (const auto& k : e.kids) collect_variables(k, out);
}

inline MultiPoly eval_expr(const PolyExpr& e, const std::vector<std::string>& vars) {
    switch (e.kind) {
        case PolyExpr::Kind::Literal:
            return MultiPoly::constant(vars, e.literal);
        case PolyExpr::Kind::Variable: {
            Exponents exps(vars.size(), 0);
            const auto it = std::find(vars.begin(), vars.end(), e.name);
            exps[static_cast<std::size_t>(it - vars.begin())] = 1;
            return MultiPoly::monomial(vars, std::move(exps), 1);
        }
        case PolyExpr::Kind::Negate:
            return -eval_expr(e.kids[0], vars);
        case PolyExpr::Kind::Add:
            return eval_expr(e.kids[0], vars) + eval_expr(e.kids[1], vars);
        case PolyExpr::Kind::Sub:
            return eval_expr(e.kids[0], vars) - eval_expr(e.kids[1], vars);
        case PolyExpr::Kind::Mul:
            return eval_expr(e.kids[0], vars) * eval_expr(e.kids[1], vars);
        case PolyExpr::Kind::Pow:
            return eval_expr(e.kids[0], vars).pow(e.exponent);
    }
    throw Error("unreachable expression kind");
}

} // namespace detail

/// Parse a polynomial expression; totality: any input either yields an AST
/// or a positioned ParseError.
inline PolyExpr parse_poly(std::string_view text) {
    return detail::ExprParser(text).parse();
}

/// Variables of the expression in canonical order (x < y < z < w < x0..x9).
inline std::vector<std::string> expression_variables(const PolyExpr& e) {
    std::set<std::string> present;
    detail::collect_variables(e, present);
    std::vector<std::string> canon{"x", "y", "z", "w"};
    for (int i = 0; i <= 9; ++i) canon.push_back("x" + std::to_string(i));
    std::vector<std::string> out;
    for (const auto& v : canon)
        if (present.count(v)) out.push_back(v);
    return out;
}

/// Exact evaluation to a polynomial over the expression's own variables.
inline MultiPoly to_multipoly(const PolyExpr& e) {
    std::vector<std::string> vars = expression_variables(e);
    if (vars.empty()) vars = {"x"}; // constant input still needs a ring
    return detail::eval_expr(e, vars);
}

inline MultiPoly parse_polynomial(std::string_view text) {
    return to_multipoly(parse_poly(text));
}

} // namespace gm

#endif // GM_PARSER_HPP
