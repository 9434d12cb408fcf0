#include <doctest.h>

#include "gen.hpp"
#include "jetsym/fdb.hpp"
#include "jetsym/prolong.hpp"

using namespace jetsym;

TEST_CASE("parse-print-parse is a fixed point") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
        auto c = field_context(n, m);
        auto atoms = field_atoms(n, m, c);
        for (int k = 1; k <= n; ++k) {
            atoms.push_back(Poly::of_sym(field_sym(n, m, false, k)));
            atoms.push_back(Poly::of_sym(*formal_partial_sym(field_sym(n, m, false, k), yvar(m))));
        }
        atoms.push_back(Poly::of_var(yvar(m, std::vector<int>(3, n))));
        PolyGen g(100 + 10 * n + m, atoms);
        for (int it = 0; it < 100; ++it) {
            Poly p = g();
            for (bool grouped : {true, false}) {
                std::string s = to_string(p, c, {grouped});
                Poly q = parse_expression(s, c);
                CHECK_MESSAGE(q == p, s);
                CHECK(to_string(q, c, {grouped}) == s);
            }
        }
    }
}

TEST_CASE("round trip in composition naming") {
    auto c = fdb_context(2, 2);
    Poly h = fdb_oracle({2, 2, {1, 2}});
    CHECK(parse_expression(to_string(h, c), c) == h);
}

TEST_CASE("quadratic coefficient example") {
    auto c = field_context(1, 1);
    Poly a = parse_expression("y[1]^2 * (Dy(Y) - Dx(X))", c);
    Poly b = parse_expression("(Y_{y} - X_{x})*y[1]^2", c);
    CHECK(a == b);
    CHECK(prolong_inductive(generic_field(1, 1), 1).coeffs.at(yvar(1, {1})) ==
          parse_expression("Y_{x} + (Y_{y} - X_{x})*y[1] - X_{y}*y[1]^2", c));
}

TEST_CASE("renamed dependents") {
    ExprContext c(1, 2);
    c.dep_names = {"u", "v"};
    Poly p = parse_expression("2*x1*u[1] + u[1]^2", c);
    CHECK(p == Q(2) * Poly::of_var(xvar(1)) * Poly::of_var(yvar(1, {1})) + Poly::of_var(yvar(1, {1})).pow(2));
    CHECK(parse_expression("(1/4)*u[1]^2", c) == Q(1, 4) * Poly::of_var(yvar(1, {1})).pow(2));
}

TEST_CASE("repeated and powered directions agree") {
    auto c = field_context(2, 1);
    CHECK(parse_expression("Y_{x1,x1,y}", c) == parse_expression("Y_{x1^2,y}", c));
    CHECK(parse_expression("Y_{x2,x1}", c) == parse_expression("Y_{x1,x2}", c));
}

TEST_CASE("errors carry line and column") {
    ExprContext c(2, 1);
    try {
        parse_expression("1 +\n  * 2", c);
        FAIL("no throw");
    } catch (const ParseError &e) {
        CHECK(e.line == 2);
        CHECK(e.col == 3);
    }
    CHECK_THROWS_AS(parse_expression("y[3]", c), ParseError);
    CHECK_THROWS_AS(parse_expression("y[1,", c), ParseError);
    CHECK_THROWS_AS(parse_expression("(x + y", c), ParseError);
    c.implicit_funcs = false;
    CHECK_THROWS_AS(parse_expression("Foo", c), ParseError);
}

TEST_CASE("jet variable references") {
    auto c = field_context(2, 2);
    CHECK(parse_jetvar("y2[1,2]", c) == yvar(2, {1, 2}));
    CHECK(parse_jetvar("y1[2,1]", c) == yvar(1, {1, 2}));
    CHECK(var_name(yvar(2, {2, 2}), c) == "y2[2,2]");
}

TEST_CASE("latex brackets coefficients") {
    auto c = field_context(1, 1);
    Poly p = parse_expression("(Y_{y} - 2*X_{x})*y[1,1]", c);
    std::string s = to_latex(p, c);
    CHECK(s.find("\\left[") != std::string::npos);
    CHECK(s.find("y_{1,1}") != std::string::npos);
}

TEST_CASE("expression trees normalize") {
    auto c = field_context(1, 1);
    auto e = mul(add(ref_var(xvar(1)), num(2)), powe(ref_var(yvar(1)), 2));
    CHECK(normalize(*e) == parse_expression("(x + 2)*y^2", c));
    CHECK(normalize(*parse_tree("x - (y - x)", c)) == parse_expression("2*x - y", c));
}
