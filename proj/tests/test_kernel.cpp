#include <doctest.h>

#include "gen.hpp"
#include "jetsym/prolong.hpp"

using namespace jetsym;

namespace {
ExprContext ctx11() { return field_context(1, 1); }
}  // namespace

TEST_CASE("ring axioms on random polynomials") {
    auto c = ctx11();
    PolyGen g(11, field_atoms(1, 1, c));
    for (int it = 0; it < 200; ++it) {
        Poly a = g(), b = g(), d = g();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + d == a + (b + d));
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
        CHECK((a - a).is_zero());
        CHECK(a * Poly(1) == a);
        CHECK((a * Poly()).is_zero());
    }
}

TEST_CASE("partials: Leibniz and Schwarz") {
    auto c = ctx11();
    PolyGen g(12, field_atoms(1, 1, c));
    VarId x = xvar(1), y = yvar(1), y1 = yvar(1, {1});
    for (int it = 0; it < 200; ++it) {
        Poly a = g(), b = g();
        for (VarId v : {x, y, y1}) CHECK((a * b).partial(v) == a.partial(v) * b + a * b.partial(v));
        CHECK(a.partial(x).partial(y) == a.partial(y).partial(x));
        CHECK(a.partial(x).partial(y1) == a.partial(y1).partial(x));
    }
}

TEST_CASE("formal partials of symbols are interned and symmetric") {
    SymId X = field_sym(2, 1, false, 1);
    auto a = formal_partial_sym(*formal_partial_sym(X, xvar(1)), xvar(2));
    auto b = formal_partial_sym(*formal_partial_sym(X, xvar(2)), xvar(1));
    REQUIRE(a);
    CHECK(*a == *b);
    CHECK_FALSE(formal_partial_sym(X, yvar(1, {1})));
    CHECK(depends_on(X, yvar(1)));
}

TEST_CASE("pow and constants") {
    auto c = ctx11();
    Poly p = parse_expression("x + 2*y", c);
    CHECK(p.pow(3) == p * p * p);
    CHECK(p.pow(0) == Poly(1));
    CHECK(Poly(Q(3, 4)).is_constant());
    CHECK(Poly(Q(3, 4)).constant_term() == Q(3, 4));
}

TEST_CASE("substitute and instantiate") {
    auto c = ctx11();
    Poly p = parse_expression("y[1]^2 + x*y[1]", c);
    Poly s = substitute(p, {{yvar(1, {1}), parse_expression("x", c)}});
    CHECK(s == parse_expression("2*x^2", c));

    Poly q = parse_expression("X_{x} + Y_{y}*y[1]", c);
    std::map<FuncId, Poly> fn{{sym(field_sym(1, 1, false, 1)).f, parse_expression("x^2", c)},
                              {sym(field_sym(1, 1, true, 1)).f, parse_expression("x*y", c)}};
    CHECK(instantiate(q, fn) == parse_expression("2*x + x*y[1]", c));
}

TEST_CASE("substitution into a dependent symbol throws") {
    auto c = ctx11();
    Poly p = parse_expression("X", c);
    CHECK_THROWS_AS(substitute(p, {{xvar(1), Poly(1)}}), Error);
}

TEST_CASE("collect and degree") {
    auto c = ctx11();
    Poly p = parse_expression("X*y[1]^2 + Y*y[1]^2 + x*y[1] + 3", c);
    auto sel = [](VarId v) { return is_jet(v); };
    auto parts = collect(p, sel);
    CHECK(parts.size() == 3);
    CHECK(parts.at({var_atom(yvar(1, {1})), var_atom(yvar(1, {1}))}) == parse_expression("X + Y", c));
    CHECK(degree_in(p, sel) == 2);
    CHECK(degree_in(Poly(), sel) == -1);
}

TEST_CASE("fractions: equality by cross multiplication") {
    auto c = ctx11();
    PolyGen g(13, field_atoms(1, 1, c));
    for (int it = 0; it < 50; ++it) {
        Poly a = g(), b = g() + Poly(1), k = g() + Poly(2);
        if (b.is_zero() || k.is_zero()) continue;
        Fraction f(a, b);
        CHECK(fraction_equal(f, Fraction(a * k, b * k)));
        CHECK(is_zero(f - f));
        CHECK(fraction_equal(f * Fraction(b, Poly(1)), Fraction(a)));
        CHECK(fraction_equal((f + Fraction(Poly(1))) - Fraction(Poly(1)), f));
    }
    CHECK_THROWS_AS(Fraction(Poly(1), Poly()), Error);
}

TEST_CASE("exact linear algebra") {
    std::vector<std::vector<Q>> A = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank(A) == 2);
    auto x = solve_linear(A, {6, 12, 2});
    REQUIRE(x);
    for (size_t r = 0; r < 3; ++r) {
        Q s = 0;
        for (size_t k = 0; k < 3; ++k) s += A[r][k] * (*x)[k];
        CHECK(s == std::vector<Q>{6, 12, 2}[r]);
    }
    CHECK_FALSE(solve_linear(A, {6, 13, 2}));
    std::vector<std::vector<Q>> B = {{Q(1, 3), Q(1, 2)}, {Q(1, 5), Q(1, 7)}};
    auto z = solve_linear(B, {1, 1});
    REQUIRE(z);
    CHECK((*z)[0] * Q(1, 3) + (*z)[1] * Q(1, 2) == 1);
    CHECK((*z)[0] * Q(1, 5) + (*z)[1] * Q(1, 7) == 1);
}
