#include <doctest.h>

#include "jetsym/reference.hpp"

using namespace jetsym;

namespace {
bool has_theta(const Mono &m) {
    for (Atom a : m)
        if (atom_is_sym(a) && func(sym(atom_id(a)).f).name == "Theta") return true;
    return false;
}
Poly theta_free(const Poly &p) {
    Poly r;
    for (auto &[m, c] : p.terms())
        if (!has_theta(m)) r.add_term(m, c);
    return r;
}
}  // namespace

TEST_CASE("cubic test recovers the coefficient functions") {
    for (int n = 2; n <= 3; ++n) {
        GHLM g = symbolic_ghlm(n);
        auto t = cubic_test(cubic_from_ghlm(g));
        REQUIRE(t.ghlm);
        CHECK(*t.ghlm == g);
    }
}

TEST_CASE("cubic test rejects quartic and mismatched systems") {
    auto c = flat_context(2);
    SecondOrderSystem s;
    s.n = 2;
    s.set(1, 1, parse_expression("y[1]^4", c));
    s.set(1, 2, Poly());
    s.set(2, 2, Poly());
    auto t = cubic_test(s);
    CHECK_FALSE(t.ghlm);
    CHECK_FALSE(t.witness.empty());
    // y_11 = y_1^3 alone is not of the cubic template.
    s.set(1, 1, parse_expression("y[1]^3", c));
    CHECK_FALSE(cubic_test(s).ghlm);
}

TEST_CASE("compatibility leaves cubic defects") {
    GHLM g = symbolic_ghlm(2);
    auto sys = cubic_from_ghlm(g);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c) CHECK(first_jet_degree(compatibility_expand(sys, a, b, c), 2) <= 3);
}

TEST_CASE("collected defects match the four families at n = 2") {
    auto r = match_up_to_scale(collect_all(2), emit_families(2));
    CHECK_MESSAGE(r.ok, r.witness);
    CHECK(r.nonzero > 0);
}

TEST_CASE("scale detection") {
    auto c = flat_context(2);
    Poly a = parse_expression("x1 + 2*y", c);
    CHECK(scale_between(Q(-3) * a, a) == Q(-3));
    CHECK_FALSE(scale_between(a + Poly(1), a));
}

TEST_CASE("square functions against the determinant transcription") {
    auto target = derive_target_system(2);
    for (auto &f : determinant_fixtures()) {
        Poly e = det_fixture(f);
        auto y = Poly::of_var(second_jet(f.j1, f.j2));
        Poly delta = det_words(2, {{1}, {2}, {3}});
        // e = y_{j1j2} Delta + rest
        Poly rest = e - y * delta;
        CHECK_FALSE(rest.has_var(second_jet(f.j1, f.j2)));
        CHECK(fraction_equal(Fraction(-rest, delta), target.at({f.j1, f.j2})));
    }
    auto S = square_functions(2);
    for (auto &f : square_fixtures()) CHECK(fraction_equal(eval_squares(square_fixture(f), S), target.at({f.j1, f.j2})));
}

TEST_CASE("target system is cubic with square coefficients") {
    auto S = square_functions(2);
    auto a = derive_target_system(2), b = square_target_system(S);
    for (auto &[k, v] : a) CHECK(fraction_equal(v, b.at(k)));
}

TEST_CASE("quasi-inversion round trip") {
    for (int n = 2; n <= 3; ++n) {
        auto pi = quasi_inversion(n);
        CHECK(pi.size() == square_count(n));
        CHECK(square_count(n) - ghlm_count(n) == (size_t)n + 1);
        GHLM g = ghlm_from_squares(n, [&](int k, int a, int b) { return pi.at({k, std::min(a, b), std::max(a, b)}); });
        CHECK(g == symbolic_ghlm(n));
        for (int j = 1; j <= n + 1; ++j) CHECK(pi.at({j, j, j}) == Poly::of_sym(theta_sym(n, j)));
    }
}

TEST_CASE("marked terms cancel") {
    for (int n = 2; n <= 3; ++n)
        for (int j = 1; j <= n; ++j) CHECK(split_marked_terms(n, j).is_zero());
}

TEST_CASE("second auxiliary system at n = 2") {
    const int n = 2, N = 3;
    auto aux = solve_second_aux(n);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            CHECK_MESSAGE(aux.solution.at(theta_derivative(n, a, b)) == theta_reference(n, a, b), a, b);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                CHECK(theta_free(expand_compat_first(aux, a, b, c)) == compat_first_reference(n, a, b, c));
}

TEST_CASE("reduction never reports false") {
    FamilyReducer R(2);
    auto dy = [](const Poly &p) { return d_coord(p, 2, 3); };
    Poly g11 = Poly::of_sym(G_sym(2, 1, 1));
    CHECK(R.reduce(dy(g11)) != Reduction::Zero);
    CHECK(R.reduce(g11 * Poly::of_sym(H_sym(2, 1, 1, 1))) != Reduction::Zero);
    CHECK(R.reduce(Poly()) == Reduction::Zero);
    auto fam = emit_families(2);
    CHECK(R.reduce(Q(5) * fam.begin()->second) != Reduction::Inconclusive);
}
