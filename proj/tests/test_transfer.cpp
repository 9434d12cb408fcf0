#include <doctest.h>

#include "jetsym/reference.hpp"

using namespace jetsym;

TEST_CASE("Cramer solutions for A and B") {
    auto M = solution_manifold();
    auto ab = solve_AB(M);
    CHECK(fraction_equal(ab.Ax, transfer_fixture("Ax")));
    CHECK(fraction_equal(ab.Ay, transfer_fixture("Ay")));
    CHECK(fraction_equal(ab.Ay1, transfer_fixture("Ay1")));
    CHECK(fraction_equal(ab.Bx, transfer_fixture("Bx")));
    CHECK(fraction_equal(ab.By, transfer_fixture("By")));
    CHECK(fraction_equal(ab.By1, transfer_fixture("By1")));
}

TEST_CASE("derivatives of F") {
    auto M = solution_manifold();
    auto F = transfer_F_derivatives(M);
    CHECK(fraction_equal(F.Fx, transfer_fixture("Fx")));
    CHECK(fraction_equal(F.Fy, transfer_fixture("Fy")));
    CHECK(fraction_equal(F.Fy1, transfer_fixture("Fy1")));
    CHECK_FALSE(fraction_equal(F.Fy, transfer_fixture("Fy1")));
}

TEST_CASE("transferred total derivative of F") {
    auto M = solution_manifold();
    Fraction d = lemma_defect(M);
    CHECK(d.num.is_zero());
}

TEST_CASE("the inverse map solves the parametrization") {
    // A_y Pi_a + B_y Pi_b = 1 and A_y Pi_xa + B_y Pi_xb = 0.
    auto M = solution_manifold();
    auto ab = solve_AB(M);
    Fraction one = ab.Ay * Fraction(pi_d(M, "a")) + ab.By * Fraction(pi_d(M, "b"));
    Fraction zero = ab.Ay * Fraction(pi_d(M, "xa")) + ab.By * Fraction(pi_d(M, "xb"));
    CHECK(fraction_equal(one, Fraction(Poly(1))));
    CHECK(is_zero(zero));
}

TEST_CASE("specialization to explicit families") {
    auto M = solution_manifold();
    auto c = transfer_context();
    auto F = transfer_F_derivatives(M);
    // Lines: y'' = 0.
    Poly lines = parse_expression("b + a*x", c);
    CHECK(is_zero(specialize(F.Fx, M, lines)));
    CHECK(is_zero(specialize(F.Fy, M, lines)));
    CHECK(is_zero(specialize(F.Fy1, M, lines)));
    // y = b + a (x + x^2): y'' = 2 y' / (1 + 2x).
    Poly fam = parse_expression("b + a*x + a*x^2", c);
    Poly den = parse_expression("1 + 2*x", c);
    CHECK(fraction_equal(specialize(F.Fy1, M, fam), Fraction(Poly(2), den)));
    CHECK(is_zero(specialize(F.Fy, M, fam)));
    CHECK(fraction_equal(specialize(F.Fx, M, fam), Fraction(Q(-4) * Poly::of_var(param("a")), den)));
}

TEST_CASE("words on the solution function") {
    auto M = solution_manifold();
    CHECK(pi_d(M, "xa") == pi_d(M, "ax"));
    CHECK_THROWS_AS(pi_d(M, "q"), Error);
}
