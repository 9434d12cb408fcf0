#include "jetsym/transfer.hpp"

namespace jetsym {

SolutionManifold solution_manifold() {
    VarId x = xvar(1), a = param("a"), b = param("b");
    return {fsym("Pi", {}, {x, a, b}), x, a, b};
}

ExprContext transfer_context() {
    ExprContext c(1, 1);
    c.declare_param("a");
    c.declare_param("b");
    c.declare("Pi", {xvar(1), param("a"), param("b")});
    c.implicit_funcs = false;
    return c;
}

Poly pi_d(const SolutionManifold &M, const std::string &word) {
    SymId s = M.Pi;
    for (char ch : word) {
        VarId v = ch == 'x' ? M.x : ch == 'a' ? M.a : ch == 'b' ? M.b : throw Error("pi_d: bad letter");
        s = *formal_partial_sym(s, v);
    }
    return Poly::of_sym(s);
}

// Differentiating y = Pi(x,A,B), y1 = Pi_x(x,A,B) in v gives
//   [Pi_a Pi_b; Pi_xa Pi_xb] [A_v; B_v] = [r1; r2].
// With den = Pi_b Pi_xa - Pi_a Pi_xb:
//   A_v = (Pi_b r2 - Pi_xb r1)/den,  B_v = (Pi_xa r1 - Pi_a r2)/den.
namespace {
std::pair<Poly, Poly> cramer(const SolutionManifold &M, const Poly &r1, const Poly &r2) {
    Poly A = pi_d(M, "b") * r2 - pi_d(M, "xb") * r1;
    Poly B = pi_d(M, "xa") * r1 - pi_d(M, "a") * r2;
    return {A, B};
}
Poly den(const SolutionManifold &M) { return pi_d(M, "b") * pi_d(M, "xa") - pi_d(M, "a") * pi_d(M, "xb"); }
}  // namespace

ABDerivatives solve_AB(const SolutionManifold &M) {
    Poly d = den(M);
    auto [Ax, Bx] = cramer(M, -pi_d(M, "x"), -pi_d(M, "xx"));
    auto [Ay, By] = cramer(M, Poly(1), Poly());
    auto [Ap, Bp] = cramer(M, Poly(), Poly(1));
    return {Fraction(Ax, d), Fraction(Ay, d), Fraction(Ap, d), Fraction(Bx, d), Fraction(By, d), Fraction(Bp, d)};
}

FDerivatives transfer_F_derivatives(const SolutionManifold &M) {
    // F = Pi_xx(x, A, B)
    auto ab = solve_AB(M);
    Poly d = den(M), a3 = pi_d(M, "xxa"), b3 = pi_d(M, "xxb");
    auto comb = [&](const Fraction &A, const Fraction &B, const Poly &explicit_part) {
        return Fraction(explicit_part * d + a3 * A.num + b3 * B.num, d);
    };
    return {comb(ab.Ax, ab.Bx, pi_d(M, "xxx")), comb(ab.Ay, ab.By, Poly()), comb(ab.Ay1, ab.By1, Poly())};
}

Fraction lemma_defect(const SolutionManifold &M) {
    auto F = transfer_F_derivatives(M);
    return F.Fx + Fraction(pi_d(M, "x")) * F.Fy + Fraction(pi_d(M, "xx")) * F.Fy1 - Fraction(pi_d(M, "xxx"));
}

Fraction specialize(const Fraction &f, const SolutionManifold &M, const Poly &pi) {
    std::map<FuncId, Poly> fn{{sym(M.Pi).f, pi}};
    return Fraction(instantiate(f.num, fn), instantiate(f.den, fn));
}

}  // namespace jetsym
