#pragma once

#include "jetsym/expr.hpp"

namespace jetsym {

// y = Pi(x, a, b) parametrizing solutions of y'' = F(x, y, y'); A, B invert (a, b).
struct SolutionManifold {
    SymId Pi;     // depends on (x, a, b)
    VarId x, a, b;
};

SolutionManifold solution_manifold();
ExprContext transfer_context();
// Pi differentiated along a word over {x, a, b}, e.g. "xxa".
Poly pi_d(const SolutionManifold &M, const std::string &word);

struct ABDerivatives {
    Fraction Ax, Ay, Ay1, Bx, By, By1;
};
ABDerivatives solve_AB(const SolutionManifold &M);

struct FDerivatives {
    Fraction Fx, Fy, Fy1;
};
FDerivatives transfer_F_derivatives(const SolutionManifold &M);

// F_x + Pi_x F_y + Pi_xx F_y1 - Pi_xxx as a single fraction (zero numerator expected).
Fraction lemma_defect(const SolutionManifold &M);

// Substitute a concrete Pi(x, a, b) into a fraction.
Fraction specialize(const Fraction &f, const SolutionManifold &M, const Poly &pi);

}  // namespace jetsym
