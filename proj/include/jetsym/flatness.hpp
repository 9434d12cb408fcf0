#pragma once

#include "jetsym/expr.hpp"
#include "jetsym/jet.hpp"

namespace jetsym {

// Second-order systems y_{x^j1 x^j2} = F^{j1,j2}(x, y, y_1..y_n), one unknown y.
struct SecondOrderSystem {
    int n = 2;
    std::map<std::pair<int, int>, Poly> rhs;  // keys j1 <= j2
    std::vector<VarId> constraints;           // lower-order equations carried along, if any

    const Poly &at(int j1, int j2) const;
    void set(int j1, int j2, Poly p);
};

// Coordinates with the convention x^{n+1} = y.
VarId flat_coord(int n, int c);
VarId first_jet(int k);
VarId second_jet(int a, int b);
Poly d_coord(const Poly &p, int n, int c);

// Named functions of (x^1..x^n, y).
SymId G_sym(int n, int j1, int j2);
SymId H_sym(int n, int k, int j1, int j2);
SymId L_sym(int n, int k, int j);
SymId M_sym(int n, int k);
SymId theta_sym(int n, int j);            // j = 1..n+1
SymId pi_sym(int n, int k, int a, int b);  // a, b, k = 1..n+1
SymId square_sym(int n, int k, int a, int b);
ExprContext flat_context(int n);

struct GHLM {
    int n = 2;
    std::map<std::vector<int>, Poly> G, H, L, M;  // {j1<=j2}, {k,j1<=j2}, {k,j}, {k}

    const Poly &g(int j1, int j2) const;
    const Poly &h(int k, int j1, int j2) const;
    const Poly &l(int k, int j) const;
    const Poly &m(int k) const;
    bool operator==(const GHLM &o) const { return n == o.n && G == o.G && H == o.H && L == o.L && M == o.M; }
};

GHLM symbolic_ghlm(int n);
// Cubic template: G + sum_k y_k (H^k + y_j1 L^k_j2 / 2 + y_j2 L^k_j1 / 2 + y_j1 y_j2 M^k).
SecondOrderSystem cubic_from_ghlm(const GHLM &g);
Poly cubic_entry(const GHLM &g, int j1, int j2);

struct CubicTest {
    std::optional<GHLM> ghlm;
    std::string witness;  // first violation when absent
};
CubicTest cubic_test(const SecondOrderSystem &sys, const ExprContext *names = nullptr);
// Builds the second-order system carried by a skeleton (entries y[j1,j2] only).
SecondOrderSystem second_order_part(const PDESystem &sys);

// ---- compatibility --------------------------------------------------------

// D_j = d/dx^j + y_j d/dy + sum_l F^{j,l} d/dy_l
Poly total_D(const SecondOrderSystem &sys, int j, const Poly &p);
Poly compatibility_expand(const SecondOrderSystem &sys, int j1, int j2, int j3);
int first_jet_degree(const Poly &p, int n);

// Equation keys: {family, j1, j2, j3, k...} with k sorted; family 0..3 = (I')..(IV').
using FamilyKey = std::vector<int>;
using FamilyMap = std::map<FamilyKey, Poly>;

// Symmetrized jet coefficients of one defect: degree d part times d!.
FamilyMap collect_symmetric(const Poly &defect, int n, int j1, int j2, int j3);
FamilyMap collect_all(int n);
FamilyMap emit_families(int n);

struct ScaleMatch {
    bool ok = true;
    size_t nonzero = 0, zero = 0;
    std::map<std::string, size_t> scales;  // ratio -> count
    std::string witness;
};
std::optional<Q> scale_between(const Poly &a, const Poly &b);  // a = s b
ScaleMatch match_up_to_scale(const FamilyMap &a, const FamilyMap &b);

// ---- square functions -----------------------------------------------------

// X^1..X^n, Y as functions of (x, y); row r = 1..n+1.
SymId transform_sym(int n, int r);
// Determinant of the matrix whose column c differentiates every row along words[c].
Poly det_words(int n, const std::vector<std::vector<int>> &words);
struct SquareFns {
    int n = 2;
    Poly delta;
    std::map<std::vector<int>, Poly> num;  // {k, a<=b}
    const Poly &numerator(int k, int a, int b) const;
    Fraction at(int k, int a, int b) const { return Fraction(numerator(k, a, b), delta); }
};
SquareFns square_functions(int n);

using SquareFn = std::function<Poly(int k, int a, int b)>;
GHLM ghlm_from_squares(int n, const SquareFn &sq);
// Formal square symbols Sq{k,a,b}.
Poly formal_square(int n, int k, int a, int b);

// y_{j1 j2} solved from D_k(D_i X) . Y_X - D_k(D_i Y) = 0, keys j1 <= j2.
std::map<std::pair<int, int>, Fraction> derive_target_system(int n);
// Template with GHLM taken from square numerators, over the common denominator.
std::map<std::pair<int, int>, Fraction> square_target_system(const SquareFns &S);
// Replaces Sq symbols in an expression linear in them by numerators over delta.
Fraction eval_squares(const Poly &p, const SquareFns &S);

// ---- auxiliary systems ----------------------------------------------------

// Pi^k_{a,b} in terms of GHLM and Theta; keys {k, a<=b}.
std::map<std::vector<int>, Poly> quasi_inversion(int n);
size_t square_count(int n);
size_t ghlm_count(int n);

// Cross-differentiation relations on Pi; keys {j1, j2, j3, k1} in 1..n+1.
std::map<std::vector<int>, Poly> first_aux_compat(int n);
// The same relations written out by the split {1..n} | {n+1}; keys {family 1..6, indices...}.
std::map<std::vector<int>, Poly> first_aux_split(int n);
// Sum of the two marked terms in the third split family (must vanish).
Poly split_marked_terms(int n, int j1);

struct SecondAux {
    int n = 2;
    std::map<SymId, Poly> solution;         // Theta^a_{x^b} symbol -> expression
    std::map<std::vector<int>, Poly> residual;  // remaining relations after substitution
};
SymId theta_derivative(int n, int a, int b);
SecondAux solve_second_aux(int n);

enum class Reduction { Zero, Reduced, Inconclusive };
const char *to_string(Reduction r);
// Membership of a polynomial in the span of the families, their first
// derivatives and multipliers of degree <= max_deg in GHLM and Theta symbols.
class FamilyReducer {
public:
    FamilyReducer(int n, int max_deg = 2);
    Reduction reduce(const Poly &p);

private:
    int n_, max_deg_;
    std::vector<Poly> gens_;
    std::vector<SymId> alphabet_;
    std::map<std::vector<int>, std::vector<Poly>> mult_by_weight_;
    std::map<std::vector<int>, std::map<Mono, Poly>> basis_;  // weight -> echelon rows
    std::set<std::vector<int>> built_;
    void build(const std::vector<int> &w);
};
std::vector<int> flat_weight(int n, const Mono &m);

// (Theta^{j1}_{x^{j2}})_{x^{j3}} - (Theta^{j1}_{x^{j3}})_{x^{j2}} after substitution.
Poly expand_compat_first(const SecondAux &aux, int j1, int j2, int j3);

}  // namespace jetsym
