#pragma once

#include "jetsym/expr.hpp"
#include "jetsym/jet.hpp"

namespace jetsym {

// Point vector field sum X^i d/dx^i + sum Y^j d/dy^j with coefficients in (x, y).
struct VectorField {
    int n = 1, m = 1;
    std::vector<Poly> X, Y;

    Poly apply(const Poly &h) const;  // derivation on functions of (x, y, params)
    bool operator==(const VectorField &o) const { return n == o.n && m == o.m && X == o.X && Y == o.Y; }
};

// Symbols X^k, Y^j depending on (x^1..x^n, y^1..y^m). Names X, Y when n or m is 1, else X{k}, Y{j}.
SymId field_sym(int n, int m, bool isY, int comp);
VectorField generic_field(int n, int m);
ExprContext field_context(int n, int m);
void check_field(const VectorField &f);

struct ProlongedField {
    VectorField base;
    int kappa = 0;
    std::map<VarId, Poly> coeffs;  // y^j_K -> Y^j_K, 1 <= |K| <= kappa
};

ProlongedField prolong_inductive(const VectorField &f, int kappa);
// Same recursion along an explicit (unsorted) path of directions.
Poly prolong_path(const VectorField &f, int j, const std::vector<int> &dirs);

// ---- combinatorics ---------------------------------------------------------

std::vector<std::vector<int>> subset_perms(int p, int q);

struct CosetSpec {
    std::vector<int> lambda;  // strictly increasing
    std::vector<int> mu;      // multiplicities >= 1
    int weight() const;       // sum mu*lambda
    int blocks() const;       // sum mu
};
struct CosetWeight {
    Q H, F;
};
CosetWeight coset_weight(const CosetSpec &s);
// All specs with sum mu*lambda == p.
std::vector<CosetSpec> coset_specs(int p);
// Block of each flat position, blocks ordered (e, nu).
std::vector<int> block_of_position(const CosetSpec &s);
std::vector<int> block_lengths(const CosetSpec &s);

// Brute-force counts over S_p.
Q stabilizer_count(const CosetSpec &s);
Q orbit_count(const CosetSpec &s);

// ---- closed forms ----------------------------------------------------------

// General closed formula for the generic field; target y^j_{i1..ik}.
Poly prolong_closed(int n, int m, VarId target);
// Scalar (n = m = 1) evaluator with explicit factorial coefficients.
Poly prolong_closed_scalar(int kappa);
// n = 1 evaluator with block weights mu_e*lambda_e.
Poly prolong_closed_n1(int m, int j, int kappa);

// (y_1)-power part of Y_kappa for n = m = 1.
Poly binomial_slice(int kappa);
Poly y1_power_part(const Poly &p);

}  // namespace jetsym
