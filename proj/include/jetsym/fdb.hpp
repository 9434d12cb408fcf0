#pragma once

#include "jetsym/prolong.hpp"

namespace jetsym {

// h = f(g^1(x), ..., g^m(x)), derivative h_{i1..ik}.
struct CompositionSpec {
    int n = 1, m = 1;
    MultiIndex target;
};

// f depends on (y^1..y^m), g^l on (x^1..x^n).
SymId fdb_f(int m);
SymId fdb_g(int n, int m, int l);
ExprContext fdb_context(int n, int m);

Poly fdb_closed(const CompositionSpec &s);
// Plain chain rule, repeated.
Poly fdb_oracle(const CompositionSpec &s);
// Induction through the derivations acting on f- and g-symbols.
Poly fdb_derivations(const CompositionSpec &s);
// Scalar formula with coefficient k!/prod((lambda_e!)^mu_e mu_e!).
Poly fdb_scalar(int kappa);

// Sum of coefficients (all symbols set to 1).
Q sum_coefficients(const Poly &p);
// Number of set partitions of {1..k}, by enumeration.
long set_partitions(int k);

}  // namespace jetsym
