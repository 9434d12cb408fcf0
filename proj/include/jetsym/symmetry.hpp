#pragma once

#include "jetsym/prolong.hpp"

namespace jetsym {

// Closes a partial skeleton under the restricted total operators up to order kappa+1.
PDESystem complete_skeleton(const PDESystem &partial);

// One defect per skeleton entry, in skeleton key order.
std::vector<Poly> tangency_defect(const PDESystem &sys, const VectorField &f);

struct DeterminingSystem {
    std::vector<Poly> equations;
};
// Coefficients of parametric-jet monomials in the defects of the generic field.
DeterminingSystem determining_system(const PDESystem &sys);
bool solves(const DeterminingSystem &ds, const VectorField &f);

VectorField lie_bracket(const VectorField &f, const VectorField &g);
VectorField operator+(const VectorField &a, const VectorField &b);
VectorField operator*(const Q &c, const VectorField &a);
bool is_zero(const VectorField &f);

struct BracketEntry {
    bool in_span = false;
    std::vector<Q> coeffs;  // coordinates in the basis when in_span
};
std::optional<std::vector<Q>> express_in_basis(const VectorField &f, const std::vector<VectorField> &basis);
std::vector<std::vector<BracketEntry>> bracket_table(const std::vector<VectorField> &fields);
bool jacobi_holds(const std::vector<VectorField> &fields);
size_t field_rank(const std::vector<VectorField> &fields);

// Prolonged field as a derivation on jet coordinates up to order kappa.
std::map<VarId, Poly> prolonged_components(const VectorField &f, int kappa);
bool verify_prolong_bracket(const VectorField &f, const VectorField &g, int kappa);

// Fundamental invariants of y'' = F(x, y, y').
std::pair<Poly, Poly> invariants_E1(const Poly &F);

// Helpers for fixtures.
VectorField parse_field(int n, int m, const std::vector<std::string> &X, const std::vector<std::string> &Y,
                        const ExprContext *ctx = nullptr);

}  // namespace jetsym
