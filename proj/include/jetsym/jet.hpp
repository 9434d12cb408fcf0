#pragma once

#include "jetsym/kernel.hpp"

#include <set>

namespace jetsym {

struct JetContext {
    int n = 1, m = 1, kappa = 0;
};

long binomial(long n, long k);
Q factorial(long n);

long jet_dimension(const JetContext &ctx);

MultiIndex add_index(MultiIndex K, int i);
// Sorted multi-indices over {1..n} of the given length.
std::vector<MultiIndex> multi_indices(int n, int len);
// All jet variables y^j_K with lo <= |K| <= hi.
std::vector<VarId> jet_vars(int n, int m, int lo, int hi);

// D_i with truncation at order lambda: throws when p contains a jet of length >= lambda.
Poly total_diff(const JetContext &ctx, int i, int lambda, const Poly &p);
// Untruncated D_i (jets of any length are shifted).
Poly total_diff(int i, const Poly &p);

// ---- skeletons -------------------------------------------------------------

struct MissingJet : Error {
    VarId jet;
    MissingJet(const std::string &msg, VarId v) : Error(msg), jet(v) {}
};

// Completely integrable system in graph form. Base y^j are always coordinates;
// parametric holds the jets (|K| >= 1) kept as coordinates.
struct PDESystem {
    JetContext ctx;
    std::set<VarId> parametric;
    std::map<VarId, Poly> skeleton;

    bool is_coordinate(VarId v) const;
    std::vector<VarId> coordinates() const;
    int max_order() const;
};

// Image of coordinate v under the restricted operator D_i; throws naming the missing jet.
Poly restricted_image(const PDESystem &sys, int i, VarId v);
// Restricted operators as coefficient maps on skeleton coordinates.
std::vector<std::map<VarId, Poly>> restricted_total_ops(const PDESystem &sys);
Poly restricted_diff(const PDESystem &sys, int i, const Poly &p);
// Frobenius test: [D_i, D_k] vanishes on every coordinate.
bool frobenius_ok(const PDESystem &sys, std::string *witness = nullptr);

}  // namespace jetsym
