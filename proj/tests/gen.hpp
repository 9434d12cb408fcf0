#pragma once

#include "jetsym/expr.hpp"

#include <random>

// Seeded random polynomials over a fixed list of atoms.
struct PolyGen {
    std::mt19937_64 rng;
    std::vector<jetsym::Poly> atoms;
    int max_terms = 5, max_deg = 3;

    PolyGen(uint64_t seed, std::vector<jetsym::Poly> a) : rng(seed), atoms(std::move(a)) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    jetsym::Q coef() {
        int p = uniform(-9, 9), q = uniform(1, 4);
        if (p == 0) p = 1;
        return jetsym::Q(p, q);
    }

    jetsym::Poly operator()() {
        jetsym::Poly r;
        int t = uniform(0, max_terms);
        for (int i = 0; i < t; ++i) {
            jetsym::Poly m(coef());
            int d = uniform(0, max_deg);
            for (int k = 0; k < d; ++k) m = m * atoms[uniform(0, (int)atoms.size() - 1)];
            r += m;
        }
        return r;
    }
};

// Atoms of field_context(n, m): base variables, first jets and a few derivative symbols.
inline std::vector<jetsym::Poly> field_atoms(int n, int m, const jetsym::ExprContext &c) {
    std::vector<jetsym::Poly> a;
    for (auto v : c.base_vars()) a.push_back(jetsym::Poly::of_var(v));
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= n; ++i) a.push_back(jetsym::Poly::of_var(jetsym::yvar(j, {i})));
    const char *names[] = {"X", "Y", "X_{x}", "Y_{y}", "X_{x,y}", "Y_{x^2}"};
    if (n == 1 && m == 1)
        for (auto s : names) a.push_back(jetsym::parse_expression(s, c));
    return a;
}
