#include "jetsym/fdb.hpp"

#include <algorithm>
#include <numeric>

namespace jetsym {

SymId fdb_f(int m) {
    std::vector<VarId> deps;
    for (int l = 1; l <= m; ++l) deps.push_back(yvar(l));
    return fsym("f", {}, deps);
}

SymId fdb_g(int n, int m, int l) {
    std::vector<VarId> deps;
    for (int i = 1; i <= n; ++i) deps.push_back(xvar(i));
    return fsym("g", m == 1 ? std::vector<int>{} : std::vector<int>{l}, deps);
}

ExprContext fdb_context(int n, int m) {
    ExprContext c(n, m);
    std::vector<VarId> ys, xs;
    for (int l = 1; l <= m; ++l) ys.push_back(yvar(l));
    for (int i = 1; i <= n; ++i) xs.push_back(xvar(i));
    c.declare("f", ys);
    c.declare("g", xs);
    c.implicit_funcs = false;
    return c;
}

static void check_spec(const CompositionSpec &s) {
    if (s.n < 1 || s.m < 1 || s.target.empty()) throw Error("composition spec: need n, m, order >= 1");
    for (int i : s.target)
        if (i < 1 || i > s.n) throw Error("composition spec: direction out of range");
}

Poly fdb_closed(const CompositionSpec &s) {
    check_spec(s);
    MultiIndex I = s.target;
    std::sort(I.begin(), I.end());
    const int kappa = (int)I.size();
    FuncId ff = sym(fdb_f(s.m)).f;
    std::vector<FuncId> fg;
    for (int l = 1; l <= s.m; ++l) fg.push_back(sym(fdb_g(s.n, s.m, l)).f);

    Poly r;
    std::vector<int> sigma0(kappa);
    std::iota(sigma0.begin(), sigma0.end(), 0);
    for (const CosetSpec &spec : coset_specs(kappa)) {
        const Q Hinv = 1 / coset_weight(spec).H;
        const auto pos = block_of_position(spec);
        const int M = spec.blocks();
        std::vector<std::vector<int>> members(M);
        for (int t = 0; t < kappa; ++t) members[pos[t]].push_back(t);
        std::map<std::vector<int>, long> kc;
        auto sg = sigma0;
        do {
            std::vector<int> k(kappa);
            for (int t = 0; t < kappa; ++t) k[sg[t]] = I[t];
            ++kc[k];
        } while (std::next_permutation(sg.begin(), sg.end()));
        std::vector<int> l(M, 1);
        for (;;) {
            std::vector<VarId> ford;
            for (int b = 0; b < M; ++b) ford.push_back(yvar(l[b]));
            Atom fa = sym_atom(sym_id(DerivSym{ff, ford}));
            for (auto &[k, cnt] : kc) {
                Mono mono{fa};
                for (int b = 0; b < M; ++b) {
                    std::vector<VarId> go;
                    for (int t : members[b]) go.push_back(xvar(k[t]));
                    mono.push_back(sym_atom(sym_id(DerivSym{fg[l[b] - 1], go})));
                }
                std::sort(mono.begin(), mono.end());
                r.add_term(mono, Hinv * cnt);
            }
            int b = 0;
            for (; b < M; ++b) {
                if (l[b] < s.m) {
                    ++l[b];
                    break;
                }
                l[b] = 1;
            }
            if (b == M) break;
        }
    }
    return r;
}

Poly fdb_oracle(const CompositionSpec &s) {
    check_spec(s);
    Poly h = Poly::of_sym(fdb_f(s.m));
    for (int i : s.target) {
        std::map<VarId, Poly> img;
        img[xvar(i)] = Poly(1);
        for (int l = 1; l <= s.m; ++l)
            img[yvar(l)] = Poly::of_sym(*formal_partial_sym(fdb_g(s.n, s.m, l), xvar(i)));
        h = derive(h, [&](VarId v) -> const Poly * {
            auto it = img.find(v);
            return it == img.end() ? nullptr : &it->second;
        });
    }
    return h;
}

Poly fdb_derivations(const CompositionSpec &s) {
    check_spec(s);
    FuncId ff = sym(fdb_f(s.m)).f;
    Poly h = Poly::of_sym(fdb_f(s.m));
    for (int i : s.target) {
        std::vector<Poly> gi;
        for (int l = 1; l <= s.m; ++l) gi.push_back(Poly::of_sym(*formal_partial_sym(fdb_g(s.n, s.m, l), xvar(i))));
        Poly next;
        for (SymId a : h.syms()) {
            Poly dh = h.partial_atom(sym_atom(a));
            if (sym(a).f == ff) {
                for (int l = 1; l <= s.m; ++l)
                    next += dh * Poly::of_sym(*formal_partial_sym(a, yvar(l))) * gi[l - 1];
            } else {
                next += dh * Poly::of_sym(*formal_partial_sym(a, xvar(i)));
            }
        }
        h = next;
    }
    return h;
}

Poly fdb_scalar(int kappa) {
    FuncId ff = sym(fdb_f(1)).f, fg = sym(fdb_g(1, 1, 1)).f;
    Poly r;
    for (const CosetSpec &spec : coset_specs(kappa)) {
        Mono mono{sym_atom(sym_id(DerivSym{ff, std::vector<VarId>(spec.blocks(), yvar(1))}))};
        for (size_t e = 0; e < spec.lambda.size(); ++e)
            for (int v = 0; v < spec.mu[e]; ++v)
                mono.push_back(sym_atom(sym_id(DerivSym{fg, std::vector<VarId>(spec.lambda[e], xvar(1))})));
        r += Poly::monomial(mono, factorial(kappa) / coset_weight(spec).H);
    }
    return r;
}

Q sum_coefficients(const Poly &p) {
    Q s = 0;
    for (auto &[m, c] : p.terms()) s += c;
    return s;
}

long set_partitions(int k) {
    // restricted growth strings a_1 = 0, a_i <= 1 + max(a_1..a_{i-1})
    long count = 0;
    std::vector<int> a(k, 0);
    auto rec = [&](auto &&self, int i, int mx) -> void {
        if (i == k) {
            ++count;
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[i] = v;
            self(self, i + 1, std::max(mx, v));
        }
    };
    if (k == 0) return 1;
    rec(rec, 1, 0);
    return count;
}

}  // namespace jetsym
