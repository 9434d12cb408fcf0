#include "jetsym/jet.hpp"

#include "jetsym/expr.hpp"

#include <algorithm>

namespace jetsym {

long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r.get_si();
}

Q factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return Q(r);
}

long jet_dimension(const JetContext &c) { return c.n + c.m * binomial(c.n + c.kappa, c.kappa); }

MultiIndex add_index(MultiIndex K, int i) {
    K.insert(std::upper_bound(K.begin(), K.end(), i), i);
    return K;
}

std::vector<MultiIndex> multi_indices(int n, int len) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    auto rec = [&](auto &&self, int from) -> void {
        if ((int)cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (int i = from; i <= n; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<VarId> jet_vars(int n, int m, int lo, int hi) {
    std::vector<VarId> r;
    for (int len = lo; len <= hi; ++len)
        for (int j = 1; j <= m; ++j)
            for (auto &K : multi_indices(n, len)) r.push_back(yvar(j, K));
    return r;
}

namespace {
struct TotalImage {
    int i;
    std::map<VarId, Poly> cache;
    const Poly one{1};
    const Poly *operator()(VarId v) {
        const Var &x = var(v);
        if (x.kind == VarKind::Indep) return x.index == i ? &one : nullptr;
        if (x.kind == VarKind::Param) return nullptr;
        auto it = cache.find(v);
        if (it == cache.end()) it = cache.emplace(v, Poly::of_var(yvar(x.index, add_index(x.idx, i)))).first;
        return &it->second;
    }
};
}  // namespace

Poly total_diff(int i, const Poly &p) {
    TotalImage img{i, {}};
    return derive(p, [&](VarId v) { return img(v); });
}

Poly total_diff(const JetContext &ctx, int i, int lambda, const Poly &p) {
    if (i < 1 || i > ctx.n) throw Error("total_diff: direction out of range");
    for (VarId v : p.vars())
        if (jet_order(v) >= lambda)
            throw Error("total_diff: jet of length " + std::to_string(jet_order(v)) +
                        " not below operator order " + std::to_string(lambda));
    for (SymId s : p.syms())
        for (VarId v : func(sym(s).f).deps)
            if (jet_order(v) >= lambda) throw Error("total_diff: symbol depends on a jet beyond operator order");
    return total_diff(i, p);
}

// ---- skeletons -------------------------------------------------------------

bool PDESystem::is_coordinate(VarId v) const {
    const Var &x = var(v);
    if (x.kind != VarKind::Dep) return true;
    if (x.idx.empty()) return !skeleton.count(v);
    return parametric.count(v) > 0;
}

std::vector<VarId> PDESystem::coordinates() const {
    std::vector<VarId> r;
    for (int i = 1; i <= ctx.n; ++i) r.push_back(xvar(i));
    for (int j = 1; j <= ctx.m; ++j)
        if (!skeleton.count(yvar(j))) r.push_back(yvar(j));
    for (VarId v : parametric) r.push_back(v);
    return r;
}

int PDESystem::max_order() const {
    int k = 0;
    for (auto &[v, _] : skeleton) k = std::max(k, jet_order(v));
    return k;
}

Poly restricted_image(const PDESystem &sys, int i, VarId v) {
    const Var &x = var(v);
    if (x.kind == VarKind::Indep) return Poly(x.index == i ? 1 : 0);
    if (x.kind == VarKind::Param) return Poly();
    VarId w = yvar(x.index, add_index(x.idx, i));
    if (sys.parametric.count(w)) return Poly::of_var(w);
    auto it = sys.skeleton.find(w);
    if (it == sys.skeleton.end()) {
        ExprContext names(sys.ctx.n, sys.ctx.m);
        throw MissingJet("skeleton incomplete: missing " + var_name(w, names), w);
    }
    return it->second;
}

std::vector<std::map<VarId, Poly>> restricted_total_ops(const PDESystem &sys) {
    std::vector<std::map<VarId, Poly>> ops(sys.ctx.n);
    for (int i = 1; i <= sys.ctx.n; ++i)
        for (VarId c : sys.coordinates()) {
            Poly im = restricted_image(sys, i, c);
            if (!im.is_zero()) ops[i - 1][c] = im;
        }
    return ops;
}

Poly restricted_diff(const PDESystem &sys, int i, const Poly &p) {
    std::map<VarId, Poly> cache;
    return derive(p, [&](VarId v) -> const Poly * {
        auto it = cache.find(v);
        if (it == cache.end()) {
            if (!sys.is_coordinate(v)) throw Error("restricted_diff: non-coordinate variable in expression");
            it = cache.emplace(v, restricted_image(sys, i, v)).first;
        }
        return &it->second;
    });
}

bool frobenius_ok(const PDESystem &sys, std::string *witness) {
    for (int a = 1; a <= sys.ctx.n; ++a)
        for (int b = a + 1; b <= sys.ctx.n; ++b)
            for (VarId c : sys.coordinates()) {
                Poly pc = Poly::of_var(c);
                Poly lhs = restricted_diff(sys, a, restricted_diff(sys, b, pc));
                Poly rhs = restricted_diff(sys, b, restricted_diff(sys, a, pc));
                if (!(lhs - rhs).is_zero()) {
                    if (witness)
                        *witness = "[D" + std::to_string(a) + ",D" + std::to_string(b) + "] on coordinate " +
                                   var_name(c, ExprContext(sys.ctx.n, sys.ctx.m));
                    return false;
                }
            }
    return true;
}

}  // namespace jetsym
