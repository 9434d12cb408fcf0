#include "jetsym/prolong.hpp"

#include <algorithm>
#include <numeric>

namespace jetsym {

SymId field_sym(int n, int m, bool isY, int comp) {
    std::vector<VarId> deps;
    for (int i = 1; i <= n; ++i) deps.push_back(xvar(i));
    for (int j = 1; j <= m; ++j) deps.push_back(yvar(j));
    bool scalar = isY ? m == 1 : n == 1;
    return fsym(isY ? "Y" : "X", scalar ? std::vector<int>{} : std::vector<int>{comp}, deps);
}

VectorField generic_field(int n, int m) {
    VectorField f{n, m, {}, {}};
    for (int k = 1; k <= n; ++k) f.X.push_back(Poly::of_sym(field_sym(n, m, false, k)));
    for (int j = 1; j <= m; ++j) f.Y.push_back(Poly::of_sym(field_sym(n, m, true, j)));
    return f;
}

ExprContext field_context(int n, int m) {
    ExprContext c(n, m);
    auto deps = c.base_vars();
    c.declare("X", deps);
    c.declare("Y", deps);
    return c;
}

void check_field(const VectorField &f) {
    if ((int)f.X.size() != f.n || (int)f.Y.size() != f.m) throw Error("vector field: wrong component count");
    auto bad = [](const Poly &p) {
        for (VarId v : p.vars())
            if (is_jet(v)) return true;
        for (SymId s : p.syms())
            for (VarId v : func(sym(s).f).deps)
                if (is_jet(v)) return true;
        return false;
    };
    for (auto &p : f.X)
        if (bad(p)) throw Error("vector field coefficient depends on a jet variable");
    for (auto &p : f.Y)
        if (bad(p)) throw Error("vector field coefficient depends on a jet variable");
}

Poly VectorField::apply(const Poly &h) const {
    Poly r;
    for (int i = 1; i <= n; ++i)
        if (!X[i - 1].is_zero()) r += X[i - 1] * h.partial(xvar(i));
    for (int j = 1; j <= m; ++j)
        if (!Y[j - 1].is_zero()) r += Y[j - 1] * h.partial(yvar(j));
    return r;
}

// ---- inductive -------------------------------------------------------------

namespace {
Poly step(const VectorField &f, const std::vector<Poly> &DX, int j, const MultiIndex &parent,
          const Poly &Yparent, int i) {
    JetContext ctx{f.n, f.m, 0};
    Poly r = total_diff(ctx, i, (int)parent.size() + 1, Yparent);
    for (int k = 1; k <= f.n; ++k)
        if (!DX[k - 1].is_zero()) r -= DX[k - 1] * Poly::of_var(yvar(j, add_index(parent, k)));
    return r;
}
std::vector<Poly> dx_row(const VectorField &f, int i) {
    std::vector<Poly> DX;
    for (int k = 1; k <= f.n; ++k) DX.push_back(total_diff(i, f.X[k - 1]));
    return DX;
}
}  // namespace

ProlongedField prolong_inductive(const VectorField &f, int kappa) {
    check_field(f);
    if (kappa < 1) throw Error("prolong: order must be >= 1");
    ProlongedField out{f, kappa, {}};
    std::vector<std::vector<Poly>> DX;
    for (int i = 1; i <= f.n; ++i) DX.push_back(dx_row(f, i));
    for (int len = 1; len <= kappa; ++len)
        for (int j = 1; j <= f.m; ++j)
            for (auto &K : multi_indices(f.n, len)) {
                MultiIndex parent(K.begin(), K.end() - 1);
                int i = K.back();
                const Poly &Yp = parent.empty() ? f.Y[j - 1] : out.coeffs.at(yvar(j, parent));
                out.coeffs[yvar(j, K)] = step(f, DX[i - 1], j, parent, Yp, i);
            }
    return out;
}

Poly prolong_path(const VectorField &f, int j, const std::vector<int> &dirs) {
    check_field(f);
    Poly Yc = f.Y[j - 1];
    MultiIndex parent;
    for (int i : dirs) {
        Yc = step(f, dx_row(f, i), j, parent, Yc, i);
        parent = add_index(parent, i);
    }
    return Yc;
}

// ---- combinatorics ---------------------------------------------------------

std::vector<std::vector<int>> subset_perms(int p, int q) {
    if (q < 0 || q > p) throw Error("subset_perms: need 0 <= q <= p");
    std::vector<std::vector<int>> out;
    std::vector<bool> sel(p, false);
    std::fill(sel.begin(), sel.begin() + q, true);
    do {
        std::vector<int> t;
        for (int i = 0; i < p; ++i)
            if (sel[i]) t.push_back(i);
        for (int i = 0; i < p; ++i)
            if (!sel[i]) t.push_back(i);
        out.push_back(t);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return out;
}

int CosetSpec::weight() const {
    int w = 0;
    for (size_t e = 0; e < lambda.size(); ++e) w += mu[e] * lambda[e];
    return w;
}
int CosetSpec::blocks() const { return std::accumulate(mu.begin(), mu.end(), 0); }

CosetWeight coset_weight(const CosetSpec &s) {
    if (s.lambda.size() != s.mu.size() || s.lambda.empty()) throw Error("coset spec: bad shape");
    Q H = 1;
    for (size_t e = 0; e < s.lambda.size(); ++e) {
        if (s.mu[e] < 1 || s.lambda[e] < 1 || (e && s.lambda[e] <= s.lambda[e - 1]))
            throw Error("coset spec: invalid lengths or multiplicities");
        Q lf = factorial(s.lambda[e]);
        H *= factorial(s.mu[e]);
        for (int k = 0; k < s.mu[e]; ++k) H *= lf;
    }
    return {H, factorial(s.weight()) / H};
}

std::vector<CosetSpec> coset_specs(int p) {
    std::vector<CosetSpec> out;
    std::vector<int> parts;
    auto rec = [&](auto &&self, int left, int maxpart) -> void {
        if (left == 0) {
            CosetSpec s;
            for (int i = (int)parts.size() - 1; i >= 0; --i) {
                if (!s.lambda.empty() && s.lambda.back() == parts[i])
                    ++s.mu.back();
                else {
                    s.lambda.push_back(parts[i]);
                    s.mu.push_back(1);
                }
            }
            out.push_back(s);
            return;
        }
        for (int k = std::min(left, maxpart); k >= 1; --k) {
            parts.push_back(k);
            self(self, left - k, k);
            parts.pop_back();
        }
    };
    if (p >= 1) rec(rec, p, p);
    return out;
}

std::vector<int> block_lengths(const CosetSpec &s) {
    std::vector<int> r;
    for (size_t e = 0; e < s.lambda.size(); ++e)
        for (int v = 0; v < s.mu[e]; ++v) r.push_back(s.lambda[e]);
    return r;
}

std::vector<int> block_of_position(const CosetSpec &s) {
    std::vector<int> r;
    auto lens = block_lengths(s);
    for (size_t b = 0; b < lens.size(); ++b)
        for (int g = 0; g < lens[b]; ++g) r.push_back((int)b);
    return r;
}

namespace {
std::vector<std::vector<int>> blocks_as_sets(const CosetSpec &s) {
    auto pos = block_of_position(s);
    std::vector<std::vector<int>> B(s.blocks());
    for (size_t t = 0; t < pos.size(); ++t) B[pos[t]].push_back((int)t);
    return B;
}
std::vector<std::vector<int>> image(const std::vector<std::vector<int>> &B, const std::vector<int> &sg) {
    std::vector<std::vector<int>> r;
    for (auto &b : B) {
        std::vector<int> im;
        for (int t : b) im.push_back(sg[t]);
        std::sort(im.begin(), im.end());
        r.push_back(im);
    }
    std::sort(r.begin(), r.end());
    return r;
}
}  // namespace

Q stabilizer_count(const CosetSpec &s) {
    auto B = blocks_as_sets(s);
    auto base = image(B, [&] {
        std::vector<int> id(s.weight());
        std::iota(id.begin(), id.end(), 0);
        return id;
    }());
    std::vector<int> sg(s.weight());
    std::iota(sg.begin(), sg.end(), 0);
    long c = 0;
    do {
        if (image(B, sg) == base) ++c;
    } while (std::next_permutation(sg.begin(), sg.end()));
    return Q(c);
}

Q orbit_count(const CosetSpec &s) {
    auto B = blocks_as_sets(s);
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<int> sg(s.weight());
    std::iota(sg.begin(), sg.end(), 0);
    do {
        seen.insert(image(B, sg));
    } while (std::next_permutation(sg.begin(), sg.end()));
    return Q((long)seen.size());
}

// ---- closed forms ----------------------------------------------------------

namespace {

// Iterate over l in [m]^M, with optional fixed slot.
template <class F>
void for_each_l(int m, int M, int fixed_slot, int fixed_val, F &&f) {
    std::vector<int> l(M, 1);
    if (fixed_slot >= 0) l[fixed_slot] = fixed_val;
    for (;;) {
        f(l);
        int b = 0;
        for (; b < M; ++b) {
            if (b == fixed_slot) continue;
            if (l[b] < m) {
                ++l[b];
                break;
            }
            l[b] = 1;
        }
        if (b == M) break;
    }
}

SymId deriv(FuncId f, std::vector<VarId> order) { return sym_id(DerivSym{f, std::move(order)}); }

}  // namespace

Poly prolong_closed(int n, int m, VarId target) {
    const Var &tv = var(target);
    if (tv.kind != VarKind::Dep || tv.idx.empty()) throw Error("prolong_closed: target must be a jet");
    const int j = tv.index;
    const MultiIndex &I = tv.idx;
    const int kappa = (int)I.size();
    FuncId fY = sym(field_sym(n, m, true, j)).f;
    std::vector<FuncId> fX;
    for (int k = 1; k <= n; ++k) fX.push_back(sym(field_sym(n, m, false, k)).f);

    Poly r;
    {
        std::vector<VarId> ord;
        for (int i : I) ord.push_back(xvar(i));
        r.add_term(Mono{sym_atom(deriv(fY, ord))}, 1);
    }
    for (int p = 1; p <= kappa + 1; ++p) {
        std::vector<int> sigma0(p);
        std::iota(sigma0.begin(), sigma0.end(), 0);
        for (const CosetSpec &spec : coset_specs(p)) {
            if (spec.lambda.back() > kappa) continue;
            const Q Hinv = 1 / coset_weight(spec).H;
            const auto pos = block_of_position(spec);
            const int M = spec.blocks();
            std::vector<std::vector<int>> members(M);
            for (int t = 0; t < p; ++t) members[pos[t]].push_back(t);

            auto jets_of = [&](const std::vector<int> &k, const std::vector<int> &l, Mono &mono) {
                for (int b = 0; b < M; ++b) {
                    MultiIndex K;
                    for (int t : members[b]) K.push_back(k[t]);
                    mono.push_back(var_atom(yvar(l[b], K)));
                }
            };

            if (p <= kappa) {
                for (auto &tau : subset_perms(kappa, p)) {
                    std::map<std::vector<int>, long> kc;
                    auto sg = sigma0;
                    do {
                        std::vector<int> k(p);
                        for (int t = 0; t < p; ++t) k[sg[t]] = I[tau[t]];
                        ++kc[k];
                    } while (std::next_permutation(sg.begin(), sg.end()));
                    std::vector<VarId> xs;
                    for (int t = p; t < kappa; ++t) xs.push_back(xvar(I[tau[t]]));
                    for (auto &[k, cnt] : kc)
                        for_each_l(m, M, -1, 0, [&](const std::vector<int> &l) {
                            auto ord = xs;
                            for (int b = 0; b < M; ++b) ord.push_back(yvar(l[b]));
                            Mono mono{sym_atom(deriv(fY, ord))};
                            jets_of(k, l, mono);
                            std::sort(mono.begin(), mono.end());
                            r.add_term(mono, Hinv * cnt);
                        });
                }
            }
            for (auto &tau : subset_perms(kappa, p - 1)) {
                std::map<std::pair<std::vector<int>, int>, long> kc;
                auto sg = sigma0;
                do {
                    std::vector<int> k(p, 0);
                    for (int t = 0; t < p - 1; ++t) k[sg[t]] = I[tau[t]];
                    ++kc[{k, sg[p - 1]}];
                } while (std::next_permutation(sg.begin(), sg.end()));
                std::vector<VarId> xs;
                for (int t = p - 1; t < kappa; ++t) xs.push_back(xvar(I[tau[t]]));
                for (auto &[key, cnt] : kc) {
                    auto k = key.first;
                    const int free = key.second, bstar = pos[free];
                    for (int kf = 1; kf <= n; ++kf) {
                        k[free] = kf;
                        for_each_l(m, M, bstar, j, [&](const std::vector<int> &l) {
                            auto ord = xs;
                            for (int b = 0; b < M; ++b)
                                if (b != bstar) ord.push_back(yvar(l[b]));
                            Mono mono{sym_atom(deriv(fX[kf - 1], ord))};
                            jets_of(k, l, mono);
                            std::sort(mono.begin(), mono.end());
                            r.add_term(mono, -Hinv * cnt);
                        });
                    }
                }
            }
        }
    }
    return r;
}

Poly prolong_closed_scalar(int kappa) {
    FuncId fY = sym(field_sym(1, 1, true, 1)).f, fX = sym(field_sym(1, 1, false, 1)).f;
    VarId x = xvar(1), y = yvar(1);
    auto ord = [&](int a, int b) {
        std::vector<VarId> o(a, x);
        o.insert(o.end(), b, y);
        return o;
    };
    Poly r = Poly::of_sym(deriv(fY, ord(kappa, 0)));
    const Q kf = factorial(kappa);
    for (int p = 1; p <= kappa + 1; ++p)
        for (const CosetSpec &s : coset_specs(p)) {
            if (s.lambda.back() > kappa) continue;
            const Q H = coset_weight(s).H;
            const int M = s.blocks();
            Mono jets;
            for (size_t e = 0; e < s.lambda.size(); ++e)
                for (int v = 0; v < s.mu[e]; ++v) jets.push_back(var_atom(yvar(1, MultiIndex(s.lambda[e], 1))));
            if (p <= kappa) {
                Mono mono = jets;
                mono.push_back(sym_atom(deriv(fY, ord(kappa - p, M))));
                r += Poly::monomial(mono, kf / (factorial(kappa - p) * H));
            }
            Mono mono = jets;
            mono.push_back(sym_atom(deriv(fX, ord(kappa - p + 1, M - 1))));
            r += Poly::monomial(mono, -Q(p) * kf / (factorial(kappa - p + 1) * H));
        }
    return r;
}

Poly prolong_closed_n1(int m, int j, int kappa) {
    FuncId fY = sym(field_sym(1, m, true, j)).f, fX = sym(field_sym(1, m, false, 1)).f;
    Poly r;
    {
        std::vector<VarId> o(kappa, xvar(1));
        r = Poly::of_sym(deriv(fY, o));
    }
    const Q kf = factorial(kappa);
    for (int p = 1; p <= kappa + 1; ++p)
        for (const CosetSpec &s : coset_specs(p)) {
            if (s.lambda.back() > kappa) continue;
            const Q H = coset_weight(s).H;
            const auto lens = block_lengths(s);
            const int M = (int)lens.size();
            auto jets = [&](const std::vector<int> &l) {
                Mono mono;
                for (int b = 0; b < M; ++b) mono.push_back(var_atom(yvar(l[b], MultiIndex(lens[b], 1))));
                return mono;
            };
            if (p <= kappa) {
                const Q c = kf / (factorial(kappa - p) * H);
                for_each_l(m, M, -1, 0, [&](const std::vector<int> &l) {
                    std::vector<VarId> o(kappa - p, xvar(1));
                    for (int b = 0; b < M; ++b) o.push_back(yvar(l[b]));
                    Mono mono = jets(l);
                    mono.push_back(sym_atom(deriv(fY, o)));
                    r += Poly::monomial(mono, c);
                });
            }
            int first = 0;
            for (size_t e = 0; e < s.lambda.size(); ++e) {
                const Q c = -Q(s.mu[e] * s.lambda[e]) * kf / (factorial(kappa - p + 1) * H);
                for_each_l(m, M, first, j, [&](const std::vector<int> &l) {
                    std::vector<VarId> o(kappa - p + 1, xvar(1));
                    for (int b = 0; b < M; ++b)
                        if (b != first) o.push_back(yvar(l[b]));
                    Mono mono = jets(l);
                    mono.push_back(sym_atom(deriv(fX, o)));
                    r += Poly::monomial(mono, c);
                });
                first += s.mu[e];
            }
        }
    return r;
}

Poly binomial_slice(int kappa) {
    FuncId fY = sym(field_sym(1, 1, true, 1)).f, fX = sym(field_sym(1, 1, false, 1)).f;
    auto o = [](int a, int b) {
        std::vector<VarId> v(a, xvar(1));
        v.insert(v.end(), b, yvar(1));
        return v;
    };
    Poly y1 = Poly::of_var(yvar(1, {1}));
    Poly r = Poly::of_sym(deriv(fY, o(kappa, 0)));
    for (int l = 1; l <= kappa; ++l) {
        Poly c = Poly::of_sym(deriv(fY, o(kappa - l, l))) * Q(binomial(kappa, l)) -
                 Poly::of_sym(deriv(fX, o(kappa - l + 1, l - 1))) * Q(binomial(kappa, l - 1));
        r += c * y1.pow(l);
    }
    r -= Poly::of_sym(deriv(fX, o(0, kappa))) * y1.pow(kappa + 1);
    return r;
}

Poly y1_power_part(const Poly &p) {
    Poly r;
    VarId y1 = yvar(1, {1});
    for (auto &[m, c] : p.terms()) {
        bool ok = true;
        for (Atom a : m)
            if (!atom_is_sym(a) && is_jet(a) && a != y1) ok = false;
        if (ok) r.add_term(m, c);
    }
    return r;
}

}  // namespace jetsym
