#include "jetsym/flatness.hpp"

#include "jetsym/prolong.hpp"

#include <algorithm>
#include <numeric>

namespace jetsym {

namespace {

const Poly &zero_poly() {
    static const Poly z;
    return z;
}

Q delta(int a, int b) { return a == b ? Q(1) : Q(0); }

std::vector<VarId> base_deps(int n) {
    std::vector<VarId> d;
    for (int i = 1; i <= n; ++i) d.push_back(xvar(i));
    d.push_back(yvar(1));
    return d;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

Poly det(const std::vector<std::vector<Poly>> &A) {
    const size_t N = A.size();
    std::vector<size_t> p(N);
    std::iota(p.begin(), p.end(), 0);
    Poly r;
    do {
        int inv = 0;
        for (size_t i = 0; i < N; ++i)
            for (size_t j = i + 1; j < N; ++j)
                if (p[i] > p[j]) ++inv;
        Poly t(inv % 2 ? -1 : 1);
        for (size_t i = 0; i < N && !t.is_zero(); ++i) t = t * A[i][p[i]];
        r += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return r;
}

// Gaussian elimination over Q with polynomial right-hand sides.
struct PolySolve {
    std::optional<std::vector<Poly>> x;
    int bad_row = -1;
};

PolySolve solve_poly(std::vector<std::vector<Q>> A, std::vector<Poly> b, size_t ncols) {
    const size_t R = A.size();
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t c = 0; c < ncols && row < R; ++c) {
        size_t p = row;
        while (p < R && A[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(A[p], A[row]);
        std::swap(b[p], b[row]);
        Q inv = 1 / A[row][c];
        for (auto &q : A[row]) q *= inv;
        b[row] *= inv;
        for (size_t r = 0; r < R; ++r) {
            if (r == row || A[r][c] == 0) continue;
            Q f = A[r][c];
            for (size_t k = c; k < ncols; ++k) A[r][k] -= f * A[row][k];
            b[r] -= b[row] * f;
        }
        pivot_col.push_back((int)c);
        ++row;
    }
    PolySolve out;
    for (size_t r = row; r < R; ++r)
        if (!b[r].is_zero()) {
            out.bad_row = (int)r;
            return out;
        }
    std::vector<Poly> x(ncols);
    for (size_t r = 0; r < row; ++r) x[pivot_col[r]] = b[r];
    out.x = std::move(x);
    return out;
}

bool is_first_jet(VarId v) { return var(v).kind == VarKind::Dep && var(v).idx.size() == 1; }

Mono jet_mono(const std::vector<int> &ks) {
    Mono m;
    for (int k : ks) m.push_back(var_atom(first_jet(k)));
    std::sort(m.begin(), m.end());
    return m;
}

// Sorted tuples of length d over 1..n.
void tuples(int n, int d, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if ((int)cur.size() == d) {
        out.push_back(cur);
        return;
    }
    for (int k = cur.empty() ? 1 : cur.back(); k <= n; ++k) {
        cur.push_back(k);
        tuples(n, d, cur, out);
        cur.pop_back();
    }
}
std::vector<std::vector<int>> sorted_tuples(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    tuples(n, d, cur, out);
    return out;
}

std::string mono_string(const Mono &m, const ExprContext &ctx) {
    if (m.empty()) return "1";
    return to_string(Poly::monomial(m, Q(1)), ctx);
}

bool is_named(SymId s, const char *name) {
    return sym(s).order.empty() && func(sym(s).f).name == name;
}

}  // namespace

// ---- systems and symbols ----------------------------------------------------

const Poly &SecondOrderSystem::at(int j1, int j2) const {
    auto it = rhs.find({std::min(j1, j2), std::max(j1, j2)});
    if (it == rhs.end()) throw Error("no equation for y[" + std::to_string(j1) + "," + std::to_string(j2) + "]");
    return it->second;
}

void SecondOrderSystem::set(int j1, int j2, Poly p) { rhs[{std::min(j1, j2), std::max(j1, j2)}] = std::move(p); }

VarId flat_coord(int n, int c) {
    if (c < 1 || c > n + 1) throw Error("coordinate index out of range");
    return c <= n ? xvar(c) : yvar(1);
}
VarId first_jet(int k) { return yvar(1, {k}); }
VarId second_jet(int a, int b) { return yvar(1, sorted({a, b})); }
Poly d_coord(const Poly &p, int n, int c) { return p.partial(flat_coord(n, c)); }

SymId G_sym(int n, int j1, int j2) { return fsym("G", sorted({j1, j2}), base_deps(n)); }
SymId H_sym(int n, int k, int j1, int j2) {
    auto j = sorted({j1, j2});
    return fsym("H", {k, j[0], j[1]}, base_deps(n));
}
SymId L_sym(int n, int k, int j) { return fsym("L", {k, j}, base_deps(n)); }
SymId M_sym(int n, int k) { return fsym("M", {k}, base_deps(n)); }
SymId theta_sym(int n, int j) { return fsym("Theta", {j}, base_deps(n)); }
SymId pi_sym(int n, int k, int a, int b) {
    auto j = sorted({a, b});
    return fsym("Pi", {k, j[0], j[1]}, base_deps(n));
}
SymId square_sym(int n, int k, int a, int b) {
    auto j = sorted({a, b});
    return fsym("Sq", {k, j[0], j[1]}, base_deps(n));
}

ExprContext flat_context(int n) {
    ExprContext c(n, 1);
    for (const char *f : {"G", "H", "L", "M", "Theta", "Pi", "Sq"}) c.declare(f, base_deps(n));
    c.declare("X", base_deps(n));
    c.declare("Y", base_deps(n));
    c.implicit_funcs = false;
    return c;
}

const Poly &GHLM::g(int j1, int j2) const {
    auto it = G.find(sorted({j1, j2}));
    return it == G.end() ? zero_poly() : it->second;
}
const Poly &GHLM::h(int k, int j1, int j2) const {
    auto j = sorted({j1, j2});
    auto it = H.find({k, j[0], j[1]});
    return it == H.end() ? zero_poly() : it->second;
}
const Poly &GHLM::l(int k, int j) const {
    auto it = L.find({k, j});
    return it == L.end() ? zero_poly() : it->second;
}
const Poly &GHLM::m(int k) const {
    auto it = M.find({k});
    return it == M.end() ? zero_poly() : it->second;
}

GHLM symbolic_ghlm(int n) {
    GHLM g;
    g.n = n;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            g.G[{a, b}] = Poly::of_sym(G_sym(n, a, b));
            for (int k = 1; k <= n; ++k) g.H[{k, a, b}] = Poly::of_sym(H_sym(n, k, a, b));
        }
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) g.L[{k, j}] = Poly::of_sym(L_sym(n, k, j));
        g.M[{k}] = Poly::of_sym(M_sym(n, k));
    }
    return g;
}

Poly cubic_entry(const GHLM &g, int j1, int j2) {
    const Q half(1, 2);
    Poly y1 = Poly::of_var(first_jet(j1)), y2 = Poly::of_var(first_jet(j2));
    Poly r = g.g(j1, j2);
    for (int k = 1; k <= g.n; ++k) {
        Poly inner = g.h(k, j1, j2) + y1 * g.l(k, j2) * half + y2 * g.l(k, j1) * half + y1 * y2 * g.m(k);
        r += Poly::of_var(first_jet(k)) * inner;
    }
    return r;
}

SecondOrderSystem cubic_from_ghlm(const GHLM &g) {
    SecondOrderSystem s;
    s.n = g.n;
    for (int a = 1; a <= g.n; ++a)
        for (int b = a; b <= g.n; ++b) s.set(a, b, cubic_entry(g, a, b));
    return s;
}

SecondOrderSystem second_order_part(const PDESystem &sys) {
    SecondOrderSystem s;
    s.n = sys.ctx.n;
    for (auto &[v, rhs] : sys.skeleton) {
        const Var &x = var(v);
        if (x.index == 1 && x.idx.size() == 2) s.rhs[{x.idx[0], x.idx[1]}] = rhs;
        if (x.idx.size() < 2) s.constraints.push_back(v);
    }
    return s;
}

CubicTest cubic_test(const SecondOrderSystem &sys, const ExprContext *names) {
    const int n = sys.n;
    ExprContext ctx = names ? *names : flat_context(n);
    CubicTest out;
    if (!sys.constraints.empty()) {
        out.witness = "first-order equation for " + var_name(sys.constraints.front(), ctx) +
                      ": not a second-order system";
        return out;
    }
    GHLM tmpl = symbolic_ghlm(n);
    std::map<SymId, size_t> col;
    for (auto *fam : {&tmpl.G, &tmpl.H, &tmpl.L, &tmpl.M})
        for (auto &[k, p] : *fam) col.emplace(p.syms().front(), col.size());

    std::vector<std::vector<Q>> A;
    std::vector<Poly> b;
    std::vector<std::string> row_name;
    for (int j1 = 1; j1 <= n; ++j1)
        for (int j2 = j1; j2 <= n; ++j2) {
            std::string slot = "F^{" + std::to_string(j1) + "," + std::to_string(j2) + "}";
            auto it = sys.rhs.find({j1, j2});
            if (it == sys.rhs.end()) {
                out.witness = "no equation for " + var_name(second_jet(j1, j2), ctx);
                return out;
            }
            const Poly &F = it->second;
            for (VarId v : F.vars())
                if (var(v).kind == VarKind::Dep && var(v).idx.size() >= 2) {
                    out.witness = slot + " involves the second-order jet " + var_name(v, ctx);
                    return out;
                }
            auto given = collect(F, is_first_jet);
            auto shape = collect(cubic_entry(tmpl, j1, j2), is_first_jet);
            for (auto &[m, c] : given)
                if (m.size() > 3) {
                    out.witness = slot + ": monomial " + mono_string(m, ctx) + " has degree " +
                                  std::to_string(m.size()) + " > 3";
                    return out;
                }
            std::set<Mono> monos;
            for (auto &[m, c] : given) monos.insert(m);
            for (auto &[m, c] : shape) monos.insert(m);
            for (auto &m : monos) {
                std::vector<Q> row(col.size(), Q(0));
                auto s = shape.find(m);
                if (s != shape.end())
                    for (auto &[mm, q] : s->second.terms()) row[col.at(atom_id(mm.front()))] += q;
                A.push_back(std::move(row));
                auto g = given.find(m);
                b.push_back(g == given.end() ? Poly() : g->second);
                row_name.push_back(slot + ": coefficient of " + mono_string(m, ctx));
            }
        }
    auto sol = solve_poly(A, b, col.size());
    if (!sol.x) {
        // Report a monomial the template cannot produce, if there is one.
        for (size_t r = 0; r < A.size(); ++r) {
            bool empty = std::all_of(A[r].begin(), A[r].end(), [](const Q &q) { return q == 0; });
            if (empty && !b[r].is_zero()) {
                out.witness = row_name[r] + " is outside the cubic template";
                return out;
            }
        }
        out.witness = "coefficients violate the symmetries of the cubic template";
        return out;
    }
    GHLM g;
    g.n = n;
    for (auto *fam : {&tmpl.G, &tmpl.H, &tmpl.L, &tmpl.M}) {
        auto &dst = fam == &tmpl.G ? g.G : fam == &tmpl.H ? g.H : fam == &tmpl.L ? g.L : g.M;
        for (auto &[k, p] : *fam) dst[k] = (*sol.x)[col.at(p.syms().front())];
    }
    out.ghlm = std::move(g);
    return out;
}

// ---- compatibility --------------------------------------------------------

Poly total_D(const SecondOrderSystem &sys, int j, const Poly &p) {
    Poly r = p.partial(xvar(j)) + Poly::of_var(first_jet(j)) * p.partial(yvar(1));
    for (int l = 1; l <= sys.n; ++l) {
        Poly d = p.partial(first_jet(l));
        if (!d.is_zero()) r += sys.at(j, l) * d;
    }
    return r;
}

Poly compatibility_expand(const SecondOrderSystem &sys, int j1, int j2, int j3) {
    return total_D(sys, j3, sys.at(j1, j2)) - total_D(sys, j2, sys.at(j1, j3));
}

int first_jet_degree(const Poly &p, int) { return degree_in(p, is_first_jet); }

FamilyMap collect_symmetric(const Poly &defect, int n, int j1, int j2, int j3) {
    auto parts = collect(defect, is_first_jet);
    for (auto &[m, c] : parts)
        if (m.size() > 3) throw Error("collect_symmetric: jet-degree " + std::to_string(m.size()) + " residue");
    FamilyMap out;
    for (int d = 0; d <= 3; ++d) {
        Q fact = factorial(d);
        for (auto &ks : sorted_tuples(n, d)) {
            FamilyKey key{d, j1, j2, j3};
            key.insert(key.end(), ks.begin(), ks.end());
            auto it = parts.find(jet_mono(ks));
            out[key] = it == parts.end() ? Poly() : it->second * fact;
        }
    }
    return out;
}

FamilyMap collect_all(int n) {
    auto sys = cubic_from_ghlm(symbolic_ghlm(n));
    FamilyMap out;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c) out.merge(collect_symmetric(compatibility_expand(sys, a, b, c), n, a, b, c));
    return out;
}

FamilyMap emit_families(int n) {
    const Q half(1, 2), quarter(1, 4);
    auto G = [&](int a, int b) { return Poly::of_sym(G_sym(n, a, b)); };
    auto H = [&](int k, int a, int b) { return Poly::of_sym(H_sym(n, k, a, b)); };
    auto L = [&](int k, int j) { return Poly::of_sym(L_sym(n, k, j)); };
    auto M = [&](int k) { return Poly::of_sym(M_sym(n, k)); };
    auto dx = [&](const Poly &p, int j) { return p.partial(xvar(j)); };
    auto dy = [&](const Poly &p) { return p.partial(yvar(1)); };
    auto sum = [&](auto f) {
        Poly r;
        for (int k = 1; k <= n; ++k) r += f(k);
        return r;
    };
    FamilyMap out;
    for (int j1 = 1; j1 <= n; ++j1)
        for (int j2 = 1; j2 <= n; ++j2)
            for (int j3 = 1; j3 <= n; ++j3) {
                out[{0, j1, j2, j3}] = dx(G(j1, j2), j3) - dx(G(j1, j3), j2) +
                                       sum([&](int k) { return H(k, j1, j2) * G(k, j3); }) -
                                       sum([&](int k) { return H(k, j1, j3) * G(k, j2); });
                for (int k1 = 1; k1 <= n; ++k1) {
                    Poly e = delta(k1, j3) * dy(G(j1, j2)) - delta(k1, j2) * dy(G(j1, j3));
                    e += dx(H(k1, j1, j2), j3) - dx(H(k1, j1, j3), j2);
                    e += half * (G(j1, j3) * L(k1, j2)) - half * (G(j1, j2) * L(k1, j3));
                    e += half * delta(k1, j1) * sum([&](int k2) { return G(k2, j3) * L(k2, j2); });
                    e -= half * delta(k1, j1) * sum([&](int k2) { return G(k2, j2) * L(k2, j3); });
                    e += half * delta(k1, j2) * sum([&](int k2) { return G(k2, j3) * L(k2, j1); });
                    e -= half * delta(k1, j3) * sum([&](int k2) { return G(k2, j2) * L(k2, j1); });
                    e += sum([&](int k2) { return H(k1, k2, j3) * H(k2, j1, j2); });
                    e -= sum([&](int k2) { return H(k1, k2, j2) * H(k2, j1, j3); });
                    out[{1, j1, j2, j3, k1}] = e;
                }
                for (auto &ks : sorted_tuples(n, 2)) {
                    Poly e;
                    std::vector<int> k = ks;
                    do {
                        int a = k[0], b = k[1];
                        e += delta(b, j3) * dy(H(a, j1, j2)) - delta(b, j2) * dy(H(a, j1, j3));
                        e += half * delta(b, j2) * dx(L(a, j1), j3) - half * delta(b, j3) * dx(L(a, j1), j2);
                        e += half * delta(b, j1) * dx(L(a, j2), j3) - half * delta(b, j1) * dx(L(a, j3), j2);
                        e += delta(b, j2) * (G(j1, j3) * M(a)) - delta(b, j3) * (G(j1, j2) * M(a));
                        e += delta(a, j1) * delta(b, j2) * sum([&](int k3) { return G(k3, j3) * M(k3); });
                        e -= delta(a, j1) * delta(b, j3) * sum([&](int k3) { return G(k3, j2) * M(k3); });
                        e += half * delta(a, j1) * sum([&](int k3) { return H(b, k3, j3) * L(k3, j2); });
                        e -= half * delta(a, j1) * sum([&](int k3) { return H(b, k3, j2) * L(k3, j3); });
                        e += half * delta(a, j2) * sum([&](int k3) { return H(b, k3, j3) * L(k3, j1); });
                        e -= half * delta(a, j3) * sum([&](int k3) { return H(b, k3, j2) * L(k3, j1); });
                        e += half * delta(a, j3) * sum([&](int k3) { return H(k3, j1, j2) * L(b, k3); });
                        e -= half * delta(a, j2) * sum([&](int k3) { return H(k3, j1, j3) * L(b, k3); });
                    } while (std::next_permutation(k.begin(), k.end()));
                    if (ks[0] == ks[1]) e *= Q(2);  // both elements of S_2 give the same term
                    out[{2, j1, j2, j3, ks[0], ks[1]}] = e;
                }
                for (auto &ks : sorted_tuples(n, 3)) {
                    Poly e;
                    std::vector<int> perm{0, 1, 2};
                    do {
                        int p = ks[perm[0]], q = ks[perm[1]], r = ks[perm[2]];
                        e += half * delta(r, j3) * delta(q, j1) * dy(L(p, j2));
                        e -= half * delta(r, j2) * delta(q, j1) * dy(L(p, j3));
                        e += delta(r, j2) * delta(q, j1) * dx(M(p), j3) - delta(r, j3) * delta(q, j1) * dx(M(p), j2);
                        e += delta(r, j2) * delta(p, j1) * sum([&](int k4) { return H(q, k4, j3) * M(k4); });
                        e -= delta(r, j3) * delta(p, j1) * sum([&](int k4) { return H(q, k4, j2) * M(k4); });
                        e += quarter * delta(p, j1) * delta(r, j3) * sum([&](int k4) { return L(q, k4) * L(k4, j2); });
                        e -= quarter * delta(p, j1) * delta(r, j2) * sum([&](int k4) { return L(q, k4) * L(k4, j3); });
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    out[{3, j1, j2, j3, ks[0], ks[1], ks[2]}] = e;
                }
            }
    return out;
}

std::optional<Q> scale_between(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    auto &[m, qb] = *b.terms().begin();
    auto it = a.terms().find(m);
    if (it == a.terms().end()) return std::nullopt;
    Q s = it->second / qb;
    if (!(a == b * s)) return std::nullopt;
    return s;
}

ScaleMatch match_up_to_scale(const FamilyMap &a, const FamilyMap &b) {
    ScaleMatch r;
    std::set<FamilyKey> keys;
    for (auto &[k, _] : a) keys.insert(k);
    for (auto &[k, _] : b) keys.insert(k);
    auto get = [](const FamilyMap &m, const FamilyKey &k) -> const Poly & {
        auto it = m.find(k);
        return it == m.end() ? zero_poly() : it->second;
    };
    for (auto &k : keys) {
        const Poly &x = get(a, k), &y = get(b, k);
        if (x.is_zero() && y.is_zero()) {
            ++r.zero;
            continue;
        }
        auto s = scale_between(x, y);
        if (!s) {
            if (r.ok) {
                std::string w;
                for (int i : k) w += (w.empty() ? "" : ",") + std::to_string(i);
                r.witness = "key (" + w + ") differs";
            }
            r.ok = false;
            continue;
        }
        ++r.nonzero;
        ++r.scales[s->get_str()];
    }
    return r;
}

// ---- square functions -----------------------------------------------------

SymId transform_sym(int n, int r) { return r <= n ? field_sym(n, 1, false, r) : field_sym(n, 1, true, 1); }

Poly det_words(int n, const std::vector<std::vector<int>> &words) {
    const int N = n + 1;
    if ((int)words.size() != N) throw Error("det_words: need n+1 columns");
    std::vector<std::vector<Poly>> A(N, std::vector<Poly>(N));
    for (int r = 1; r <= N; ++r)
        for (int c = 0; c < N; ++c) {
            Poly p = Poly::of_sym(transform_sym(n, r));
            for (int w : words[c]) p = d_coord(p, n, w);
            A[r - 1][c] = p;
        }
    return det(A);
}

const Poly &SquareFns::numerator(int k, int a, int b) const {
    auto j = sorted({a, b});
    auto it = num.find({k, j[0], j[1]});
    if (it == num.end()) throw Error("square function index out of range");
    return it->second;
}

SquareFns square_functions(int n) {
    const int N = n + 1;
    SquareFns S;
    S.n = n;
    std::vector<std::vector<int>> base;
    for (int c = 1; c <= N; ++c) base.push_back({c});
    S.delta = det_words(n, base);
    for (int k = 1; k <= N; ++k)
        for (int a = 1; a <= N; ++a)
            for (int b = a; b <= N; ++b) {
                auto w = base;
                w[k - 1] = {a, b};
                S.num[{k, a, b}] = det_words(n, w);
            }
    return S;
}

GHLM ghlm_from_squares(int n, const SquareFn &sq) {
    const int N = n + 1;
    GHLM g;
    g.n = n;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            g.G[{a, b}] = -sq(N, a, b);
            for (int k = 1; k <= n; ++k)
                g.H[{k, a, b}] = sq(k, a, b) - delta(k, a) * sq(N, b, N) - delta(k, b) * sq(N, a, N);
        }
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) g.L[{k, j}] = Q(2) * sq(k, j, N) - delta(k, j) * sq(N, N, N);
        g.M[{k}] = sq(k, N, N);
    }
    return g;
}

Poly formal_square(int n, int k, int a, int b) { return Poly::of_sym(square_sym(n, k, a, b)); }

std::map<std::pair<int, int>, Fraction> derive_target_system(int n) {
    if (n < 1) throw Error("derive_target_system: n >= 1");
    std::vector<Poly> X;
    for (int j = 1; j <= n; ++j) X.push_back(Poly::of_sym(transform_sym(n, j)));
    Poly Y = Poly::of_sym(transform_sym(n, n + 1));
    // D_k X^j Y_{X^j} = D_k Y, solved by Cramer: Y_{X^j} = N_j / dn.
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n));
    std::vector<Poly> rhs(n);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) J[k - 1][j - 1] = total_diff(k, X[j - 1]);
        rhs[k - 1] = total_diff(k, Y);
    }
    Poly dn = det(J);
    std::vector<Poly> N(n);
    for (int j = 0; j < n; ++j) {
        auto Jj = J;
        for (int k = 0; k < n; ++k) Jj[k][j] = rhs[k];
        N[j] = det(Jj);
    }
    auto solve_for = [&](int k, int i) {
        Poly E = -(total_diff(k, total_diff(i, Y)) * dn);
        for (int j = 0; j < n; ++j) E += total_diff(k, total_diff(i, X[j])) * N[j];
        VarId v = second_jet(k, i);
        Poly a = E.partial(v);
        if (a.is_zero() || a.has_var(v)) throw Error("derive_target_system: equation not affine in the second jet");
        Poly b = E - a * Poly::of_var(v);
        for (VarId w : b.vars())
            if (var(w).kind == VarKind::Dep && var(w).idx.size() >= 2)
                throw Error("derive_target_system: several second jets in one equation");
        return Fraction(-b, a);
    };
    std::map<std::pair<int, int>, Fraction> out;
    for (int k = 1; k <= n; ++k)
        for (int i = k; i <= n; ++i) {
            Fraction f = solve_for(k, i);
            if (i != k && !fraction_equal(f, solve_for(i, k)))
                throw Error("derive_target_system: (k,i) and (i,k) disagree");
            out[{k, i}] = f;
        }
    return out;
}

std::map<std::pair<int, int>, Fraction> square_target_system(const SquareFns &S) {
    GHLM g = ghlm_from_squares(S.n, [&](int k, int a, int b) { return S.numerator(k, a, b); });
    std::map<std::pair<int, int>, Fraction> out;
    for (int a = 1; a <= S.n; ++a)
        for (int b = a; b <= S.n; ++b) out[{a, b}] = Fraction(cubic_entry(g, a, b), S.delta);
    return out;
}

Fraction eval_squares(const Poly &p, const SquareFns &S) {
    Poly num, rest = p;
    for (SymId s : p.syms()) {
        if (!is_named(s, "Sq")) continue;
        auto &c = func(sym(s).f).comp;
        Poly coef = p.partial_atom(sym_atom(s));
        for (SymId t : coef.syms())
            if (is_named(t, "Sq")) throw Error("eval_squares: expression is not linear in square functions");
        num += coef * S.numerator(c[0], c[1], c[2]);
        rest -= coef * Poly::of_sym(s);
    }
    if (!rest.is_zero()) throw Error("eval_squares: term without a square function");
    return Fraction(num, S.delta);
}

// ---- auxiliary systems ----------------------------------------------------

std::map<std::vector<int>, Poly> quasi_inversion(int n) {
    const int N = n + 1;
    const Q half(1, 2);
    auto G = [&](int a, int b) { return Poly::of_sym(G_sym(n, a, b)); };
    auto H = [&](int k, int a, int b) { return Poly::of_sym(H_sym(n, k, a, b)); };
    auto L = [&](int k, int j) { return Poly::of_sym(L_sym(n, k, j)); };
    auto M = [&](int k) { return Poly::of_sym(M_sym(n, k)); };
    auto T = [&](int j) { return Poly::of_sym(theta_sym(n, j)); };
    std::map<std::vector<int>, Poly> pi;
    for (int k = 1; k <= N; ++k)
        for (int a = 1; a <= N; ++a)
            for (int b = a; b <= N; ++b) {
                Poly p;
                if (k <= n) {
                    if (b <= n)
                        p = H(k, a, b) - half * delta(k, a) * H(b, b, b) - half * delta(k, b) * H(a, a, a) +
                            half * delta(k, a) * T(b) + half * delta(k, b) * T(a);
                    else if (a <= n)
                        p = half * L(k, a) + half * delta(k, a) * T(N);
                    else
                        p = M(k);
                } else {
                    if (b <= n)
                        p = -G(a, b);
                    else if (a <= n)
                        p = -half * H(a, a, a) + half * T(a);
                    else
                        p = T(N);
                }
                pi[{k, a, b}] = p;
            }
    return pi;
}

size_t square_count(int n) { return (size_t)(n + 1) * (n + 1) * (n + 2) / 2; }
size_t ghlm_count(int n) { return (size_t)n * (n + 1) / 2 + (size_t)n * n * (n + 1) / 2 + (size_t)n * n + n; }

std::map<std::vector<int>, Poly> first_aux_compat(int n) {
    const int N = n + 1;
    auto P = [&](int k, int a, int b) { return Poly::of_sym(pi_sym(n, k, a, b)); };
    std::map<std::vector<int>, Poly> out;
    for (int j1 = 1; j1 <= N; ++j1)
        for (int j2 = 1; j2 <= N; ++j2)
            for (int j3 = 1; j3 <= N; ++j3)
                for (int k1 = 1; k1 <= N; ++k1) {
                    Poly e = d_coord(P(k1, j1, j2), n, j3) - d_coord(P(k1, j1, j3), n, j2);
                    for (int k2 = 1; k2 <= N; ++k2)
                        e += P(k2, j1, j2) * P(k1, j3, k2) - P(k2, j1, j3) * P(k1, j2, k2);
                    out[{j1, j2, j3, k1}] = e;
                }
    return out;
}

std::map<std::vector<int>, Poly> first_aux_split(int n) {
    const int N = n + 1;
    auto P = [&](int k, int a, int b) { return Poly::of_sym(pi_sym(n, k, a, b)); };
    auto dx = [&](const Poly &p, int j) { return d_coord(p, n, j); };
    auto dy = [&](const Poly &p) { return d_coord(p, n, N); };
    auto sum = [&](auto f) {
        Poly r;
        for (int k = 1; k <= n; ++k) r += f(k);
        return r;
    };
    std::map<std::vector<int>, Poly> out;
    for (int j1 = 1; j1 <= n; ++j1) {
        out[{3, j1}] = dy(P(N, j1, N)) - dx(P(N, N, N), j1) + sum([&](int k2) { return P(k2, j1, N) * P(N, N, k2); }) +
                       split_marked_terms(n, j1) - sum([&](int k2) { return P(k2, N, N) * P(N, j1, k2); });
        for (int k1 = 1; k1 <= n; ++k1)
            out[{6, j1, k1}] = dy(P(k1, j1, N)) - dx(P(k1, N, N), j1) +
                               sum([&](int k2) { return P(k2, j1, N) * P(k1, N, k2); }) + P(N, j1, N) * P(k1, N, N) -
                               sum([&](int k2) { return P(k2, N, N) * P(k1, j1, k2); }) - P(N, N, N) * P(k1, j1, N);
        for (int j2 = 1; j2 <= n; ++j2) {
            out[{2, j1, j2}] = dy(P(N, j1, j2)) - dx(P(N, j1, N), j2) +
                               sum([&](int k2) { return P(k2, j1, j2) * P(N, N, k2); }) + P(N, j1, j2) * P(N, N, N) -
                               sum([&](int k2) { return P(k2, j1, N) * P(N, j2, k2); }) - P(N, j1, N) * P(N, j2, N);
            for (int k1 = 1; k1 <= n; ++k1)
                out[{5, j1, j2, k1}] = dy(P(k1, j1, j2)) - dx(P(k1, j1, N), j2) +
                                       sum([&](int k2) { return P(k2, j1, j2) * P(k1, N, k2); }) +
                                       P(N, j1, j2) * P(k1, N, N) -
                                       sum([&](int k2) { return P(k2, j1, N) * P(k1, j2, k2); }) -
                                       P(N, j1, N) * P(k1, j2, N);
            for (int j3 = 1; j3 <= n; ++j3) {
                out[{1, j1, j2, j3}] = dx(P(N, j1, j2), j3) - dx(P(N, j1, j3), j2) +
                                       sum([&](int k2) { return P(k2, j1, j2) * P(N, j3, k2); }) +
                                       P(N, j1, j2) * P(N, j3, N) -
                                       sum([&](int k2) { return P(k2, j1, j3) * P(N, j2, k2); }) -
                                       P(N, j1, j3) * P(N, j2, N);
                for (int k1 = 1; k1 <= n; ++k1)
                    out[{4, j1, j2, j3, k1}] = dx(P(k1, j1, j2), j3) - dx(P(k1, j1, j3), j2) +
                                               sum([&](int k2) { return P(k2, j1, j2) * P(k1, j3, k2); }) +
                                               P(N, j1, j2) * P(k1, j3, N) -
                                               sum([&](int k2) { return P(k2, j1, j3) * P(k1, j2, k2); }) -
                                               P(N, j1, j3) * P(k1, j2, N);
            }
        }
    }
    return out;
}

Poly split_marked_terms(int n, int j1) {
    const int N = n + 1;
    auto P = [&](int k, int a, int b) { return Poly::of_sym(pi_sym(n, k, a, b)); };
    return P(N, j1, N) * P(N, N, N) - P(N, N, N) * P(N, j1, N);
}

SymId theta_derivative(int n, int a, int b) { return *formal_partial_sym(theta_sym(n, a), flat_coord(n, b)); }

SecondAux solve_second_aux(int n) {
    if (n < 2) throw Error("solve_second_aux: n >= 2");
    const int N = n + 1;
    std::map<FuncId, Poly> fn;
    for (auto &[k, p] : quasi_inversion(n)) fn[sym(pi_sym(n, k[0], k[1], k[2])).f] = p;
    std::map<std::vector<int>, Poly> eqs;
    for (auto &[k, e] : first_aux_compat(n)) eqs[k] = instantiate(e, fn);

    std::vector<SymId> unknowns;
    std::map<SymId, size_t> col;
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            col[theta_derivative(n, a, b)] = unknowns.size();
            unknowns.push_back(theta_derivative(n, a, b));
        }
    // One relation per unknown: (j1,j2,y | n+1), (y,j,y | n+1), (j,j,y | j), (y,1,y | 1).
    std::vector<std::vector<int>> pivots;
    for (int j1 = 1; j1 <= n; ++j1)
        for (int j2 = 1; j2 <= n; ++j2) pivots.push_back({j1, j2, N, N});
    for (int j = 1; j <= n; ++j) {
        pivots.push_back({N, j, N, N});
        pivots.push_back({j, j, N, j});
    }
    pivots.push_back({N, 1, N, 1});

    auto split = [&](const Poly &e, std::vector<Q> &row) {
        Poly rest = e;
        for (SymId u : unknowns) {
            Poly c = e.partial_atom(sym_atom(u));
            if (c.is_zero()) continue;
            if (!c.is_constant()) throw Error("solve_second_aux: relation not linear in Theta derivatives");
            row[col.at(u)] = c.constant_term();
            rest -= c * Poly::of_sym(u);
        }
        return rest;
    };
    std::vector<std::vector<Q>> A;
    std::vector<Poly> b;
    for (auto &k : pivots) {
        std::vector<Q> row(unknowns.size(), Q(0));
        Poly rest = split(eqs.at(k), row);
        A.push_back(row);
        b.push_back(-rest);
    }
    auto sol = solve_poly(A, b, unknowns.size());
    if (!sol.x) throw Error("solve_second_aux: selected relations are inconsistent");
    if (rank(A) != unknowns.size()) throw Error("solve_second_aux: selected relations are singular");

    SecondAux out;
    out.n = n;
    for (size_t i = 0; i < unknowns.size(); ++i) out.solution[unknowns[i]] = (*sol.x)[i];
    auto subst = [&](SymId s) -> std::optional<Poly> {
        auto it = out.solution.find(s);
        if (it == out.solution.end()) return std::nullopt;
        return it->second;
    };
    for (auto &[k, e] : eqs) {
        Poly r = replace_syms(e, subst);
        if (!r.is_zero()) out.residual[k] = r;
    }
    return out;
}

Poly expand_compat_first(const SecondAux &aux, int j1, int j2, int j3) {
    const int n = aux.n;
    auto S = [&](int a, int b) { return aux.solution.at(theta_derivative(n, a, b)); };
    Poly e = d_coord(S(j1, j2), n, j3) - d_coord(S(j1, j3), n, j2);
    return replace_syms(e, [&](SymId s) -> std::optional<Poly> {
        auto it = aux.solution.find(s);
        if (it == aux.solution.end()) return std::nullopt;
        return it->second;
    });
}

// ---- reduction modulo the families ----------------------------------------

namespace {
std::vector<int> func_weight(int n, const FuncSym &f) {
    const int N = n + 1;
    std::vector<int> w(N, 0);
    auto &c = f.comp;
    auto e = [&](int i, int s) { w[i - 1] += s; };
    if (f.name == "G") {
        e(N, 1), e(c[0], -1), e(c[1], -1);
    } else if (f.name == "H" || f.name == "Pi" || f.name == "Sq") {
        e(c[0], 1), e(c[1], -1), e(c[2], -1);
    } else if (f.name == "L") {
        e(c[0], 1), e(c[1], -1), e(N, -1);
    } else if (f.name == "M") {
        e(c[0], 1), e(N, -2);
    } else if (f.name == "Theta") {
        e(c[0], -1);
    } else {
        throw Error("flat_weight: no weight for " + f.name);
    }
    return w;
}
}  // namespace

std::vector<int> flat_weight(int n, const Mono &m) {
    std::vector<int> w(n + 1, 0);
    for (Atom a : m) {
        if (!atom_is_sym(a)) throw Error("flat_weight: variables are not graded");
        const DerivSym &d = sym(atom_id(a));
        auto fw = func_weight(n, func(d.f));
        for (int i = 0; i <= n; ++i) w[i] += fw[i];
        for (VarId v : d.order) w[var(v).kind == VarKind::Indep ? var(v).index - 1 : n] -= 1;
    }
    return w;
}

const char *to_string(Reduction r) {
    switch (r) {
        case Reduction::Zero: return "zero";
        case Reduction::Reduced: return "reduced";
        default: return "inconclusive";
    }
}

FamilyReducer::FamilyReducer(int n, int max_deg) : n_(n), max_deg_(max_deg) {
    const int N = n + 1;
    std::set<Poly::Terms> seen;
    for (auto &[k, e] : emit_families(n)) {
        if (e.is_zero()) continue;
        Poly norm = e * (1 / e.terms().begin()->second);
        if (!seen.insert(norm.terms()).second) continue;
        gens_.push_back(norm);
        for (int c = 1; c <= N; ++c) {
            Poly d = d_coord(norm, n, c);
            if (!d.is_zero()) gens_.push_back(d);
        }
    }
    GHLM g = symbolic_ghlm(n);
    for (auto *fam : {&g.G, &g.H, &g.L, &g.M})
        for (auto &[k, p] : *fam) alphabet_.push_back(p.syms().front());
    for (int j = 1; j <= N; ++j) alphabet_.push_back(theta_sym(n, j));
    std::vector<Mono> monos{{}};
    std::vector<Mono> frontier{{}};
    for (int d = 1; d <= max_deg_; ++d) {
        std::vector<Mono> next;
        for (auto &m : frontier)
            for (size_t i = 0; i < alphabet_.size(); ++i) {
                Atom a = sym_atom(alphabet_[i]);
                if (!m.empty() && a < m.back()) continue;
                Mono mm = m;
                mm.push_back(a);
                next.push_back(mm);
            }
        monos.insert(monos.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (auto &m : monos) mult_by_weight_[flat_weight(n, m)].push_back(Poly::monomial(m, Q(1)));
}

void FamilyReducer::build(const std::vector<int> &w) {
    if (!built_.insert(w).second) return;
    auto &basis = basis_[w];
    for (auto &g : gens_) {
        auto wg = flat_weight(n_, g.terms().begin()->first);
        std::vector<int> need(w.size());
        for (size_t i = 0; i < w.size(); ++i) need[i] = w[i] - wg[i];
        auto it = mult_by_weight_.find(need);
        if (it == mult_by_weight_.end()) continue;
        for (auto &mult : it->second) {
            Poly r = g * mult;
            while (!r.is_zero()) {
                auto &[lead, q] = *r.terms().begin();
                auto b = basis.find(lead);
                if (b == basis.end()) {
                    Poly norm = r * (1 / q);
                    basis.emplace(lead, std::move(norm));
                    break;
                }
                r -= b->second * Q(q);
            }
        }
    }
}

Reduction FamilyReducer::reduce(const Poly &p) {
    if (p.is_zero()) return Reduction::Zero;
    std::map<std::vector<int>, Poly> parts;
    for (auto &[m, q] : p.terms()) parts[flat_weight(n_, m)].add_term(m, q);
    for (auto &[w, part] : parts) {
        build(w);
        auto &basis = basis_[w];
        Poly r = part;
        while (!r.is_zero()) {
            auto &[lead, q] = *r.terms().begin();
            auto b = basis.find(lead);
            if (b == basis.end()) return Reduction::Inconclusive;
            r -= b->second * Q(q);
        }
    }
    return Reduction::Reduced;
}

}  // namespace jetsym
