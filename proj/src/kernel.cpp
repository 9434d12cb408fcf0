#include "jetsym/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace jetsym {

namespace {

template <class T>
struct Interner {
    std::deque<T> items;
    std::map<T, uint32_t> index;
    mutable std::shared_mutex mu;

    uint32_t get(const T &v) {
        {
            std::shared_lock lk(mu);
            auto it = index.find(v);
            if (it != index.end()) return it->second;
        }
        std::unique_lock lk(mu);
        auto it = index.find(v);
        if (it != index.end()) return it->second;
        uint32_t id = (uint32_t)items.size();
        items.push_back(v);
        index.emplace(v, id);
        return id;
    }
    const T &at(uint32_t id) const {
        std::shared_lock lk(mu);
        return items.at(id);
    }
};

Interner<Var> &vars_tab() {
    static Interner<Var> t;
    return t;
}
Interner<FuncSym> &funcs_tab() {
    static Interner<FuncSym> t;
    return t;
}
Interner<DerivSym> &syms_tab() {
    static Interner<DerivSym> t;
    return t;
}

struct PartialCache {
    std::map<std::pair<SymId, VarId>, std::optional<SymId>> m;
    std::shared_mutex mu;
};
PartialCache &pcache() {
    static PartialCache c;
    return c;
}

}  // namespace

VarId var_id(const Var &v) { return vars_tab().get(v); }
const Var &var(VarId id) { return vars_tab().at(id); }

VarId xvar(int i) { return var_id(Var{VarKind::Indep, i, {}, ""}); }
VarId yvar(int j, MultiIndex K) {
    std::sort(K.begin(), K.end());
    return var_id(Var{VarKind::Dep, j, std::move(K), ""});
}
VarId param(const std::string &name) { return var_id(Var{VarKind::Param, 0, {}, name}); }

FuncId func_id(const FuncSym &f) {
    if (f.deps.empty()) throw Error("function " + f.name + ": empty dependency set");
    auto d = f.deps;
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) != d.end())
        throw Error("function " + f.name + ": duplicate dependency");
    return funcs_tab().get(f);
}
const FuncSym &func(FuncId id) { return funcs_tab().at(id); }

SymId sym_id(const DerivSym &d) {
    DerivSym c = d;
    std::sort(c.order.begin(), c.order.end());
    return syms_tab().get(c);
}
const DerivSym &sym(SymId id) { return syms_tab().at(id); }

SymId fsym(const std::string &name, std::vector<int> comp, std::vector<VarId> deps) {
    return sym_id(DerivSym{func_id(FuncSym{name, std::move(comp), std::move(deps)}), {}});
}

bool depends_on(SymId s, VarId v) {
    const auto &deps = func(sym(s).f).deps;
    return std::find(deps.begin(), deps.end(), v) != deps.end();
}

std::optional<SymId> formal_partial_sym(SymId s, VarId v) {
    auto &c = pcache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.m.find({s, v});
        if (it != c.m.end()) return it->second;
    }
    std::optional<SymId> r;
    if (depends_on(s, v)) {
        DerivSym d = sym(s);
        d.order.push_back(v);
        r = sym_id(d);
    }
    std::unique_lock lk(c.mu);
    c.m[{s, v}] = r;
    return r;
}

// ---- Poly ------------------------------------------------------------------

Poly::Poly(int c) {
    if (c != 0) t_[Mono{}] = Q(c);
}
// Coefficients entering from outside are canonicalized (mpq_class(9, 3) is not).
namespace {
Q canonical(const Q &c) {
    Q r = c;
    r.canonicalize();
    return r;
}
}  // namespace

Poly::Poly(const Q &c) {
    if (c != 0) t_[Mono{}] = canonical(c);
}
Poly Poly::of_var(VarId v) { return monomial(Mono{var_atom(v)}, 1); }
Poly Poly::of_sym(SymId s) { return monomial(Mono{sym_atom(s)}, 1); }
Poly Poly::monomial(Mono m, const Q &c) {
    Poly p;
    std::sort(m.begin(), m.end());
    if (c != 0) p.t_[std::move(m)] = canonical(c);
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
Q Poly::constant_term() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const Mono &m, const Q &c) {
    if (c == 0) return;
    Q cc = canonical(c);
    auto [it, ins] = t_.try_emplace(m, cc);
    if (ins) {
        if (t_.size() > max_terms()) check_terms(*this);
    } else {
        it->second += cc;
        if (it->second == 0) t_.erase(it);
    }
}

Poly &Poly::operator+=(const Poly &o) {
    for (auto &[m, c] : o.t_) add_term(m, c);
    return *this;
}
Poly &Poly::operator-=(const Poly &o) {
    for (auto &[m, c] : o.t_) add_term(m, -c);
    return *this;
}
Poly &Poly::operator*=(const Q &c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    Q cc = canonical(c);
    for (auto &kv : t_) kv.second *= cc;
    return *this;
}

static Mono merge(const Mono &a, const Mono &b) {
    Mono r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Poly operator*(const Poly &a, const Poly &b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (auto &[ma, ca] : a.t_)
        for (auto &[mb, cb] : b.t_) r.add_term(merge(ma, mb), ca * cb);
    check_terms(r);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

namespace {
// Visit each distinct atom of m with its multiplicity and the monomial with one copy removed.
template <class F>
void each_atom(const Mono &m, F &&f) {
    size_t i = 0;
    while (i < m.size()) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        Mono rest;
        rest.reserve(m.size() - 1);
        rest.insert(rest.end(), m.begin(), m.begin() + i);
        rest.insert(rest.end(), m.begin() + i + 1, m.end());
        f(m[i], (int)(j - i), rest);
        i = j;
    }
}

Mono insert_atom(Mono m, Atom a) {
    m.insert(std::upper_bound(m.begin(), m.end(), a), a);
    return m;
}
}  // namespace

Poly Poly::partial(VarId v) const {
    Poly r;
    for (auto &[m, c] : t_) {
        each_atom(m, [&](Atom a, int e, const Mono &rest) {
            if (!atom_is_sym(a)) {
                if (a == v) r.add_term(rest, c * e);
            } else if (auto s = formal_partial_sym(atom_id(a), v)) {
                r.add_term(insert_atom(rest, sym_atom(*s)), c * e);
            }
        });
    }
    return r;
}

Poly Poly::partial_atom(Atom at) const {
    Poly r;
    for (auto &[m, c] : t_)
        each_atom(m, [&](Atom a, int e, const Mono &rest) {
            if (a == at) r.add_term(rest, c * e);
        });
    return r;
}

bool Poly::has_var(VarId v) const {
    for (auto &[m, c] : t_)
        for (Atom a : m) {
            if (!atom_is_sym(a) && a == v) return true;
            if (atom_is_sym(a) && depends_on(atom_id(a), v)) return true;
        }
    return false;
}

std::vector<VarId> Poly::vars() const {
    std::vector<VarId> r;
    for (auto &[m, c] : t_)
        for (Atom a : m)
            if (!atom_is_sym(a)) r.push_back(a);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::vector<SymId> Poly::syms() const {
    std::vector<SymId> r;
    for (auto &[m, c] : t_)
        for (Atom a : m)
            if (atom_is_sym(a)) r.push_back(atom_id(a));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

static Poly mul_mono(const Poly &p, const Mono &m, const Q &c) {
    Poly r;
    for (auto &[pm, pc] : p.terms()) r.add_term(merge(pm, m), pc * c);
    return r;
}

Poly derive(const Poly &p, const Image &image) {
    std::unordered_map<Atom, Poly> memo;
    auto datom = [&](Atom a) -> const Poly & {
        auto it = memo.find(a);
        if (it != memo.end()) return it->second;
        Poly d;
        if (!atom_is_sym(a)) {
            if (auto *im = image(a)) d = *im;
        } else {
            SymId s = atom_id(a);
            for (VarId v : func(sym(s).f).deps) {
                const Poly *im = image(v);
                if (!im || im->is_zero()) continue;
                d += *im * Poly::of_sym(*formal_partial_sym(s, v));
            }
        }
        return memo.emplace(a, std::move(d)).first->second;
    };
    Poly r;
    for (auto &[m, c] : p.terms()) {
        each_atom(m, [&](Atom a, int e, const Mono &rest) {
            const Poly &d = datom(a);
            if (d.is_zero()) return;
            for (auto &[dm, dc] : d.terms()) r.add_term(merge(rest, dm), c * e * dc);
        });
    }
    check_terms(r);
    return r;
}

Poly substitute(const Poly &p, const std::map<VarId, Poly> &sub) {
    if (sub.empty()) return p;
    Poly r;
    std::map<std::pair<VarId, int>, Poly> powc;
    for (auto &[m, c] : p.terms()) {
        Mono keep;
        Poly factor(1);
        size_t i = 0;
        while (i < m.size()) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            Atom a = m[i];
            int e = (int)(j - i);
            if (atom_is_sym(a)) {
                for (auto &[v, _] : sub)
                    if (depends_on(atom_id(a), v))
                        throw Error("substitute: symbol depends on substituted variable");
                keep.insert(keep.end(), m.begin() + i, m.begin() + j);
            } else if (auto it = sub.find(a); it != sub.end()) {
                auto key = std::make_pair((VarId)a, e);
                auto pit = powc.find(key);
                if (pit == powc.end()) pit = powc.emplace(key, it->second.pow(e)).first;
                factor = factor * pit->second;
            } else {
                keep.insert(keep.end(), m.begin() + i, m.begin() + j);
            }
            i = j;
        }
        r += mul_mono(factor, keep, c);
    }
    check_terms(r);
    return r;
}

Poly replace_syms(const Poly &p, const std::function<std::optional<Poly>(SymId)> &f) {
    Poly r;
    std::unordered_map<SymId, std::optional<Poly>> memo;
    for (auto &[m, c] : p.terms()) {
        Mono keep;
        Poly factor(1);
        for (Atom a : m) {
            if (atom_is_sym(a)) {
                SymId s = atom_id(a);
                auto it = memo.find(s);
                if (it == memo.end()) it = memo.emplace(s, f(s)).first;
                if (it->second) {
                    factor = factor * *it->second;
                    continue;
                }
            }
            keep.push_back(a);
        }
        if (!factor.is_zero()) r += mul_mono(factor, keep, c);
    }
    return r;
}

Poly instantiate(const Poly &p, const std::map<FuncId, Poly> &fn) {
    return replace_syms(p, [&](SymId s) -> std::optional<Poly> {
        const auto &d = sym(s);
        auto it = fn.find(d.f);
        if (it == fn.end()) return std::nullopt;
        Poly q = it->second;
        for (VarId v : d.order) q = q.partial(v);
        return q;
    });
}

std::map<Mono, Poly> collect(const Poly &p, const std::function<bool(VarId)> &select) {
    std::map<Mono, Poly> r;
    for (auto &[m, c] : p.terms()) {
        Mono key, rest;
        for (Atom a : m) (!atom_is_sym(a) && select(a) ? key : rest).push_back(a);
        r[key].add_term(rest, c);
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

int degree_in(const Poly &p, const std::function<bool(VarId)> &select) {
    int d = -1;
    for (auto &[m, c] : p.terms()) {
        int k = 0;
        for (Atom a : m)
            if (!atom_is_sym(a) && select(a)) ++k;
        d = std::max(d, k);
    }
    return d;
}

size_t max_terms() {
    static size_t v = [] {
        const char *e = std::getenv("JETSYM_MAX_TERMS");
        if (e && *e) return (size_t)std::strtoull(e, nullptr, 10);
        return (size_t)5000000;
    }();
    return v;
}

void check_terms(const Poly &p) {
    if (p.size() > max_terms())
        throw Error("term count " + std::to_string(p.size()) + " exceeds JETSYM_MAX_TERMS");
}

// ---- Fraction --------------------------------------------------------------

Fraction::Fraction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error("fraction with zero denominator");
}

Fraction operator+(const Fraction &a, const Fraction &b) {
    if (a.den == b.den) return Fraction(a.num + b.num, a.den);
    return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
}
Fraction operator-(const Fraction &a) { return Fraction(-a.num, a.den); }
Fraction operator-(const Fraction &a, const Fraction &b) { return a + (-b); }
Fraction operator*(const Fraction &a, const Fraction &b) {
    return Fraction(a.num * b.num, a.den * b.den);
}
Fraction operator/(const Fraction &a, const Fraction &b) {
    if (b.num.is_zero()) throw Error("fraction division by zero");
    return Fraction(a.num * b.den, a.den * b.num);
}
bool fraction_equal(const Fraction &a, const Fraction &b) {
    if (a.den.is_zero() || b.den.is_zero()) throw Error("fraction with zero denominator");
    return (a.num * b.den - b.num * a.den).is_zero();
}
bool is_zero(const Fraction &a) { return a.num.is_zero(); }

// ---- linear algebra --------------------------------------------------------

std::optional<std::vector<Q>> solve_linear(const std::vector<std::vector<Q>> &A,
                                           const std::vector<Q> &b) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<std::vector<Q>> M(rows);
    for (size_t i = 0; i < rows; ++i) {
        M[i] = A[i];
        M[i].push_back(b[i]);
        for (auto &q : M[i]) q.canonicalize();
    }
    std::vector<int> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        Q inv = 1 / M[r][c];
        for (size_t k = c; k <= cols; ++k) M[r][k] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Q f = M[i][c];
            for (size_t k = c; k <= cols; ++k)
                if (M[r][k] != 0) M[i][k] -= f * M[r][k];
        }
        pivcol.push_back((int)c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (M[i][cols] != 0) return std::nullopt;
    std::vector<Q> x(cols, Q(0));
    for (size_t i = 0; i < r; ++i) x[pivcol[i]] = M[i][cols];
    return x;
}

size_t rank(std::vector<std::vector<Q>> M) {
    for (auto &row : M)
        for (auto &q : row) q.canonicalize();
    size_t rows = M.size(), cols = rows ? M[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (M[i][c] == 0) continue;
            Q f = M[i][c] / M[r][c];
            for (size_t k = c; k < cols; ++k) M[i][k] -= f * M[r][k];
        }
        ++r;
    }
    return r;
}

}  // namespace jetsym
