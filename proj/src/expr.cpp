#include "jetsym/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace jetsym {

std::string ExprContext::dep_name(int j) const {
    if (j >= 1 && j <= (int)dep_names.size()) return dep_names[j - 1];
    return m == 1 ? "y" : "y" + std::to_string(j);
}

std::vector<VarId> ExprContext::base_vars() const {
    std::vector<VarId> r;
    for (int i = 1; i <= n; ++i) r.push_back(xvar(i));
    for (int j = 1; j <= m; ++j) r.push_back(yvar(j));
    return r;
}

std::string to_string(const Q &q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string var_name(VarId id, const ExprContext &ctx) {
    const Var &v = var(id);
    switch (v.kind) {
    case VarKind::Indep:
        return ctx.n == 1 && v.index == 1 ? "x" : "x" + std::to_string(v.index);
    case VarKind::Param:
        return v.name;
    case VarKind::Dep: {
        std::string s = ctx.dep_name(v.index);
        if (v.idx.empty()) return s;
        s += "[";
        for (size_t i = 0; i < v.idx.size(); ++i) s += (i ? "," : "") + std::to_string(v.idx[i]);
        return s + "]";
    }
    }
    return "?";
}

namespace {

bool var_less(VarId a, VarId b) {
    if (a == b) return false;
    const Var &x = var(a), &y = var(b);
    auto rank = [](VarKind k) { return k == VarKind::Param ? 0 : k == VarKind::Indep ? 1 : 2; };
    if (rank(x.kind) != rank(y.kind)) return rank(x.kind) < rank(y.kind);
    if (x.kind == VarKind::Dep && x.idx.size() != y.idx.size()) return x.idx.size() < y.idx.size();
    return std::tie(x.index, x.idx, x.name) < std::tie(y.index, y.idx, y.name);
}

std::vector<VarId> sorted_vars(std::vector<VarId> v) {
    std::sort(v.begin(), v.end(), var_less);
    return v;
}

bool sym_less(SymId a, SymId b) {
    if (a == b) return false;
    const DerivSym &x = sym(a), &y = sym(b);
    const FuncSym &fx = func(x.f), &fy = func(y.f);
    if (fx.name != fy.name) return fx.name < fy.name;
    if (fx.comp != fy.comp) return fx.comp < fy.comp;
    if (x.order.size() != y.order.size()) return x.order.size() < y.order.size();
    auto ox = sorted_vars(x.order), oy = sorted_vars(y.order);
    for (size_t i = 0; i < ox.size(); ++i)
        if (ox[i] != oy[i]) return var_less(ox[i], oy[i]);
    return fx.deps < fy.deps;
}

bool atom_less(Atom a, Atom b) {
    bool sa = atom_is_sym(a), sb = atom_is_sym(b);
    if (sa != sb) return sb;  // variables first
    return sa ? sym_less(atom_id(a), atom_id(b)) : var_less(a, b);
}

bool is_jet_atom(Atom a) { return !atom_is_sym(a) && is_jet(a); }

Mono canon(Mono m) {
    std::stable_sort(m.begin(), m.end(), atom_less);
    return m;
}

bool mono_less(const Mono &a, const Mono &b) {
    auto jd = [](const Mono &m) { return std::count_if(m.begin(), m.end(), is_jet_atom); };
    auto da = jd(a), db = jd(b);
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    Mono ca = canon(a), cb = canon(b);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end(), atom_less);
}

std::string atoms_str(const Mono &m, const ExprContext &ctx) {
    Mono c = canon(m);
    std::string s;
    size_t i = 0;
    while (i < c.size()) {
        size_t j = i;
        while (j < c.size() && c[j] == c[i]) ++j;
        if (!s.empty()) s += "*";
        s += atom_is_sym(c[i]) ? sym_name(atom_id(c[i]), ctx) : var_name(c[i], ctx);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

struct Piece {
    bool neg;
    std::string body;
};

Piece term_piece(const Mono &m, const Q &c, const ExprContext &ctx) {
    Q a = abs(c);
    if (m.empty()) return {c < 0, to_string(a)};
    std::string at = atoms_str(m, ctx);
    if (a == 1) return {c < 0, at};
    return {c < 0, to_string(a) + "*" + at};
}

std::string join(const std::vector<Piece> &ps) {
    if (ps.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i == 0)
            s += ps[i].neg ? "-" + ps[i].body : ps[i].body;
        else
            s += (ps[i].neg ? " - " : " + ") + ps[i].body;
    }
    return s;
}

std::vector<std::pair<Mono, Q>> sorted_terms(const Poly &p) {
    std::vector<std::pair<Mono, Q>> v(p.terms().begin(), p.terms().end());
    std::sort(v.begin(), v.end(), [](auto &a, auto &b) { return mono_less(a.first, b.first); });
    return v;
}

}  // namespace

std::string sym_name(SymId s, const ExprContext &ctx) {
    const DerivSym &d = sym(s);
    const FuncSym &f = func(d.f);
    std::string r = f.name;
    if (!f.comp.empty()) {
        r += "{";
        for (size_t i = 0; i < f.comp.size(); ++i) r += (i ? "," : "") + std::to_string(f.comp[i]);
        r += "}";
    }
    if (!d.order.empty()) {
        auto o = sorted_vars(d.order);
        r += "_{";
        size_t i = 0;
        bool first = true;
        while (i < o.size()) {
            size_t j = i;
            while (j < o.size() && o[j] == o[i]) ++j;
            if (!first) r += ",";
            first = false;
            r += var_name(o[i], ctx);
            if (j - i > 1) r += "^" + std::to_string(j - i);
            i = j;
        }
        r += "}";
    }
    return r;
}

std::string to_string(const Poly &p, const ExprContext &ctx, PrintOptions opt) {
    if (!opt.group_jets) {
        std::vector<Piece> ps;
        for (auto &[m, c] : sorted_terms(p)) ps.push_back(term_piece(m, c, ctx));
        return join(ps);
    }
    auto groups = collect(p, [](VarId v) { return is_jet(v); });
    std::vector<std::pair<Mono, Poly>> gs(groups.begin(), groups.end());
    std::sort(gs.begin(), gs.end(), [](auto &a, auto &b) { return mono_less(a.first, b.first); });
    std::vector<Piece> ps;
    for (auto &[jm, coef] : gs) {
        if (jm.empty()) {
            for (auto &[m, c] : sorted_terms(coef)) ps.push_back(term_piece(m, c, ctx));
        } else if (coef.size() == 1) {
            auto &[m, c] = *coef.terms().begin();
            Mono all = m;
            all.insert(all.end(), jm.begin(), jm.end());
            Piece pc = term_piece({}, c, ctx);
            std::string at = atoms_str(m, ctx);
            std::string js = atoms_str(jm, ctx);
            std::string body;
            if (abs(c) != 1) body = pc.body + "*";
            if (!at.empty()) body += at + "*";
            body += js;
            ps.push_back({c < 0, body});
        } else {
            std::vector<Piece> inner;
            for (auto &[m, c] : sorted_terms(coef)) inner.push_back(term_piece(m, c, ctx));
            ps.push_back({false, "(" + join(inner) + ")*" + atoms_str(jm, ctx)});
        }
    }
    return join(ps);
}

// ---- LaTeX -----------------------------------------------------------------

namespace {
std::string latex_var(VarId id, const ExprContext &ctx) {
    const Var &v = var(id);
    switch (v.kind) {
    case VarKind::Indep:
        return ctx.n == 1 ? "x" : "x^{" + std::to_string(v.index) + "}";
    case VarKind::Param:
        return v.name;
    case VarKind::Dep: {
        std::string s = "y";
        if (ctx.m > 1) s += "^{" + std::to_string(v.index) + "}";
        if (!v.idx.empty()) {
            s += "_{";
            for (size_t i = 0; i < v.idx.size(); ++i) s += (i ? "," : "") + std::to_string(v.idx[i]);
            s += "}";
        }
        return s;
    }
    }
    return "?";
}

std::string latex_sym(SymId s, const ExprContext &ctx) {
    const DerivSym &d = sym(s);
    const FuncSym &f = func(d.f);
    std::string r = f.name == "Pi" ? "\\Pi" : f.name == "Theta" ? "\\Theta" : f.name;
    if (!f.comp.empty()) {
        r += "^{";
        for (size_t i = 0; i < f.comp.size(); ++i) r += (i ? "," : "") + std::to_string(f.comp[i]);
        r += "}";
    }
    if (!d.order.empty()) {
        auto o = sorted_vars(d.order);
        r += "_{";
        size_t i = 0;
        while (i < o.size()) {
            size_t j = i;
            while (j < o.size() && o[j] == o[i]) ++j;
            std::string vn = latex_var(o[i], ctx);
            if (j - i > 1) vn = "{" + vn + "}^{" + std::to_string(j - i) + "}";
            r += vn;
            i = j;
        }
        r += "}";
    }
    return r;
}

std::string latex_atoms(const Mono &m, const ExprContext &ctx) {
    Mono c = canon(m);
    std::string s;
    size_t i = 0;
    while (i < c.size()) {
        size_t j = i;
        while (j < c.size() && c[j] == c[i]) ++j;
        std::string a = atom_is_sym(c[i]) ? latex_sym(atom_id(c[i]), ctx) : latex_var(c[i], ctx);
        if (j - i > 1) a = "(" + a + ")^{" + std::to_string(j - i) + "}";
        if (!s.empty()) s += " ";
        s += a;
        i = j;
    }
    return s;
}

std::string latex_q(const Q &q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string latex_flat(const Poly &p, const ExprContext &ctx) {
    std::string s;
    bool first = true;
    for (auto &[m, c] : sorted_terms(p)) {
        Q a = abs(c);
        s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        if (m.empty())
            s += latex_q(a);
        else
            s += (a == 1 ? "" : latex_q(a) + " ") + latex_atoms(m, ctx);
    }
    return first ? "0" : s;
}
}  // namespace

std::string to_latex(const Poly &p, const ExprContext &ctx) {
    auto groups = collect(p, [](VarId v) { return is_jet(v); });
    std::vector<std::pair<Mono, Poly>> gs(groups.begin(), groups.end());
    std::sort(gs.begin(), gs.end(), [](auto &a, auto &b) { return mono_less(a.first, b.first); });
    std::string s;
    for (size_t i = 0; i < gs.size(); ++i) {
        auto &[jm, coef] = gs[i];
        if (i) s += " + ";
        if (jm.empty())
            s += latex_flat(coef, ctx);
        else
            s += "\\left[" + latex_flat(coef, ctx) + "\\right] " + latex_atoms(jm, ctx);
    }
    return s.empty() ? "0" : s;
}

// ---- tree ------------------------------------------------------------------

ExprPtr num(const Q &q) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Num;
    e->value = q;
    return e;
}
ExprPtr ref_var(VarId v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::VarRef;
    e->id = v;
    return e;
}
ExprPtr ref_sym(SymId s) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::SymRef;
    e->id = s;
    return e;
}
static ExprPtr bin(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = {std::move(a), std::move(b)};
    return e;
}
ExprPtr add(ExprPtr a, ExprPtr b) { return bin(Expr::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return bin(Expr::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return bin(Expr::Mul, std::move(a), std::move(b)); }
ExprPtr powe(ExprPtr a, long k) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Pow;
    e->exponent = k;
    e->kids = {std::move(a)};
    return e;
}

Poly normalize(const Expr &e) {
    switch (e.kind) {
    case Expr::Num:
        return Poly(e.value);
    case Expr::VarRef:
        return Poly::of_var(e.id);
    case Expr::SymRef:
        return Poly::of_sym(e.id);
    case Expr::Add:
        return normalize(*e.kids[0]) + normalize(*e.kids[1]);
    case Expr::Sub:
        return normalize(*e.kids[0]) - normalize(*e.kids[1]);
    case Expr::Mul:
        return normalize(*e.kids[0]) * normalize(*e.kids[1]);
    case Expr::Neg:
        return -normalize(*e.kids[0]);
    case Expr::Div: {
        Poly d = normalize(*e.kids[1]);
        if (!d.is_constant() || d.is_zero())
            throw Error("division by a non-constant or zero expression (use Fraction)");
        return normalize(*e.kids[0]) * (Q(1) / d.constant_term());
    }
    case Expr::Pow:
        if (e.exponent < 0) throw Error("negative power rejected (use Fraction)");
        return normalize(*e.kids[0]).pow((unsigned)e.exponent);
    case Expr::Partial:
        return normalize(*e.kids[0]).partial(e.id);
    }
    return Poly();
}

// ---- parser ----------------------------------------------------------------

namespace {

struct Tok {
    enum T { Int, Ident, Punct, End } t;
    std::string s;
    int line, col;
};

std::vector<Tok> lex(const std::string &src) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t k) {
        for (size_t q = 0; q < k; ++q, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace((unsigned char)c)) {
            adv(1);
            continue;
        }
        int l = line, cc = col;
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
            out.push_back({Tok::Int, src.substr(i, j - i), l, cc});
            adv(j - i);
        } else if (std::isalpha((unsigned char)c)) {
            size_t j = i;
            while (j < src.size() && std::isalnum((unsigned char)src[j])) ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), l, cc});
            adv(j - i);
        } else if (std::string("+-*/^()[]{},_").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, cc});
            adv(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool all_digits(const std::string &s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit((unsigned char)c); });
}

struct Parser {
    std::vector<Tok> toks;
    size_t pos = 0;
    const ExprContext &ctx;

    Parser(const std::string &src, const ExprContext &c) : toks(lex(src)), ctx(c) {}

    const Tok &peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
    bool is(const char *p, size_t k = 0) const { return peek(k).t == Tok::Punct && peek(k).s == p; }
    [[noreturn]] void fail(const std::string &msg, const Tok &t) const { throw ParseError(msg, t.line, t.col); }
    void expect(const char *p) {
        if (!is(p)) fail(std::string("expected '") + p + "'", peek());
        ++pos;
    }
    long integer() {
        if (peek().t != Tok::Int) fail("expected integer", peek());
        return std::stol(toks[pos++].s);
    }

    // dependent index for a name, or 0
    int dep_of(const std::string &s) const {
        for (int j = 1; j <= ctx.m; ++j)
            if (j <= (int)ctx.dep_names.size() && ctx.dep_names[j - 1] == s) return j;
        if (s == "y" && ctx.m == 1) return 1;
        if (s.size() > 1 && s[0] == 'y' && all_digits(s.substr(1))) {
            int j = std::stoi(s.substr(1));
            if (j >= 1 && j <= ctx.m) return j;
            return -1;
        }
        return 0;
    }
    int indep_of(const std::string &s) const {
        if (s == "x" && ctx.n == 1) return 1;
        if (s.size() > 1 && s[0] == 'x' && all_digits(s.substr(1))) {
            int i = std::stoi(s.substr(1));
            if (i >= 1 && i <= ctx.n) return i;
            return -1;
        }
        return 0;
    }

    // Try to read a variable reference at the current position.
    std::optional<VarId> variable(bool required) {
        const Tok &t = peek();
        if (t.t != Tok::Ident) {
            if (required) fail("expected variable", t);
            return std::nullopt;
        }
        if (ctx.params.count(t.s)) {
            ++pos;
            return param(t.s);
        }
        int j = dep_of(t.s);
        if (j < 0) fail("dependent index out of range in '" + t.s + "'", t);
        if (j > 0) {
            ++pos;
            if (!is("[")) return yvar(j);
            ++pos;
            MultiIndex K;
            if (!is("]")) {
                for (;;) {
                    const Tok &it = peek();
                    long k = integer();
                    if (k < 1 || k > ctx.n) fail("jet index out of range", it);
                    K.push_back((int)k);
                    if (is(",")) {
                        ++pos;
                        continue;
                    }
                    break;
                }
            }
            expect("]");
            return yvar(j, K);
        }
        int i = indep_of(t.s);
        if (i < 0) fail("independent index out of range in '" + t.s + "'", t);
        if (i > 0) {
            ++pos;
            return xvar(i);
        }
        if (required) fail("unknown variable '" + t.s + "'", t);
        return std::nullopt;
    }

    ExprPtr expr() {
        ExprPtr e;
        if (is("-")) {
            ++pos;
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Neg;
            n->kids = {term()};
            e = n;
        } else {
            if (is("+")) ++pos;
            e = term();
        }
        while (is("+") || is("-")) {
            bool plus = is("+");
            ++pos;
            e = plus ? add(e, term()) : sub(e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (is("*") || is("/")) {
            bool m = is("*");
            ++pos;
            e = m ? mul(e, unary()) : bin(Expr::Div, e, unary());
        }
        return e;
    }

    ExprPtr unary() {
        if (is("-")) {
            ++pos;
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Neg;
            n->kids = {unary()};
            return n;
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr a = atom();
        if (is("^")) {
            ++pos;
            long sign = 1;
            if (is("-")) {
                ++pos;
                sign = -1;
            }
            a = powe(a, sign * integer());
        }
        return a;
    }

    ExprPtr atom() {
        const Tok &t = peek();
        if (t.t == Tok::Int) {
            ++pos;
            return num(Q(mpz_class(t.s)));
        }
        if (is("(")) {
            ++pos;
            auto e = expr();
            expect(")");
            return e;
        }
        if (t.t != Tok::Ident) fail("unexpected token '" + t.s + "'", t);
        if (auto v = variable(false)) return ref_var(*v);
        // D<var>(expr): formal partial
        if (t.s.size() > 1 && t.s[0] == 'D' && !ctx.funcs.count(t.s)) {
            size_t save = pos;
            Tok orig = t;
            Tok shadow = t;
            shadow.s = t.s.substr(1);
            toks[pos] = shadow;
            std::optional<VarId> v;
            try {
                v = variable(false);
            } catch (const ParseError &) {
                v.reset();
            }
            if (v && is("(")) {
                ++pos;
                auto inner = expr();
                expect(")");
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Partial;
                e->id = *v;
                e->kids = {inner};
                return e;
            }
            pos = save;
            toks[pos] = orig;
        }
        return function();
    }

    ExprPtr function() {
        Tok t = peek();
        ++pos;
        std::vector<VarId> deps;
        if (auto it = ctx.funcs.find(t.s); it != ctx.funcs.end())
            deps = it->second;
        else if (ctx.implicit_funcs)
            deps = ctx.base_vars();
        else
            fail("unknown symbol '" + t.s + "'", t);
        std::vector<int> comp;
        if (is("{")) {
            ++pos;
            for (;;) {
                comp.push_back((int)integer());
                if (is(",")) {
                    ++pos;
                    continue;
                }
                break;
            }
            expect("}");
        }
        FuncId f = func_id(FuncSym{t.s, comp, deps});
        std::vector<VarId> order;
        if (is("_")) {
            ++pos;
            expect("{");
            for (;;) {
                const Tok &vt = peek();
                VarId v = *variable(true);
                if (std::find(deps.begin(), deps.end(), v) == deps.end())
                    fail("'" + t.s + "' does not depend on '" + vt.s + "'", vt);
                long k = 1;
                if (is("^")) {
                    ++pos;
                    k = integer();
                }
                for (long q = 0; q < k; ++q) order.push_back(v);
                if (is(",")) {
                    ++pos;
                    continue;
                }
                break;
            }
            expect("}");
        }
        return ref_sym(sym_id(DerivSym{f, order}));
    }
};

}  // namespace

ExprPtr parse_tree(const std::string &src, const ExprContext &ctx) {
    Parser p(src, ctx);
    if (p.peek().t == Tok::End) p.fail("empty expression", p.peek());
    auto e = p.expr();
    if (p.peek().t != Tok::End) p.fail("unexpected token '" + p.peek().s + "'", p.peek());
    return e;
}

Poly parse_expression(const std::string &src, const ExprContext &ctx) {
    auto tree = parse_tree(src, ctx);
    try {
        return normalize(*tree);
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(e.what(), 1, 1);
    }
}

VarId parse_jetvar(const std::string &src, const ExprContext &ctx) {
    Parser p(src, ctx);
    const Tok &t = p.peek();
    VarId v = *p.variable(true);
    if (var(v).kind != VarKind::Dep) p.fail("expected a dependent variable", t);
    if (p.peek().t != Tok::End) p.fail("unexpected token '" + p.peek().s + "'", p.peek());
    return v;
}

}  // namespace jetsym
