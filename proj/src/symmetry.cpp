#include "jetsym/symmetry.hpp"

#include <algorithm>

namespace jetsym {

PDESystem complete_skeleton(const PDESystem &partial) {
    PDESystem sys = partial;
    const int top = sys.ctx.kappa + 1;
    ExprContext names(sys.ctx.n, sys.ctx.m);
    for (auto &[v, rhs] : sys.skeleton) {
        if (jet_order(v) > top) throw Error("skeleton entry beyond order kappa+1: " + var_name(v, names));
        for (VarId w : rhs.vars())
            if (var(w).kind == VarKind::Dep && !sys.is_coordinate(w))
                throw Error("right-hand side of " + var_name(v, names) + " involves non-parametric " + var_name(w, names));
    }
    // Passes until nothing new is added; the final pass must resolve every derivation.
    for (int pass = 0;; ++pass) {
        if (pass > 64) throw Error("completion did not terminate");
        bool added = false, deferred = false;
        auto snapshot = sys.skeleton;
        for (auto &[v, rhs] : snapshot) {
            const Var &x = var(v);
            for (int i = 1; i <= sys.ctx.n; ++i) {
                VarId w = yvar(x.index, add_index(x.idx, i));
                if (jet_order(w) > top) continue;
                if (sys.parametric.count(w))
                    throw Error("inconsistent closure: " + var_name(w, names) + " is parametric but derives from " +
                                var_name(v, names));
                Poly d;
                try {
                    d = restricted_diff(sys, i, rhs);
                } catch (const MissingJet &) {
                    deferred = true;
                    continue;
                }
                auto it = sys.skeleton.find(w);
                if (it == sys.skeleton.end()) {
                    sys.skeleton.emplace(w, d);
                    added = true;
                } else if (!(it->second - d).is_zero()) {
                    throw Error("inconsistent closure: " + var_name(w, names) + " = " + to_string(it->second, names) +
                                " vs D" + std::to_string(i) + "(" + var_name(v, names) + ") = " + to_string(d, names));
                }
            }
        }
        if (!added) {
            if (deferred) throw Error("completion stuck: derivations need jets that never become available");
            break;
        }
    }
    for (int len = 0; len <= top; ++len)
        for (VarId v : jet_vars(sys.ctx.n, sys.ctx.m, len, len)) {
            if (len == 0) continue;
            if (!sys.parametric.count(v) && !sys.skeleton.count(v))
                throw MissingJet("skeleton incomplete after closure: missing " + var_name(v, names), v);
        }
    return sys;
}

std::vector<Poly> tangency_defect(const PDESystem &sys, const VectorField &f) {
    const int top = std::max(1, sys.max_order());
    auto pf = prolong_inductive(f, top);
    std::map<VarId, Poly> sub;
    for (auto &[v, rhs] : sys.skeleton) sub[v] = rhs;
    std::map<VarId, Poly> hat;
    auto Yhat = [&](VarId v) -> const Poly & {
        auto it = hat.find(v);
        if (it == hat.end()) it = hat.emplace(v, substitute(pf.coeffs.at(v), sub)).first;
        return it->second;
    };
    std::vector<Poly> out;
    for (auto &[v, F] : sys.skeleton) {
        Poly d = -Yhat(v);
        for (int i = 1; i <= f.n; ++i) d += f.X[i - 1] * F.partial(xvar(i));
        for (int l = 1; l <= f.m; ++l) d += f.Y[l - 1] * F.partial(yvar(l));
        for (VarId b : sys.parametric) {
            Poly dF = F.partial(b);
            if (!dF.is_zero()) d += Yhat(b) * dF;
        }
        out.push_back(std::move(d));
    }
    return out;
}

DeterminingSystem determining_system(const PDESystem &sys) {
    DeterminingSystem ds;
    auto defects = tangency_defect(sys, generic_field(sys.ctx.n, sys.ctx.m));
    auto sel = [&](VarId v) { return sys.parametric.count(v) > 0; };
    for (auto &d : defects)
        for (auto &[mono, coef] : collect(d, sel)) ds.equations.push_back(coef);
    return ds;
}

static std::map<FuncId, Poly> field_instance(const VectorField &f) {
    std::map<FuncId, Poly> fn;
    for (int k = 1; k <= f.n; ++k) fn[sym(field_sym(f.n, f.m, false, k)).f] = f.X[k - 1];
    for (int j = 1; j <= f.m; ++j) fn[sym(field_sym(f.n, f.m, true, j)).f] = f.Y[j - 1];
    return fn;
}

bool solves(const DeterminingSystem &ds, const VectorField &f) {
    auto fn = field_instance(f);
    for (auto &e : ds.equations)
        if (!instantiate(e, fn).is_zero()) return false;
    return true;
}

VectorField lie_bracket(const VectorField &f, const VectorField &g) {
    if (f.n != g.n || f.m != g.m) throw Error("lie_bracket: shape mismatch");
    VectorField r{f.n, f.m, {}, {}};
    for (int i = 0; i < f.n; ++i) r.X.push_back(f.apply(g.X[i]) - g.apply(f.X[i]));
    for (int j = 0; j < f.m; ++j) r.Y.push_back(f.apply(g.Y[j]) - g.apply(f.Y[j]));
    return r;
}

VectorField operator+(const VectorField &a, const VectorField &b) {
    VectorField r = a;
    for (int i = 0; i < a.n; ++i) r.X[i] += b.X[i];
    for (int j = 0; j < a.m; ++j) r.Y[j] += b.Y[j];
    return r;
}
VectorField operator*(const Q &c, const VectorField &a) {
    VectorField r = a;
    for (auto &p : r.X) p *= c;
    for (auto &p : r.Y) p *= c;
    return r;
}
bool is_zero(const VectorField &f) {
    for (auto &p : f.X)
        if (!p.is_zero()) return false;
    for (auto &p : f.Y)
        if (!p.is_zero()) return false;
    return true;
}

namespace {
using Key = std::pair<int, Mono>;
std::map<Key, Q> flatten(const VectorField &f) {
    std::map<Key, Q> r;
    int c = 0;
    for (auto &p : f.X) {
        for (auto &[m, q] : p.terms()) r[{c, m}] = q;
        ++c;
    }
    for (auto &p : f.Y) {
        for (auto &[m, q] : p.terms()) r[{c, m}] = q;
        ++c;
    }
    return r;
}
}  // namespace

std::optional<std::vector<Q>> express_in_basis(const VectorField &f, const std::vector<VectorField> &basis) {
    std::vector<std::map<Key, Q>> cols;
    std::map<Key, int> rowid;
    for (auto &b : basis) cols.push_back(flatten(b));
    auto target = flatten(f);
    for (auto &c : cols)
        for (auto &[k, _] : c) rowid.emplace(k, 0);
    for (auto &[k, _] : target) rowid.emplace(k, 0);
    int r = 0;
    for (auto &[k, id] : rowid) id = r++;
    std::vector<std::vector<Q>> A(r, std::vector<Q>(basis.size(), Q(0)));
    std::vector<Q> b(r, Q(0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto &[k, q] : cols[j]) A[rowid[k]][j] = q;
    for (auto &[k, q] : target) b[rowid[k]] = q;
    return solve_linear(A, b);
}

std::vector<std::vector<BracketEntry>> bracket_table(const std::vector<VectorField> &fields) {
    std::vector<std::vector<BracketEntry>> T(fields.size(), std::vector<BracketEntry>(fields.size()));
    for (size_t a = 0; a < fields.size(); ++a)
        for (size_t b = 0; b < fields.size(); ++b) {
            auto x = express_in_basis(lie_bracket(fields[a], fields[b]), fields);
            T[a][b].in_span = x.has_value();
            if (x) T[a][b].coeffs = *x;
        }
    return T;
}

bool jacobi_holds(const std::vector<VectorField> &F) {
    for (size_t a = 0; a < F.size(); ++a)
        for (size_t b = a + 1; b < F.size(); ++b)
            for (size_t c = b + 1; c < F.size(); ++c) {
                VectorField s = lie_bracket(lie_bracket(F[a], F[b]), F[c]) +
                                lie_bracket(lie_bracket(F[b], F[c]), F[a]) +
                                lie_bracket(lie_bracket(F[c], F[a]), F[b]);
                if (!is_zero(s)) return false;
            }
    return true;
}

size_t field_rank(const std::vector<VectorField> &fields) {
    std::map<Key, int> rowid;
    std::vector<std::map<Key, Q>> cols;
    for (auto &f : fields) cols.push_back(flatten(f));
    for (auto &c : cols)
        for (auto &[k, _] : c) rowid.emplace(k, 0);
    int r = 0;
    for (auto &[k, id] : rowid) id = r++;
    std::vector<std::vector<Q>> A(fields.size(), std::vector<Q>(r, Q(0)));
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto &[k, q] : cols[j]) A[j][rowid[k]] = q;
    return rank(A);
}

std::map<VarId, Poly> prolonged_components(const VectorField &f, int kappa) {
    std::map<VarId, Poly> c;
    for (int i = 1; i <= f.n; ++i) c[xvar(i)] = f.X[i - 1];
    for (int j = 1; j <= f.m; ++j) c[yvar(j)] = f.Y[j - 1];
    if (kappa >= 1)
        for (auto &[v, p] : prolong_inductive(f, kappa).coeffs) c[v] = p;
    return c;
}

bool verify_prolong_bracket(const VectorField &f, const VectorField &g, int kappa) {
    auto P = prolonged_components(f, kappa), R = prolonged_components(g, kappa);
    auto apply = [](const std::map<VarId, Poly> &F, const Poly &h) {
        Poly r;
        for (auto &[v, c] : F)
            if (!c.is_zero()) {
                Poly d = h.partial(v);
                if (!d.is_zero()) r += c * d;
            }
        return r;
    };
    auto B = prolonged_components(lie_bracket(f, g), kappa);
    for (auto &[v, pc] : P) {
        Poly lhs = apply(P, R.at(v)) - apply(R, pc);
        if (!(lhs - B.at(v)).is_zero()) return false;
    }
    return true;
}

std::pair<Poly, Poly> invariants_E1(const Poly &F) {
    VarId x = xvar(1), y = yvar(1), p = yvar(1, {1});
    for (VarId v : F.vars())
        if (var(v).kind == VarKind::Dep && jet_order(v) > 1) throw Error("invariants_E1: F must depend on (x, y, y1)");
    Poly y1 = Poly::of_var(p);
    auto D = [&](const Poly &h) { return h.partial(x) + y1 * h.partial(y) + F * h.partial(p); };
    Poly Fp = F.partial(p), Fy = F.partial(y);
    Poly Fpp = Fp.partial(p), Fyp = Fy.partial(p), Fyy = Fy.partial(y);
    Poly I1 = Fpp.partial(p).partial(p);
    Poly DFpp = D(Fpp);
    Poly I2 = D(DFpp) - Fp * DFpp - Q(4) * D(Fyp) + Q(6) * Fyy - Q(3) * Fy * Fpp + Q(4) * Fp * Fyp;
    return {I1, I2};
}

VectorField parse_field(int n, int m, const std::vector<std::string> &X, const std::vector<std::string> &Y,
                        const ExprContext *ctx) {
    ExprContext c = ctx ? *ctx : ExprContext(n, m);
    if ((int)X.size() != n || (int)Y.size() != m) throw Error("parse_field: wrong component count");
    VectorField f{n, m, {}, {}};
    for (auto &s : X) f.X.push_back(parse_expression(s, c));
    for (auto &s : Y) f.Y.push_back(parse_expression(s, c));
    check_field(f);
    return f;
}

}  // namespace jetsym
