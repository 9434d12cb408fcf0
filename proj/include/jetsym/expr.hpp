#pragma once

#include "jetsym/kernel.hpp"

#include <memory>
#include <set>

namespace jetsym {

// Naming context shared by parser and printer.
struct ExprContext {
    int n = 1, m = 1;
    std::vector<std::string> dep_names;                // defaults: y (m=1) or y1..ym
    std::map<std::string, std::vector<VarId>> funcs;   // declared function dependencies
    std::set<std::string> params;
    bool implicit_funcs = true;                        // undeclared names become functions of (x, y)

    ExprContext() = default;
    ExprContext(int n_, int m_) : n(n_), m(m_) {}

    std::string dep_name(int j) const;
    std::vector<VarId> base_vars() const;
    void declare(const std::string &name, std::vector<VarId> deps) { funcs[name] = std::move(deps); }
    void declare_param(const std::string &name) { params.insert(name); }
};

std::string var_name(VarId v, const ExprContext &ctx);
std::string sym_name(SymId s, const ExprContext &ctx);

// Raw expression tree.
struct Expr {
    enum Kind { Num, VarRef, SymRef, Add, Sub, Mul, Div, Pow, Neg, Partial } kind;
    Q value;
    uint32_t id = 0;       // VarId / SymId; for Partial the VarId
    long exponent = 0;     // Pow
    std::vector<std::shared_ptr<Expr>> kids;
};
using ExprPtr = std::shared_ptr<Expr>;

ExprPtr num(const Q &q);
ExprPtr ref_var(VarId v);
ExprPtr ref_sym(SymId s);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr powe(ExprPtr a, long e);

Poly normalize(const Expr &e);

struct ParseError : Error {
    int line, col;
    ParseError(const std::string &msg, int l, int c)
        : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

ExprPtr parse_tree(const std::string &src, const ExprContext &ctx);
Poly parse_expression(const std::string &src, const ExprContext &ctx);
// Parses a single jet-variable reference such as y[1,2] or u2[1].
VarId parse_jetvar(const std::string &src, const ExprContext &ctx);

struct PrintOptions {
    bool group_jets = true;   // bracket coefficients of each jet monomial
};
std::string to_string(const Poly &p, const ExprContext &ctx, PrintOptions opt = {});
std::string to_latex(const Poly &p, const ExprContext &ctx);
std::string to_string(const Q &q);

}  // namespace jetsym
