#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetsym {

using Q = mpq_class;
using MultiIndex = std::vector<int>;  // sorted, 1-based directions

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- variables -------------------------------------------------------------

enum class VarKind : uint8_t { Indep, Dep, Param };

struct Var {
    VarKind kind;
    int index;        // i for x^i, j for y^j_K; 0 for params
    MultiIndex idx;   // K for jets, empty otherwise
    std::string name; // params only
    auto operator<=>(const Var &) const = default;
};

using VarId = uint32_t;

VarId var_id(const Var &v);
const Var &var(VarId id);

VarId xvar(int i);
VarId yvar(int j, MultiIndex K = {});
VarId param(const std::string &name);

inline bool is_jet(VarId v) { return var(v).kind == VarKind::Dep && !var(v).idx.empty(); }
inline int jet_order(VarId v) { return var(v).kind == VarKind::Dep ? (int)var(v).idx.size() : 0; }

// ---- function and derivative symbols ---------------------------------------

struct FuncSym {
    std::string name;
    std::vector<int> comp;
    std::vector<VarId> deps;
    auto operator<=>(const FuncSym &) const = default;
};

using FuncId = uint32_t;
using SymId = uint32_t;

FuncId func_id(const FuncSym &f);
const FuncSym &func(FuncId id);

struct DerivSym {
    FuncId f;
    std::vector<VarId> order;  // sorted multiset
    auto operator<=>(const DerivSym &) const = default;
};

SymId sym_id(const DerivSym &d);
const DerivSym &sym(SymId id);

// Undifferentiated symbol of a function.
SymId fsym(const std::string &name, std::vector<int> comp, std::vector<VarId> deps);
bool depends_on(SymId s, VarId v);
std::optional<SymId> formal_partial_sym(SymId s, VarId v);

// ---- polynomials -----------------------------------------------------------
//
// An atom is either a variable or a derivative symbol, packed into 32 bits.
// A monomial is a sorted vector of atoms (repeats = powers).

using Atom = uint32_t;
constexpr Atom SYM_BIT = 0x80000000u;
inline Atom var_atom(VarId v) { return v; }
inline Atom sym_atom(SymId s) { return s | SYM_BIT; }
inline bool atom_is_sym(Atom a) { return a & SYM_BIT; }
inline uint32_t atom_id(Atom a) { return a & ~SYM_BIT; }

using Mono = std::vector<Atom>;

class Poly {
public:
    using Terms = std::map<Mono, Q>;

    Poly() = default;
    Poly(int c);
    Poly(const Q &c);
    static Poly constant(const Q &c) { return Poly(c); }
    static Poly of_var(VarId v);
    static Poly of_sym(SymId s);
    static Poly monomial(Mono m, const Q &c);

    const Terms &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Q constant_term() const;
    size_t size() const { return t_.size(); }

    void add_term(const Mono &m, const Q &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Q &c);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Q(-1); }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(Poly a, const Q &c) { return a *= c; }
    friend Poly operator*(const Q &c, Poly a) { return a *= c; }
    bool operator==(const Poly &o) const { return t_ == o.t_; }

    Poly pow(unsigned e) const;

    // Partial derivative in v; symbols depending on v are differentiated formally.
    Poly partial(VarId v) const;
    // Derivative with respect to a symbol treated as an independent indeterminate.
    Poly partial_atom(Atom a) const;

    bool has_var(VarId v) const;
    std::vector<VarId> vars() const;
    std::vector<SymId> syms() const;

private:
    Terms t_;
};

// Derivation D with D(v) = image(v) on variables and the chain rule on symbols:
// D(s) = sum over v in deps(s) of s_v * image(v). image returns nullptr for zero.
using Image = std::function<const Poly *(VarId)>;
Poly derive(const Poly &p, const Image &image);

// Replace variables by polynomials. Throws if a symbol depends on a replaced variable.
Poly substitute(const Poly &p, const std::map<VarId, Poly> &sub);

// Replace whole functions by polynomials; derivative symbols become partials of the replacement.
Poly instantiate(const Poly &p, const std::map<FuncId, Poly> &fn);

// Replace symbols (by id) with polynomials; other atoms untouched.
Poly replace_syms(const Poly &p, const std::function<std::optional<Poly>(SymId)> &f);

// Split p into coefficients of monomials in the selected variables.
std::map<Mono, Poly> collect(const Poly &p, const std::function<bool(VarId)> &select);

// Degree in the selected variables (max over terms), -1 for zero.
int degree_in(const Poly &p, const std::function<bool(VarId)> &select);

// Term count guard (JETSYM_MAX_TERMS).
size_t max_terms();
void check_terms(const Poly &p);

// ---- fractions -------------------------------------------------------------

struct Fraction {
    Poly num;
    Poly den{1};
    Fraction() = default;
    Fraction(Poly n) : num(std::move(n)) {}
    Fraction(Poly n, Poly d);
};

Fraction operator+(const Fraction &a, const Fraction &b);
Fraction operator-(const Fraction &a, const Fraction &b);
Fraction operator-(const Fraction &a);
Fraction operator*(const Fraction &a, const Fraction &b);
Fraction operator/(const Fraction &a, const Fraction &b);
bool fraction_equal(const Fraction &a, const Fraction &b);
bool is_zero(const Fraction &a);

// Exact Gaussian elimination over Q. Rows of A are sparse maps column -> value.
// Returns x with A x = b, or nullopt when inconsistent. Free variables set to 0.
std::optional<std::vector<Q>> solve_linear(const std::vector<std::vector<Q>> &A,
                                           const std::vector<Q> &b);
size_t rank(std::vector<std::vector<Q>> A);

}  // namespace jetsym
