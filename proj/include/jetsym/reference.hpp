#pragma once

#include "jetsym/flatness.hpp"
#include "jetsym/prolong.hpp"
#include "jetsym/symmetry.hpp"
#include "jetsym/transfer.hpp"

// Printed formulas transcribed as data, for regression against the engine.
namespace jetsym {

// Index templates: each line is "vars :: body". The body is an expression in
// parser syntax with placeholders $i1, $j, $k1, $l1 ... and Kronecker products
// d(a1,a2,..;b1,b2,..). Loop variables named k* run over 1..n, l* over 1..m.
// Function symbols are written with explicit components (X{1}, Y{$j}, g{$l1})
// and directions x1.., y1..; the expander maps them to the short names when
// n or m is 1.
using IndexEnv = std::map<std::string, int>;
using Renames = std::vector<std::pair<std::string, std::string>>;

Poly expand_template(const std::vector<std::string> &lines, const IndexEnv &env, int n, int m,
                     const ExprContext &ctx, const Renames &renames);

enum class Shape {
    Scalar,          // n = m = 1
    OneDependent,    // m = 1, any n
    OneIndependent,  // n = 1, any m
    General,
};
bool admits(Shape s, int n, int m);

struct Erratum {
    size_t line;
    std::string printed, corrected;
    std::string note;
};

struct Fixture {
    std::string name;
    Shape shape;
    int order;
    std::vector<std::string> lines;  // corrected transcription
    std::vector<Erratum> errata;
};
std::vector<std::string> printed_lines(const Fixture &f);

const std::vector<Fixture> &prolong_fixtures();
const std::vector<Fixture> &fdb_fixtures();

// Value of a fixture at a concrete target (y^j_K or h_K).
Poly prolong_fixture(const Fixture &f, int n, int m, VarId target, bool printed = false);
Poly fdb_fixture(const Fixture &f, int n, int m, const MultiIndex &target, bool printed = false);

// ---- second-order systems in two independent variables ------------------

// Cleared equations 0 = y_{j1 j2} * Delta + ... with 3x3 determinants
// written D(w1|w2|w3); columns are derivative words over {1, 2, 3 = y}.
struct DetFixture {
    int j1, j2;
    std::string text;
};
const std::vector<DetFixture> &determinant_fixtures();
Poly det_fixture(const DetFixture &f);

// y_{j1 j2} as cubic polynomials in y_1, y_2 with square-function coefficients Sq{k,a,b}.
struct SquareFixture {
    int j1, j2;
    std::string text;
};
const std::vector<SquareFixture> &square_fixtures();
Poly square_fixture(const SquareFixture &f);

// ---- auxiliary systems, any n --------------------------------------------

// Theta^a_{x^b} for a, b in 1..n+1 (x^{n+1} = y). The (n+1, n+1) entry uses j = 1.
Poly theta_reference(int n, int a, int b, int j = 1);
// Theta-free part of (Theta^{j1}_{x^{j2}})_{x^{j3}} - (Theta^{j1}_{x^{j3}})_{x^{j2}}.
Poly compat_first_reference(int n, int j1, int j2, int j3);
// Notes on the three corrections in compat_first_reference.
const std::vector<std::string> &compat_first_errata();


// ---- point symmetries -------------------------------------------------------

// y_xx = F(x, y, y_1) and its tangency identity with the generic field.
PDESystem e1_system(const Poly &F);
ExprContext e1_context();  // declares X, Y and F(x, y, y[1])
const std::string &e1_identity_text();

// y2_x = 2x y1_x + (y1_x)^2, y1_xx = 0 (before completion).
PDESystem e4_system();
// y_2 = y_1^2 / 4, y_111 = 0 (before completion).
PDESystem e5_system();

struct FieldFixture {
    std::string name;
    std::vector<std::string> X, Y;
};
struct AlgebraFixture {
    int n, m;
    std::vector<FieldFixture> fields;
    // Entry [i][k] = [f_i, f_k] as a combination of field names, e.g. "D+2E", "-3L3", "0".
    std::vector<std::vector<std::string>> table;  // corrected
    std::vector<Erratum> errata;                  // line = i * size + k
};
const AlgebraFixture &e1_algebra();
const AlgebraFixture &e4_algebra();
const AlgebraFixture &e5_algebra();  // no printed table
std::vector<VectorField> fields_of(const AlgebraFixture &a);
// Coordinates of a table entry in the field basis.
std::vector<Q> table_entry(const AlgebraFixture &a, size_t i, size_t k, bool printed = false);

// ---- transfer -------------------------------------------------------------

// Cramer solutions A_v, B_v and the F derivatives over Pi_b Pi_xa - Pi_a Pi_xb,
// numerators in transfer_context() syntax; keys "Ax", "Ay", "Ay1", "Bx", ..., "Fx", "Fy", "Fy1".
const std::map<std::string, std::string> &transfer_numerators();
Fraction transfer_fixture(const std::string &key);

}  // namespace jetsym
