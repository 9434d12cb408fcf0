#include <doctest.h>

#include "gen.hpp"
#include "jetsym/reference.hpp"

using namespace jetsym;

namespace {
bool all_zero(const std::vector<Poly> &v) {
    for (auto &p : v)
        if (!p.is_zero()) return false;
    return true;
}

VectorField random_field(PolyGen &g, int n, int m) {
    VectorField f{n, m, {}, {}};
    for (int i = 0; i < n; ++i) f.X.push_back(g());
    for (int j = 0; j < m; ++j) f.Y.push_back(g());
    return f;
}

std::vector<Poly> base_atoms(int n, int m) {
    std::vector<Poly> a;
    for (int i = 1; i <= n; ++i) a.push_back(Poly::of_var(xvar(i)));
    for (int j = 1; j <= m; ++j) a.push_back(Poly::of_var(yvar(j)));
    return a;
}
}  // namespace

TEST_CASE("tangency identity for y_xx = F") {
    auto c = e1_context();
    auto d = tangency_defect(e1_system(parse_expression("F", c)), generic_field(1, 1));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == parse_expression(e1_identity_text(), c));
}

TEST_CASE("determining system of the flat equation") {
    auto c = field_context(1, 1);
    auto ds = determining_system(e1_system(Poly()));
    std::set<std::string> got, want = {"Y_{x^2}", "X_{x^2} - 2*Y_{x,y}", "2*X_{x,y} - Y_{y^2}", "X_{y^2}"};
    for (auto &e : ds.equations) {
        Poly q = e;
        if (q.terms().begin()->second < 0) q = -q;
        got.insert(to_string(q, c));
    }
    CHECK(got == want);
    for (auto &f : fields_of(e1_algebra())) CHECK(solves(ds, f));
    CHECK_FALSE(solves(ds, parse_field(1, 1, {"x^3"}, {"0"})));
}

TEST_CASE("determining equations are linear in the field") {
    auto c = e1_context();
    auto ds = determining_system(complete_skeleton(e4_system()));
    auto is_field = [](SymId s) {
        auto &name = func(sym(s).f).name;
        return name == "X" || name == "Y";
    };
    for (auto &e : ds.equations)
        for (auto &[mono, coef] : e.terms()) {
            int d = 0;
            for (Atom a : mono)
                if (atom_is_sym(a) && is_field(atom_id(a))) ++d;
            CHECK(d == 1);
        }
}

TEST_CASE("generators are tangent") {
    auto flat = e1_system(Poly());
    for (auto &f : fields_of(e1_algebra())) CHECK(all_zero(tangency_defect(flat, f)));
    auto e4 = complete_skeleton(e4_system());
    for (auto &f : fields_of(e4_algebra())) CHECK(all_zero(tangency_defect(e4, f)));
    auto e5 = complete_skeleton(e5_system());
    auto ds = determining_system(e5);
    for (auto &f : fields_of(e5_algebra())) {
        CHECK(all_zero(tangency_defect(e5, f)));
        CHECK(solves(ds, f));
    }
    CHECK(field_rank(fields_of(e5_algebra())) == 10);
    CHECK_FALSE(all_zero(tangency_defect(e5, parse_field(2, 1, {"x1^2", "0"}, {"0"}))));
}

TEST_CASE("bracket tables") {
    for (auto *a : {&e1_algebra(), &e4_algebra()}) {
        auto fs = fields_of(*a);
        auto T = bracket_table(fs);
        for (size_t i = 0; i < fs.size(); ++i)
            for (size_t k = 0; k < fs.size(); ++k) {
                REQUIRE(T[i][k].in_span);
                CHECK_MESSAGE(T[i][k].coeffs == table_entry(*a, i, k), a->fields[i].name, ",", a->fields[k].name);
            }
        CHECK(jacobi_holds(fs));
    }
    // The printed [G, F] breaks antisymmetry.
    auto &a = e1_algebra();
    CHECK(table_entry(a, 6, 5, true) != table_entry(a, 6, 5));
    auto F = table_entry(a, 5, 6, true);
    for (auto &q : F) q = -q;
    CHECK(table_entry(a, 6, 5) == F);
}

TEST_CASE("the ten generators close") {
    auto fs = fields_of(e5_algebra());
    auto T = bracket_table(fs);
    for (auto &row : T)
        for (auto &e : row) CHECK(e.in_span);
    CHECK(jacobi_holds(fs));
}

TEST_CASE("bracket properties on random fields") {
    PolyGen g(31, base_atoms(2, 1));
    g.max_terms = 3;
    g.max_deg = 2;
    for (int it = 0; it < 20; ++it) {
        auto a = random_field(g, 2, 1), b = random_field(g, 2, 1), c = random_field(g, 2, 1);
        CHECK(is_zero(lie_bracket(a, b) + lie_bracket(b, a)));
        CHECK(is_zero(lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                      lie_bracket(c, lie_bracket(a, b))));
        CHECK(verify_prolong_bracket(a, b, 2));
    }
}

TEST_CASE("prolongation respects brackets on the generators") {
    for (auto *a : {&e1_algebra(), &e4_algebra()}) {
        auto fs = fields_of(*a);
        for (auto &f : fs)
            for (auto &h : fs) CHECK(verify_prolong_bracket(f, h, 3));
    }
}

TEST_CASE("express in basis") {
    auto fs = fields_of(e1_algebra());
    auto v = express_in_basis(Q(2) * fs[3] + Q(-1) * fs[7], fs);
    REQUIRE(v);
    CHECK((*v)[3] == 2);
    CHECK((*v)[7] == -1);
    CHECK_FALSE(express_in_basis(parse_field(1, 1, {"x^3"}, {"0"}), fs));
}

TEST_CASE("fundamental invariants") {
    auto c = field_context(1, 1);
    auto z = invariants_E1(Poly());
    CHECK(z.first.is_zero());
    CHECK(z.second.is_zero());
    // Linearizable: y'' = y'^2, y'' = y'^3 and linear equations.
    for (std::string s : {"y[1]^2", "y[1]^3", "x*y[1] + x^2*y"}) {
        auto I = invariants_E1(parse_expression(s, c));
        CHECK_MESSAGE(I.first.is_zero(), s);
        CHECK_MESSAGE(I.second.is_zero(), s);
    }
    auto I = invariants_E1(parse_expression("x^2 + y^2", c));
    CHECK(I.second == Poly(12));
    CHECK_FALSE(invariants_E1(parse_expression("y[1]^4", c)).first.is_zero());
}
