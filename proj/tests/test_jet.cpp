#include <doctest.h>

#include "gen.hpp"
#include "jetsym/prolong.hpp"
#include "jetsym/reference.hpp"

using namespace jetsym;

TEST_CASE("jet dimension matches enumeration") {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (int k = 0; k <= 4; ++k) {
                long count = n + (long)jet_vars(n, m, 0, k).size();
                CHECK(jet_dimension({n, m, k}) == count);
            }
    // n + m C(n+k, k)
    CHECK(jet_dimension({1, 1, 2}) == 4);
    CHECK(jet_dimension({2, 1, 2}) == 8);
    CHECK(jet_dimension({2, 3, 3}) == 32);
}

TEST_CASE("multi-indices are sorted and counted by binomials") {
    for (int n = 1; n <= 4; ++n)
        for (int len = 0; len <= 4; ++len) {
            auto v = multi_indices(n, len);
            CHECK((long)v.size() == binomial(n + len - 1, len));
            for (auto &K : v) CHECK(std::is_sorted(K.begin(), K.end()));
        }
    CHECK(add_index({1, 3}, 2) == MultiIndex{1, 2, 3});
}

TEST_CASE("total derivatives commute") {
    auto c = field_context(2, 1);
    auto atoms = field_atoms(2, 1, c);
    atoms.push_back(Poly::of_var(yvar(1, {1, 2})));
    atoms.push_back(Poly::of_sym(field_sym(2, 1, false, 1)));
    PolyGen g(21, atoms);
    for (int it = 0; it < 100; ++it) {
        Poly p = g();
        CHECK(total_diff(1, total_diff(2, p)) == total_diff(2, total_diff(1, p)));
    }
    CHECK(total_diff(1, Poly::of_var(yvar(1))) == Poly::of_var(yvar(1, {1})));
    CHECK(total_diff(2, Poly::of_var(yvar(1, {1}))) == Poly::of_var(yvar(1, {1, 2})));
}

TEST_CASE("truncated total derivative refuses top-order jets") {
    JetContext ctx{1, 1, 2};
    Poly p = Poly::of_var(yvar(1, {1, 1}));
    CHECK_THROWS_AS(total_diff(ctx, 1, 2, p), Error);
    CHECK(total_diff(ctx, 1, 3, p) == Poly::of_var(yvar(1, {1, 1, 1})));
}

TEST_CASE("restricted operators on a flat skeleton") {
    PDESystem s = e1_system(Poly());
    CHECK(restricted_image(s, 1, yvar(1)) == Poly::of_var(yvar(1, {1})));
    CHECK(restricted_image(s, 1, yvar(1, {1})).is_zero());
    CHECK(frobenius_ok(s));
}

TEST_CASE("Frobenius detects non-integrable skeletons") {
    auto c = field_context(2, 1);
    PDESystem s{{2, 1, 1},
                {yvar(1, {1}), yvar(1, {2})},
                {{yvar(1, {1, 1}), parse_expression("x2", c)}, {yvar(1, {1, 2}), Poly()}, {yvar(1, {2, 2}), Poly()}}};
    std::string w;
    CHECK_FALSE(frobenius_ok(s, &w));
    CHECK_FALSE(w.empty());
    auto t = complete_skeleton(e5_system());
    CHECK(frobenius_ok(t));
}

TEST_CASE("completion of the codimension-two model") {
    auto c = field_context(1, 2);
    auto s = complete_skeleton(e4_system());
    CHECK(s.skeleton.size() == 3);
    CHECK(s.skeleton.at(yvar(2, {1, 1})) == parse_expression("2*y1[1]", c));
    CHECK(frobenius_ok(s));
}

TEST_CASE("completion of the cubic-free model in two variables") {
    auto c = field_context(2, 1);
    auto s = complete_skeleton(e5_system());
    CHECK(s.skeleton.at(yvar(1, {1, 2})) == parse_expression("1/2*y[1]*y[1,1]", c));
    CHECK(s.skeleton.at(yvar(1, {2, 2})) == parse_expression("1/4*y[1]^2*y[1,1]", c));
    CHECK(s.skeleton.at(yvar(1, {2, 2, 2})) == parse_expression("3/8*y[1]^2*y[1,1]^2", c));
    for (int len = 1; len <= 3; ++len)
        for (VarId v : jet_vars(2, 1, len, len)) CHECK((s.parametric.count(v) + s.skeleton.count(v)) == 1);
}

TEST_CASE("inconsistent closure is reported") {
    auto c = field_context(1, 1);
    PDESystem s{{1, 1, 1}, {yvar(1, {1})}, {{yvar(1, {1, 1}), parse_expression("y[1]", c)}, {yvar(1, {1, 1, 1}), Poly(1)}}};
    CHECK_THROWS_AS(complete_skeleton(s), Error);
}
