#include <doctest.h>

#include "jetsym/fdb.hpp"
#include "jetsym/reference.hpp"

using namespace jetsym;

namespace {
// Bell triangle.
std::vector<long> bell_numbers(int k) {
    std::vector<long> out = {1}, row = {1};
    for (int i = 1; i <= k; ++i) {
        std::vector<long> next = {row.back()};
        for (long v : row) next.push_back(next.back() + v);
        row = next;
        out.push_back(row.front());
    }
    return out;
}
}  // namespace

TEST_CASE("closed formula, oracle and derivations agree") {
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int k = 1; k <= 3; ++k)
                for (auto &K : multi_indices(n, k)) {
                    CompositionSpec s{n, m, K};
                    Poly o = fdb_oracle(s);
                    CHECK(fdb_closed(s) == o);
                    CHECK(fdb_derivations(s) == o);
                }
}

TEST_CASE("scalar formula") {
    for (int k = 1; k <= 6; ++k) CHECK(fdb_scalar(k) == fdb_oracle({1, 1, MultiIndex(k, 1)}));
}

TEST_CASE("coefficient sums are Bell numbers") {
    auto bell = bell_numbers(7);
    CHECK(bell[5] == 52);
    for (int k = 1; k <= 7; ++k) {
        CHECK(set_partitions(k) == bell[k]);
        CHECK(sum_coefficients(fdb_scalar(k)) == bell[k]);
    }
}

TEST_CASE("frozen term counts") {
    // Scalar: one term per integer partition of k.
    std::vector<size_t> partitions = {1, 2, 3, 5, 7, 11, 15};
    for (int k = 1; k <= 7; ++k) CHECK(fdb_scalar(k).size() == partitions[k - 1]);
    // Distinct directions, one function: one term per set partition.
    CHECK(fdb_oracle({3, 1, {1, 2, 3}}).size() == 5);
}

TEST_CASE("printed composition tables") {
    std::vector<std::pair<int, int>> shapes = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
    for (auto &f : fdb_fixtures()) {
        bool printed_differs = false;
        for (auto [n, m] : shapes) {
            if (!admits(f.shape, n, m)) continue;
            for (auto &K : multi_indices(n, f.order)) {
                Poly o = fdb_oracle({n, m, K});
                CHECK_MESSAGE(fdb_fixture(f, n, m, K) == o, f.name, " n=", n, " m=", m);
                if (!f.errata.empty()) printed_differs |= !(fdb_fixture(f, n, m, K, true) == o);
            }
        }
        if (!f.errata.empty()) CHECK_MESSAGE(printed_differs, f.name, " printed text should disagree");
    }
}

TEST_CASE("composition naming round trip") {
    auto c = fdb_context(1, 1);
    Poly h2 = fdb_oracle({1, 1, {1, 1}});
    CHECK(h2 == parse_expression("f_{y,y}*g_{x}^2 + f_{y}*g_{x^2}", c));
}
