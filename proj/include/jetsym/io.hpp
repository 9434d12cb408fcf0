#pragma once

#include "jetsym/symmetry.hpp"

namespace jetsym {

// System files:
//   # comment
//   n=2 m=1 kappa=2 [parametric=y[1],y[1,1]] [names=u,v]
//   y[2] = 1/4*y[1]^2
//   y[1,1,1] = 0
// Without parametric=, every jet of order <= kappa that is not a derivative of
// a left-hand side is parametric.
struct SystemFile {
    PDESystem system;
    ExprContext names;
};
SystemFile parse_system(const std::string &text);
SystemFile read_system(const std::string &path);

// Field files:
//   n=1 m=1 [names=...]
//   A: 0 ; 1
//   G: x^2 ; x*y
// Components X^1..X^n, then Y^1..Y^m, separated by ',' within a group.
struct FieldFile {
    int n = 1, m = 1;
    ExprContext names;
    std::vector<std::string> labels;
    std::vector<VectorField> fields;
};
FieldFile parse_fields(const std::string &text);
FieldFile read_fields(const std::string &path);

std::string read_file(const std::string &path);

}  // namespace jetsym
