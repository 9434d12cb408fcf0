#include "jetsym/reference.hpp"

#include "jetsym/fdb.hpp"

#include <cctype>
#include <sstream>

namespace jetsym {

namespace {

void replace_all(std::string &s, const std::string &a, const std::string &b) {
    for (size_t p = 0; (p = s.find(a, p)) != std::string::npos; p += b.size()) s.replace(p, a.size(), b);
}

std::string bind_indices(const std::string &body, const IndexEnv &env) {
    std::string out;
    out.reserve(body.size());
    for (size_t i = 0; i < body.size();) {
        if (body[i] != '$') {
            out += body[i++];
            continue;
        }
        size_t j = i + 1;
        while (j < body.size() && std::isalnum((unsigned char)body[j])) ++j;
        std::string name = body.substr(i + 1, j - i - 1);
        auto it = env.find(name);
        if (it == env.end()) throw Error("template: unbound index $" + name);
        out += std::to_string(it->second);
        i = j;
    }
    // Kronecker products
    std::string r;
    r.reserve(out.size());
    for (size_t i = 0; i < out.size();) {
        if (out.compare(i, 2, "d(") != 0) {
            r += out[i++];
            continue;
        }
        size_t close = out.find(')', i);
        std::string in = out.substr(i + 2, close - i - 2);
        size_t semi = in.find(';');
        if (semi == std::string::npos) throw Error("template: bad delta " + in);
        std::stringstream a(in.substr(0, semi)), b(in.substr(semi + 1));
        std::string x, y;
        bool eq = true;
        while (std::getline(a, x, ',')) {
            if (!std::getline(b, y, ',')) throw Error("template: delta arity " + in);
            eq = eq && x == y;
        }
        r += eq ? "1" : "0";
        i = close + 1;
    }
    return r;
}

Renames field_renames(int n, int m) {
    Renames r;
    if (n == 1) r.insert(r.end(), {{"X{1}", "X"}, {"x1", "x"}});
    if (m == 1) r.insert(r.end(), {{"Y{1}", "Y"}, {"y1", "y"}});
    return r;
}

Renames composition_renames(int n, int m) {
    Renames r;
    if (n == 1) r.push_back({"x1", "x"});
    if (m == 1) r.insert(r.end(), {{"g{1}", "g"}, {"y1", "y"}});
    return r;
}

IndexEnv target_env(const MultiIndex &K) {
    IndexEnv e;
    for (size_t a = 0; a < K.size(); ++a) e["i" + std::to_string(a + 1)] = K[a];
    return e;
}

}  // namespace

Poly expand_template(const std::vector<std::string> &lines, const IndexEnv &env, int n, int m,
                     const ExprContext &ctx, const Renames &renames) {
    Poly total;
    for (const auto &line : lines) {
        size_t sep = line.find("::");
        if (sep == std::string::npos) throw Error("template: missing '::' in " + line);
        std::stringstream vs(line.substr(0, sep));
        std::vector<std::string> vars;
        for (std::string v; vs >> v;) vars.push_back(v);
        std::string body = line.substr(sep + 2);

        IndexEnv e = env;
        std::vector<int> val(vars.size(), 1);
        std::string acc;
        for (;;) {
            for (size_t a = 0; a < vars.size(); ++a) e[vars[a]] = val[a];
            std::string s = bind_indices(body, e);
            for (auto &[from, to] : renames) replace_all(s, from, to);
            acc += "+(" + s + ")";
            size_t a = 0;
            for (; a < vars.size(); ++a) {
                int hi = vars[a][0] == 'k' ? n : m;
                if (++val[a] <= hi) break;
                val[a] = 1;
            }
            if (a == vars.size()) break;
        }
        total += parse_expression(acc, ctx);
    }
    return total;
}

bool admits(Shape s, int n, int m) {
    switch (s) {
    case Shape::Scalar: return n == 1 && m == 1;
    case Shape::OneDependent: return m == 1;
    case Shape::OneIndependent: return n == 1;
    case Shape::General: return true;
    }
    return false;
}

std::vector<std::string> printed_lines(const Fixture &f) {
    auto lines = f.lines;
    for (const auto &e : f.errata) {
        auto &l = lines.at(e.line);
        size_t p = l.find(e.corrected);
        if (p == std::string::npos) throw Error("fixture " + f.name + ": erratum does not apply");
        l.replace(p, e.corrected.size(), e.printed);
    }
    return lines;
}

Poly prolong_fixture(const Fixture &f, int n, int m, VarId target, bool printed) {
    if (!admits(f.shape, n, m)) throw Error("fixture " + f.name + " does not cover n=" + std::to_string(n) +
                                            ", m=" + std::to_string(m));
    const Var &v = var(target);
    if ((int)v.idx.size() != f.order) throw Error("fixture " + f.name + ": wrong order");
    IndexEnv env = target_env(v.idx);
    env["j"] = v.index;
    return expand_template(printed ? printed_lines(f) : f.lines, env, n, m, field_context(n, m), field_renames(n, m));
}

Poly fdb_fixture(const Fixture &f, int n, int m, const MultiIndex &target, bool printed) {
    if (!admits(f.shape, n, m)) throw Error("fixture " + f.name + " does not cover n=" + std::to_string(n) +
                                            ", m=" + std::to_string(m));
    if ((int)target.size() != f.order) throw Error("fixture " + f.name + ": wrong order");
    return expand_template(printed ? printed_lines(f) : f.lines, target_env(target), n, m, fdb_context(n, m),
                           composition_renames(n, m));
}

// Transcriptions keep the printed layout; errata list the printed text each correction replaces.
const std::vector<Fixture> &prolong_fixtures() {
    static const std::vector<Fixture> f = {
        {"Y_1", Shape::Scalar, 1,
         {R"( :: Y_{x}+(Y_{y}-X_{x})*y[1]+(-X_{y})*y[1]^2)"}, {}},
        {"Y_2", Shape::Scalar, 2,
         {R"( :: Y_{x^2}+(2*Y_{x,y}-X_{x^2})*y[1]+(Y_{y^2}-2*X_{x,y})*y[1]^2+(-X_{y^2})*y[1]^3+(Y_{y}-2*X_{x})*y[1,1]+(-3*X_{y})*y[1]*y[1,1])"}, {}},
        {"Y_3", Shape::Scalar, 3,
         {R"( :: Y_{x^3}+(3*Y_{x^2,y}-X_{x^3})*y[1]+(3*Y_{x,y^2}-3*X_{x^2,y})*y[1]^2+(Y_{y^3}-3*X_{x,y^2})*y[1]^3+(-X_{y^3})*y[1]^4+(3*Y_{x,y}-3*X_{x^2})*y[1,1]+(3*Y_{y^2}-9*X_{x,y})*y[1]*y[1,1]+(-6*X_{y^2})*y[1]^2*y[1,1]+(-3*X_{y})*y[1,1]^2+(Y_{y}-3*X_{x})*y[1,1,1]+(-4*X_{y})*y[1]*y[1,1,1])"}, {}},
        {"Y_4", Shape::Scalar, 4,
         {R"( :: Y_{x^4}+(4*Y_{x^3,y}-X_{x^4})*y[1]+(6*Y_{x^2,y^2}-4*X_{x^3,y})*y[1]^2+(4*Y_{x,y^3}-6*X_{x^2,y^2})*y[1]^3+(Y_{y^4}-4*X_{x,y^3})*y[1]^4+(-X_{y^4})*y[1]^5+(6*Y_{x^2,y}-4*X_{x^3})*y[1,1]+(12*Y_{x,y^2}-18*X_{x^2,y})*y[1]*y[1,1]+(6*Y_{y^3}-24*X_{x,y^2})*y[1]^2*y[1,1]+(-10*X_{y^3})*y[1]^3*y[1,1]+(3*Y_{y^2}-12*X_{x,y})*y[1,1]^2+(-15*X_{y^2})*y[1]*y[1,1]^2+(4*Y_{x,y}-6*X_{x^2})*y[1,1,1]+(4*Y_{y^2}-16*X_{x,y})*y[1]*y[1,1,1]+(-10*X_{y^2})*y[1]^2*y[1,1,1]+(-10*X_{y})*y[1,1]*y[1,1,1]+(Y_{y}-4*X_{x})*y[1,1,1,1]+(-5*X_{y})*y[1]*y[1,1,1,1])"}, {}},
        {"Y_5", Shape::Scalar, 5,
         {R"( :: Y_{x^5}+(5*Y_{x^4,y}-X_{x^5})*y[1]+(10*Y_{x^3,y^2}-5*X_{x^4,y})*y[1]^2+(10*Y_{x^2,y^3}-10*X_{x^3,y^2})*y[1]^3+(5*Y_{x,y^4}-10*X_{x^2,y^3})*y[1]^4+(Y_{y^5}-5*X_{x,y^4})*y[1]^5+(-X_{y^5})*y[1]^6+(10*Y_{x^3,y}-5*X_{x^4})*y[1,1]+(30*Y_{x^2,y^2}-30*X_{x^3,y})*y[1]*y[1,1]+(30*Y_{x,y^3}-60*X_{x^2,y^2})*y[1]^2*y[1,1]+(10*Y_{y^4}-50*X_{x,y^3})*y[1]^3*y[1,1]+(-15*X_{y^4})*y[1]^4*y[1,1]+(15*Y_{x,y^2}-30*X_{x^2,y})*y[1,1]^2+(15*Y_{y^3}-75*X_{x,y^2})*y[1]*y[1,1]^2+(-45*X_{y^3})*y[1]^2*y[1,1]^2+(-15*X_{y^2})*y[1,1]^3+(10*Y_{x^2,y}-10*X_{x^3})*y[1,1,1]+(20*Y_{x,y^2}-40*X_{x^2,y})*y[1]*y[1,1,1]+(10*Y_{y^3}-50*X_{x,y^2})*y[1]^2*y[1,1,1]+(-20*X_{y^3})*y[1]^3*y[1,1,1]+(10*Y_{y^2}-50*X_{x,y})*y[1,1]*y[1,1,1]+(-60*X_{y^2})*y[1]*y[1,1]*y[1,1,1]+(-10*X_{y})*y[1,1,1]^2+(5*Y_{x,y}-10*X_{x^2})*y[1,1,1,1]+(5*Y_{y^2}-25*X_{x,y})*y[1]*y[1,1,1,1]+(-15*X_{y^2})*y[1]^2*y[1,1,1,1]+(-15*X_{y})*y[1,1]*y[1,1,1,1]+(Y_{y}-5*X_{x})*y[1,1,1,1,1]+(-6*X_{y})*y[1]*y[1,1,1,1,1])"},
         {{0, R"((Y_{y}-5*X_{y})*y[1,1,1,1,1])", R"((Y_{y}-5*X_{x})*y[1,1,1,1,1])", "X_y printed for X_x in the y_5 coefficient"}}},
        {"Y_6", Shape::Scalar, 6,
         {R"( :: Y_{x^6}+(6*Y_{x^5,y}-X_{x^6})*y[1]+(15*Y_{x^4,y^2}-6*X_{x^5,y})*y[1]^2+(20*Y_{x^3,y^3}-15*X_{x^4,y^2})*y[1]^3+(15*Y_{x^2,y^4}-20*X_{x^3,y^3})*y[1]^4+(6*Y_{x,y^5}-15*X_{x^2,y^4})*y[1]^5+(Y_{y^6}-6*X_{x,y^5})*y[1]^6+(-X_{y^6})*y[1]^7+(15*Y_{x^4,y}-6*X_{x^5})*y[1,1]+(60*Y_{x^3,y^2}-45*X_{x^4,y})*y[1]*y[1,1]+(90*Y_{x^2,y^3}-120*X_{x^3,y^2})*y[1]^2*y[1,1]+(60*Y_{x,y^4}-150*X_{x^2,y^3})*y[1]^3*y[1,1]+(15*Y_{y^5}-90*X_{x,y^4})*y[1]^4*y[1,1]+(-21*X_{y^5})*y[1]^5*y[1,1]+(45*Y_{x^2,y^2}-60*X_{x^3,y})*y[1,1]^2+(90*Y_{x,y^3}-225*X_{x^2,y^2})*y[1]*y[1,1]^2+(45*Y_{y^4}-270*X_{x,y^3})*y[1]^2*y[1,1]^2+(-105*X_{y^4})*y[1]^3*y[1,1]^2+(15*Y_{y^3}-90*X_{x,y^2})*y[1,1]^3+(-105*X_{y^3})*y[1]*y[1,1]^3+(20*Y_{x^3,y}-15*X_{x^4})*y[1,1,1]+(60*Y_{x^2,y^2}-80*X_{x^3,y})*y[1]*y[1,1,1]+(60*Y_{x,y^3}-150*X_{x^2,y^2})*y[1]^2*y[1,1,1]+(20*Y_{y^4}-120*X_{x,y^3})*y[1]^3*y[1,1,1]+(-35*X_{y^4})*y[1]^4*y[1,1,1]+(60*Y_{x,y^2}-150*X_{x^2,y})*y[1,1]*y[1,1,1]+(60*Y_{y^3}-360*X_{x,y^2})*y[1]*y[1,1]*y[1,1,1]+(-210*X_{y^3})*y[1]^2*y[1,1]*y[1,1,1]+(-105*X_{y^2})*y[1,1]^2*y[1,1,1]+(10*Y_{y^2}-60*X_{x,y})*y[1,1,1]^2+(-70*X_{y^2})*y[1]*y[1,1,1]^2+(15*Y_{x^2,y}-20*X_{x^3})*y[1,1,1,1]+(30*Y_{x,y^2}-75*X_{x^2,y})*y[1]*y[1,1,1,1]+(15*Y_{y^3}-90*X_{x,y^2})*y[1]^2*y[1,1,1,1]+(-35*X_{y^3})*y[1]^3*y[1,1,1,1]+(15*Y_{y^2}-90*X_{x,y})*y[1,1]*y[1,1,1,1]+(-105*X_{y^2})*y[1]*y[1,1]*y[1,1,1,1]+(-35*X_{y})*y[1,1,1]*y[1,1,1,1]+(6*Y_{x,y}-15*X_{x^2})*y[1,1,1,1,1]+(6*Y_{y^2}-36*X_{x,y})*y[1]*y[1,1,1,1,1]+(-21*X_{y^2})*y[1]^2*y[1,1,1,1,1]+(-21*X_{y})*y[1,1]*y[1,1,1,1,1]+(Y_{y}-6*X_{x})*y[1,1,1,1,1,1]+(-7*X_{y})*y[1]*y[1,1,1,1,1,1])"},
         {{0, R"((Y_{y}-6*X_{y})*y[1,1,1,1,1,1])", R"((Y_{y}-6*X_{x})*y[1,1,1,1,1,1])", "X_y printed for X_x in the y_6 coefficient"},
          {0, R"((-210*X_{y^4})*y[1]^3*y[1,1]^2)", R"((-105*X_{y^4})*y[1]^3*y[1,1]^2)", "coefficient 210 printed for 105"}}},
        {"Y_{i1}", Shape::OneDependent, 1,
         {R"( :: Y{1}_{x$i1})",
          R"(k1 :: (d($i1;$k1)*Y{1}_{y1}-X{$k1}_{x$i1})*y1[$k1])",
          R"(k1 k2 :: (-d($i1;$k1)*X{$k2}_{y1})*y1[$k1]*y1[$k2])"}, {}},
        {"Y_{i1,i2}", Shape::OneDependent, 2,
         {R"( :: Y{1}_{x$i1,x$i2})",
          R"(k1 :: (d($i1;$k1)*Y{1}_{x$i2,y1}+d($i2;$k1)*Y{1}_{x$i1,y1}-X{$k1}_{x$i1,x$i2})*y1[$k1])",
          R"(k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{1}_{y1,y1}-d($i1;$k1)*X{$k2}_{x$i2,y1}-d($i2;$k1)*X{$k2}_{x$i1,y1})*y1[$k1]*y1[$k2])",
          R"(k1 k2 k3 :: (-d($i1,$i2;$k1,$k2)*X{$k3}_{y1,y1})*y1[$k1]*y1[$k2]*y1[$k3])",
          R"(k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{1}_{y1}-d($i1;$k1)*X{$k2}_{x$i2}-d($i2;$k1)*X{$k2}_{x$i1})*y1[$k1,$k2])",
          R"(k1 k2 k3 :: (-d($i1,$i2;$k1,$k2)*X{$k3}_{y1}-d($i1,$i2;$k3,$k1)*X{$k2}_{y1}-d($i1,$i2;$k2,$k3)*X{$k1}_{y1})*y1[$k1]*y1[$k2,$k3])"}, {}},
        {"Y_{i1,i2,i3}", Shape::OneDependent, 3,
         {R"( :: Y{1}_{x$i1,x$i2,x$i3})",
          R"(k1 :: (d($i1;$k1)*Y{1}_{x$i2,x$i3,y1}+d($i2;$k1)*Y{1}_{x$i1,x$i3,y1}+d($i3;$k1)*Y{1}_{x$i1,x$i2,y1}-X{$k1}_{x$i1,x$i2,x$i3})*y1[$k1])",
          R"(k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{1}_{x$i3,y1,y1}+d($i3,$i1;$k1,$k2)*Y{1}_{x$i2,y1,y1}+d($i2,$i3;$k1,$k2)*Y{1}_{x$i1,y1,y1}-d($i1;$k1)*X{$k2}_{x$i2,x$i3,y1}-d($i2;$k1)*X{$k2}_{x$i1,x$i3,y1}-d($i3;$k1)*X{$k2}_{x$i1,x$i2,y1})*y1[$k1]*y1[$k2])",
          R"(k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{1}_{y1,y1,y1}-d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3,y1,y1}-d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2,y1,y1}-d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1,y1,y1})*y1[$k1]*y1[$k2]*y1[$k3])",
          R"(k1 k2 k3 k4 :: (-d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y1,y1,y1})*y1[$k1]*y1[$k2]*y1[$k3]*y1[$k4])",
          R"(k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{1}_{x$i3,y1}+d($i3,$i1;$k1,$k2)*Y{1}_{x$i2,y1}+d($i2,$i3;$k1,$k2)*Y{1}_{x$i1,y1}-d($i1;$k1)*X{$k2}_{x$i2,x$i3}-d($i2;$k1)*X{$k2}_{x$i1,x$i3}-d($i3;$k1)*X{$k2}_{x$i1,x$i2})*y1[$k1,$k2])",
          R"(k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{1}_{y1,y1}+d($i1,$i2,$i3;$k3,$k1,$k2)*Y{1}_{y1,y1}+d($i1,$i2,$i3;$k2,$k3,$k1)*Y{1}_{y1,y1}-d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3,y1}-d($i1,$i2;$k3,$k1)*X{$k2}_{x$i3,y1}-d($i1,$i2;$k2,$k3)*X{$k1}_{x$i3,y1}-d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2,y1}-d($i1,$i3;$k3,$k1)*X{$k2}_{x$i2,y1}-d($i1,$i3;$k2,$k3)*X{$k1}_{x$i2,y1}-d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1,y1}-d($i2,$i3;$k3,$k1)*X{$k2}_{x$i1,y1}-d($i2,$i3;$k2,$k3)*X{$k1}_{x$i1,y1})*y1[$k1]*y1[$k2,$k3])",
          R"(k1 k2 k3 k4 :: (-d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y1,y1}-d($i1,$i2,$i3;$k2,$k3,$k1)*X{$k4}_{y1,y1}-d($i1,$i2,$i3;$k3,$k2,$k1)*X{$k4}_{y1,y1}-d($i1,$i2,$i3;$k3,$k4,$k1)*X{$k2}_{y1,y1}-d($i1,$i2,$i3;$k3,$k1,$k4)*X{$k2}_{y1,y1}-d($i1,$i2,$i3;$k1,$k3,$k4)*X{$k2}_{y1,y1})*y1[$k1]*y1[$k2]*y1[$k3,$k4])",
          R"(k1 k2 k3 k4 :: (-d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y1}-d($i1,$i2,$i3;$k2,$k3,$k1)*X{$k4}_{y1}-d($i1,$i2,$i3;$k3,$k1,$k2)*X{$k4}_{y1})*y1[$k1,$k2]*y1[$k3,$k4])",
          R"(k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{1}_{y1}-d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3}-d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2}-d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1})*y1[$k1,$k2,$k3])",
          R"(k1 k2 k3 k4 :: (-d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y1}-d($i1,$i2,$i3;$k4,$k1,$k2)*X{$k3}_{y1}-d($i1,$i2,$i3;$k3,$k4,$k1)*X{$k2}_{y1}-d($i1,$i2,$i3;$k2,$k3,$k4)*X{$k1}_{y1})*y1[$k1]*y1[$k2,$k3,$k4])"}, {}},
        {"Y^j_1", Shape::OneIndependent, 1,
         {R"( :: Y{$j}_{x1})",
          R"(l1 :: (Y{$j}_{y$l1}-d($l1;$j)*X{1}_{x1})*y$l1[1])",
          R"(l1 l2 :: (-d($l1;$j)*X{1}_{y$l2})*y$l1[1]*y$l2[1])"}, {}},
        {"Y^j_2", Shape::OneIndependent, 2,
         {R"( :: Y{$j}_{x1,x1})",
          R"(l1 :: (2*Y{$j}_{x1,y$l1}-d($l1;$j)*X{1}_{x1,x1})*y$l1[1])",
          R"(l1 l2 :: (Y{$j}_{y$l1,y$l2}-d($l1;$j)*2*X{1}_{x1,y$l2})*y$l1[1]*y$l2[1])",
          R"(l1 l2 l3 :: (-d($l1;$j)*X{1}_{y$l2,y$l3})*y$l1[1]*y$l2[1]*y$l3[1])",
          R"(l1 :: (Y{$j}_{y$l1}-d($l1;$j)*2*X{1}_{x1})*y$l1[1,1])",
          R"(l1 l2 :: (-d($l1;$j)*X{1}_{y$l2}-d($l2;$j)*2*X{1}_{y$l1})*y$l1[1]*y$l2[1,1])"}, {}},
        {"Y^j_3", Shape::OneIndependent, 3,
         {R"( :: Y{$j}_{x1,x1,x1})",
          R"(l1 :: (3*Y{$j}_{x1,x1,y$l1}-d($l1;$j)*X{1}_{x1,x1,x1})*y$l1[1])",
          R"(l1 l2 :: (3*Y{$j}_{x1,y$l1,y$l2}-d($l1;$j)*3*X{1}_{x1,x1,y$l2})*y$l1[1]*y$l2[1])",
          R"(l1 l2 l3 :: (Y{$j}_{y$l1,y$l2,y$l3}-d($l1;$j)*3*X{1}_{x1,y$l2,y$l3})*y$l1[1]*y$l2[1]*y$l3[1])",
          R"(l1 l2 l3 l4 :: (-d($l1;$j)*X{1}_{y$l2,y$l3,y$l4})*y$l1[1]*y$l2[1]*y$l3[1]*y$l4[1])",
          R"(l1 :: (3*Y{$j}_{x1,y$l1}-d($l1;$j)*3*X{1}_{x1,x1})*y$l1[1,1])",
          R"(l1 l2 :: (3*Y{$j}_{y$l1,y$l2}-d($l1;$j)*3*X{1}_{x1,y$l2}-d($l2;$j)*6*X{1}_{x1,y$l1})*y$l1[1]*y$l2[1,1])",
          R"(l1 l2 l3 :: (-d($l1;$j)*3*X{1}_{y$l2,y$l3}-d($l3;$j)*3*X{1}_{y$l1,y$l2})*y$l1[1]*y$l2[1]*y$l3[1,1])",
          R"(l1 l2 :: (-d($l1;$j)*3*X{1}_{y$l2})*y$l1[1,1]*y$l2[1,1])",
          R"(l1 :: (Y{$j}_{y$l1}-d($l1;$j)*3*X{1}_{x1})*y$l1[1,1,1])",
          R"(l1 l2 :: (-d($l1;$j)*X{1}_{y$l2}-d($l2;$j)*3*X{1}_{y$l1})*y$l1[1]*y$l2[1,1,1])"},
         {{8, R"(-d($l3;$j)*3*X{1}_{y$l2})", R"(-d($l1;$j)*3*X{1}_{y$l2})", "unbound l3 in the y_2 y_2 coefficient, read as l1"}}},
        {"Y^j_4", Shape::OneIndependent, 4,
         {R"( :: Y{$j}_{x1,x1,x1,x1})",
          R"(l1 :: (4*Y{$j}_{x1,x1,x1,y$l1}-d($l1;$j)*X{1}_{x1,x1,x1,x1})*y$l1[1])",
          R"(l1 l2 :: (6*Y{$j}_{x1,x1,y$l1,y$l2}-d($l1;$j)*4*X{1}_{x1,x1,x1,y$l2})*y$l1[1]*y$l2[1])",
          R"(l1 l2 l3 :: (4*Y{$j}_{x1,y$l1,y$l2,y$l3}-d($l1;$j)*6*X{1}_{x1,x1,y$l2,y$l3})*y$l1[1]*y$l2[1]*y$l3[1])",
          R"(l1 l2 l3 l4 :: (Y{$j}_{y$l1,y$l2,y$l3,y$l4}-d($l1;$j)*4*X{1}_{x1,y$l2,y$l3,y$l4})*y$l1[1]*y$l2[1]*y$l3[1]*y$l4[1])",
          R"(l1 l2 l3 l4 l5 :: (-d($l1;$j)*X{1}_{y$l2,y$l3,y$l4,y$l5})*y$l1[1]*y$l2[1]*y$l3[1]*y$l4[1]*y$l5[1])",
          R"(l1 :: (6*Y{$j}_{x1,x1,y$l1}-d($l1;$j)*4*X{1}_{x1,x1,x1})*y$l1[1,1])",
          R"(l1 l2 :: (12*Y{$j}_{x1,y$l1,y$l2}-d($l1;$j)*6*X{1}_{x1,x1,y$l2}-d($l2;$j)*12*X{1}_{x1,x1,y$l1})*y$l1[1]*y$l2[1,1])",
          R"(l1 l2 l3 :: (6*Y{$j}_{y$l1,y$l2,y$l3}-d($l1;$j)*12*X{1}_{x1,y$l2,y$l3}-d($l3;$j)*12*X{1}_{x1,y$l1,y$l2})*y$l1[1]*y$l2[1]*y$l3[1,1])",
          R"(l1 l2 l3 l4 :: (-d($l1;$j)*6*X{1}_{y$l2,y$l3,y$l4}-d($l4;$j)*4*X{1}_{y$l1,y$l2,y$l3})*y$l1[1]*y$l2[1]*y$l3[1]*y$l4[1,1])",
          R"(l1 l2 :: (3*Y{$j}_{y$l1,y$l2}-d($l1;$j)*12*X{1}_{x1,y$l2})*y$l1[1,1]*y$l2[1,1])",
          R"(l1 l2 l3 :: (-d($l1;$j)*3*X{1}_{y$l2,y$l3}-d($l2;$j)*12*X{1}_{y$l1,y$l3})*y$l1[1]*y$l2[1,1]*y$l3[1,1])",
          R"(l1 :: (4*Y{$j}_{x1,y$l1}-d($l1;$j)*6*X{1}_{x1,x1})*y$l1[1,1,1])",
          R"(l1 l2 :: (4*Y{$j}_{y$l1,y$l2}-d($l1;$j)*4*X{1}_{x1,y$l2}-d($l2;$j)*12*X{1}_{x1,y$l1})*y$l1[1]*y$l2[1,1,1])",
          R"(l1 l2 l3 :: (-d($l1;$j)*4*X{1}_{y$l2,y$l3}-d($l3;$j)*6*X{1}_{y$l1,y$l2})*y$l1[1]*y$l2[1]*y$l3[1,1,1])",
          R"(l1 l2 :: (-d($l1;$j)*4*X{1}_{y$l2}-d($l2;$j)*6*X{1}_{y$l1})*y$l1[1,1]*y$l2[1,1,1])",
          R"(l1 :: (Y{$j}_{y$l1}-d($l1;$j)*4*X{1}_{x1})*y$l1[1,1,1,1])",
          R"(l1 l2 :: (-d($l1;$j)*X{1}_{y$l2}-d($l2;$j)*4*X{1}_{y$l1})*y$l1[1]*y$l2[1,1,1,1])"},
         {{4, R"((Y{$j}_{x1,y$l1,y$l2,y$l3,y$l4})", R"((Y{$j}_{y$l1,y$l2,y$l3,y$l4})", "spurious x-derivative in the (y_1)^4 coefficient"}}},
        {"Y^j_{i1}", Shape::General, 1,
         {R"( :: Y{$j}_{x$i1})",
          R"(l1 k1 :: (d($i1;$k1)*Y{$j}_{y$l1}-d($l1;$j)*X{$k1}_{x$i1})*y$l1[$k1])",
          R"(l1 l2 k1 k2 :: (-d($l2;$j)*d($i1;$k1)*X{$k2}_{y$l1})*y$l1[$k1]*y$l2[$k2])"}, {}},
        {"Y^j_{i1,i2}", Shape::General, 2,
         {R"( :: Y{$j}_{x$i1,x$i2})",
          R"(l1 k1 :: (d($i1;$k1)*Y{$j}_{x$i2,y$l1}+d($i2;$k1)*Y{$j}_{x$i1,y$l1}-d($l1;$j)*X{$k1}_{x$i1,x$i2})*y$l1[$k1])",
          R"(l1 l2 k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{$j}_{y$l1,y$l2}-d($l2;$j)*d($i1;$k1)*X{$k2}_{x$i2,y$l1}-d($l2;$j)*d($i2;$k1)*X{$k2}_{x$i1,y$l1})*y$l1[$k1]*y$l2[$k2])",
          R"(l1 l2 l3 k1 k2 k3 :: (-d($l3;$j)*d($i1,$i2;$k1,$k2)*X{$k3}_{y$l1,y$l2})*y$l1[$k1]*y$l2[$k2]*y$l3[$k3])",
          R"(l1 k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{$j}_{y$l1}-d($l1;$j)*d($i1;$k1)*X{$k2}_{x$i2}-d($l1;$j)*d($i2;$k1)*X{$k2}_{x$i1})*y$l1[$k1,$k2])",
          R"(l1 l2 k1 k2 k3 :: (-d($l1;$j)*d($i1,$i2;$k2,$k3)*X{$k1}_{y$l2}-d($l2;$j)*d($i1,$i2;$k3,$k1)*X{$k2}_{y$l1}-d($l2;$j)*d($i1,$i2;$k1,$k2)*X{$k3}_{y$l1})*y$l1[$k1]*y$l2[$k2,$k3])"},
         {{5, R"(*y$l1[$k1]*y$l2[$k2]*y$l3[$k3])", R"(*y$l1[$k1]*y$l2[$k2,$k3])", "last jet monomial printed as three first-order jets"}}},
        {"Y^j_{i1,i2,i3}", Shape::General, 3,
         {R"( :: Y{$j}_{x$i1,x$i2,x$i3})",
          R"(l1 k1 :: (d($i1;$k1)*Y{$j}_{x$i2,x$i3,y$l1}+d($i2;$k1)*Y{$j}_{x$i1,x$i3,y$l1}+d($i3;$k1)*Y{$j}_{x$i1,x$i2,y$l1}-d($l1;$j)*X{$k1}_{x$i1,x$i2,x$i3})*y$l1[$k1])",
          R"(l1 l2 k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{$j}_{x$i3,y$l1,y$l2}+d($i3,$i1;$k1,$k2)*Y{$j}_{x$i2,y$l1,y$l2}+d($i2,$i3;$k1,$k2)*Y{$j}_{x$i1,y$l1,y$l2}-d($l2;$j)*d($i1;$k1)*X{$k2}_{x$i2,x$i3,y$l1}-d($l2;$j)*d($i2;$k1)*X{$k2}_{x$i1,x$i3,y$l1}-d($l2;$j)*d($i3;$k1)*X{$k2}_{x$i1,x$i2,y$l1})*y$l1[$k1]*y$l2[$k2])",
          R"(l1 l2 l3 k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{$j}_{y$l1,y$l2,y$l3}-d($l3;$j)*d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3,y$l1,y$l2}-d($l3;$j)*d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2,y$l1,y$l2}-d($l3;$j)*d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1,y$l1,y$l2})*y$l1[$k1]*y$l2[$k2]*y$l3[$k3])",
          R"(l1 l2 l3 l4 k1 k2 k3 k4 :: (-d($l4;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y$l1,y$l2,y$l3})*y$l1[$k1]*y$l2[$k2]*y$l3[$k3]*y$l4[$k4])",
          R"(l1 k1 k2 :: (d($i1,$i2;$k1,$k2)*Y{$j}_{x$i3,y$l1}+d($i3,$i1;$k1,$k2)*Y{$j}_{x$i2,y$l1}+d($i2,$i3;$k1,$k2)*Y{$j}_{x$i1,y$l1}-d($l1;$j)*d($i1;$k1)*X{$k2}_{x$i2,x$i3}-d($l1;$j)*d($i2;$k1)*X{$k2}_{x$i1,x$i3}-d($l1;$j)*d($i3;$k1)*X{$k2}_{x$i1,x$i2})*y$l1[$k1,$k2])",
          R"(l1 l2 k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{$j}_{y$l1,y$l2}+d($i1,$i2,$i3;$k3,$k1,$k2)*Y{$j}_{y$l1,y$l2}+d($i1,$i2,$i3;$k2,$k3,$k1)*Y{$j}_{y$l1,y$l2}-d($l1;$j)*d($i1,$i2;$k2,$k3)*X{$k1}_{x$i3,y$l2}-d($l1;$j)*d($i1,$i3;$k2,$k3)*X{$k1}_{x$i2,y$l2}-d($l1;$j)*d($i2,$i3;$k2,$k3)*X{$k1}_{x$i1,y$l2}-d($l2;$j)*d($i1,$i2;$k3,$k1)*X{$k2}_{x$i3,y$l1}-d($l2;$j)*d($i1,$i3;$k3,$k1)*X{$k2}_{x$i2,y$l1}-d($l2;$j)*d($i2,$i3;$k3,$k1)*X{$k2}_{x$i1,y$l1}-d($l2;$j)*d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3,y$l1}-d($l2;$j)*d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2,y$l1}-d($l2;$j)*d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1,y$l1})*y$l1[$k1]*y$l2[$k2,$k3])",
          R"(l1 l2 l3 k1 k2 k3 k4 :: (-d($l3;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y$l1,y$l2}-d($l3;$j)*d($i1,$i2,$i3;$k2,$k3,$k1)*X{$k4}_{y$l1,y$l2}-d($l3;$j)*d($i1,$i2,$i3;$k3,$k2,$k1)*X{$k4}_{y$l1,y$l2}-d($l2;$j)*d($i1,$i2,$i3;$k3,$k4,$k1)*X{$k2}_{y$l1,y$l3}-d($l2;$j)*d($i1,$i2,$i3;$k3,$k1,$k4)*X{$k2}_{y$l1,y$l3}-d($l2;$j)*d($i1,$i2,$i3;$k1,$k3,$k4)*X{$k2}_{y$l1,y$l3})*y$l1[$k1]*y$l2[$k2]*y$l3[$k3,$k4])",
          R"(l1 l2 k1 k2 k3 k4 :: (-d($l2;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y$l1}-d($l2;$j)*d($i1,$i2,$i3;$k2,$k4,$k1)*X{$k3}_{y$l1}-d($l2;$j)*d($i1,$i2,$i3;$k4,$k1,$k2)*X{$k3}_{y$l1})*y$l1[$k1,$k2]*y$l2[$k3,$k4])",
          R"(l1 k1 k2 k3 :: (d($i1,$i2,$i3;$k1,$k2,$k3)*Y{$j}_{y$l1}-d($l1;$j)*d($i1,$i2;$k1,$k2)*X{$k3}_{x$i3}-d($l1;$j)*d($i1,$i3;$k1,$k2)*X{$k3}_{x$i2}-d($l1;$j)*d($i2,$i3;$k1,$k2)*X{$k3}_{x$i1})*y$l1[$k1,$k2,$k3])",
          R"(l1 l2 k1 k2 k3 k4 :: (-d($l2;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y$l1}-d($l2;$j)*d($i1,$i2,$i3;$k4,$k1,$k2)*X{$k3}_{y$l1}-d($l2;$j)*d($i1,$i2,$i3;$k3,$k4,$k1)*X{$k2}_{y$l1}-d($l1;$j)*d($i1,$i2,$i3;$k2,$k3,$k4)*X{$k1}_{y$l2})*y$l1[$k1]*y$l2[$k2,$k3,$k4])"},
         {{8, R"((-d($l2;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k3}_{y$l1})", R"((-d($l2;$j)*d($i1,$i2,$i3;$k1,$k2,$k3)*X{$k4}_{y$l1})", "upper index k3 of X repeats a delta index, read as k4"}}},
    };
    return f;
}

const std::vector<Fixture> &fdb_fixtures() {
    static const std::vector<Fixture> f = {
        {"h_1", Shape::Scalar, 1,
         {R"( :: f_{y1}*g{1}_{x1})"}, {}},
        {"h_2", Shape::Scalar, 2,
         {R"( :: f_{y1,y1}*g{1}_{x1}^2)",
          R"( :: f_{y1}*g{1}_{x1,x1})"}, {}},
        {"h_3", Shape::Scalar, 3,
         {R"( :: f_{y1,y1,y1}*g{1}_{x1}^3)",
          R"( :: 3*f_{y1,y1}*g{1}_{x1}*g{1}_{x1,x1})",
          R"( :: f_{y1}*g{1}_{x1,x1,x1})"}, {}},
        {"h_4", Shape::Scalar, 4,
         {R"( :: f_{y1,y1,y1,y1}*g{1}_{x1}^4)",
          R"( :: 6*f_{y1,y1,y1}*g{1}_{x1}^2*g{1}_{x1,x1})",
          R"( :: 3*f_{y1,y1}*g{1}_{x1,x1}^2)",
          R"( :: 4*f_{y1,y1}*g{1}_{x1}*g{1}_{x1,x1,x1})",
          R"( :: f_{y1}*g{1}_{x1,x1,x1,x1})"}, {}},
        {"h_5", Shape::Scalar, 5,
         {R"( :: f_{y1,y1,y1,y1,y1}*g{1}_{x1}^5)",
          R"( :: 10*f_{y1,y1,y1,y1}*g{1}_{x1}^3*g{1}_{x1,x1})",
          R"( :: 10*f_{y1,y1,y1}*g{1}_{x1}^2*g{1}_{x1,x1,x1})",
          R"( :: 15*f_{y1,y1,y1}*g{1}_{x1}*g{1}_{x1,x1}^2)",
          R"( :: 10*f_{y1,y1}*g{1}_{x1,x1}*g{1}_{x1,x1,x1})",
          R"( :: 5*f_{y1,y1}*g{1}_{x1}*g{1}_{x1,x1,x1,x1})",
          R"( :: f_{y1}*g{1}_{x1,x1,x1,x1,x1})"},
         {{2, R"(15*)", R"(10*)", "coefficients 10 and 15 of the two f_3 terms interchanged"},
          {3, R"(10*)", R"(15*)", "coefficients 10 and 15 of the two f_3 terms interchanged"}}},
        {"h_6", Shape::Scalar, 6,
         {R"( :: f_{y1,y1,y1,y1,y1,y1}*g{1}_{x1}^6)",
          R"( :: 15*f_{y1,y1,y1,y1,y1}*g{1}_{x1}^4*g{1}_{x1,x1})",
          R"( :: 45*f_{y1,y1,y1,y1}*g{1}_{x1}^2*g{1}_{x1,x1}^2)",
          R"( :: 15*f_{y1,y1,y1}*g{1}_{x1,x1}^3)",
          R"( :: 20*f_{y1,y1,y1,y1}*g{1}_{x1}^3*g{1}_{x1,x1,x1})",
          R"( :: 60*f_{y1,y1,y1}*g{1}_{x1}*g{1}_{x1,x1}*g{1}_{x1,x1,x1})",
          R"( :: 10*f_{y1,y1}*g{1}_{x1,x1,x1}^2)",
          R"( :: 15*f_{y1,y1,y1}*g{1}_{x1}^2*g{1}_{x1,x1,x1,x1})",
          R"( :: 15*f_{y1,y1}*g{1}_{x1,x1}*g{1}_{x1,x1,x1,x1})",
          R"( :: 6*f_{y1,y1}*g{1}_{x1}*g{1}_{x1,x1,x1,x1,x1})",
          R"( :: f_{y1}*g{1}_{x1,x1,x1,x1,x1,x1})"}, {}},
        {"h_{i1}", Shape::OneDependent, 1,
         {R"( :: f_{y1}*(g{1}_{x$i1}))"}, {}},
        {"h_{i1,i2}", Shape::OneDependent, 2,
         {R"( :: f_{y1,y1}*(g{1}_{x$i1}*g{1}_{x$i2}))",
          R"( :: f_{y1}*(g{1}_{x$i1,x$i2}))"}, {}},
        {"h_{i1,i2,i3}", Shape::OneDependent, 3,
         {R"( :: f_{y1,y1,y1}*(g{1}_{x$i1}*g{1}_{x$i2}*g{1}_{x$i3}))",
          R"( :: f_{y1,y1}*(g{1}_{x$i1}*g{1}_{x$i2,x$i3}+g{1}_{x$i2}*g{1}_{x$i1,x$i3}+g{1}_{x$i3}*g{1}_{x$i1,x$i2}))",
          R"( :: f_{y1}*(g{1}_{x$i1,x$i2,x$i3}))"}, {}},
        {"h_{i1,i2,i3,i4}", Shape::OneDependent, 4,
         {R"( :: f_{y1,y1,y1,y1}*(g{1}_{x$i1}*g{1}_{x$i2}*g{1}_{x$i3}*g{1}_{x$i4}))",
          R"( :: f_{y1,y1,y1}*(g{1}_{x$i2}*g{1}_{x$i3}*g{1}_{x$i1,x$i4}+g{1}_{x$i3}*g{1}_{x$i1}*g{1}_{x$i2,x$i4}+g{1}_{x$i1}*g{1}_{x$i2}*g{1}_{x$i3,x$i4}+g{1}_{x$i1}*g{1}_{x$i4}*g{1}_{x$i2,x$i3}+g{1}_{x$i2}*g{1}_{x$i4}*g{1}_{x$i1,x$i3}+g{1}_{x$i3}*g{1}_{x$i4}*g{1}_{x$i1,x$i2}))",
          R"( :: f_{y1,y1}*(g{1}_{x$i1,x$i2}*g{1}_{x$i3,x$i4}+g{1}_{x$i1,x$i3}*g{1}_{x$i2,x$i4}+g{1}_{x$i1,x$i4}*g{1}_{x$i2,x$i3}))",
          R"( :: f_{y1,y1}*(g{1}_{x$i1}*g{1}_{x$i2,x$i3,x$i4}+g{1}_{x$i2}*g{1}_{x$i1,x$i3,x$i4}+g{1}_{x$i3}*g{1}_{x$i1,x$i2,x$i4}+g{1}_{x$i4}*g{1}_{x$i1,x$i2,x$i3}))",
          R"( :: f_{y1}*(g{1}_{x$i1,x$i2,x$i3,x$i4}))"}, {}},
        {"h_1 (m deps)", Shape::OneIndependent, 1,
         {R"(l1 :: f_{y$l1}*g{$l1}_{x1})"}, {}},
        {"h_2 (m deps)", Shape::OneIndependent, 2,
         {R"(l1 l2 :: f_{y$l1,y$l2}*g{$l1}_{x1}*g{$l2}_{x1})",
          R"(l1 :: f_{y$l1}*g{$l1}_{x1,x1})"}, {}},
        {"h_3 (m deps)", Shape::OneIndependent, 3,
         {R"(l1 l2 l3 :: f_{y$l1,y$l2,y$l3}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1})",
          R"(l1 l2 :: 3*f_{y$l1,y$l2}*g{$l1}_{x1}*g{$l2}_{x1,x1})",
          R"(l1 :: f_{y$l1}*g{$l1}_{x1,x1,x1})"}, {}},
        {"h_4 (m deps)", Shape::OneIndependent, 4,
         {R"(l1 l2 l3 l4 :: f_{y$l1,y$l2,y$l3,y$l4}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1}*g{$l4}_{x1})",
          R"(l1 l2 l3 :: 6*f_{y$l1,y$l2,y$l3}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1,x1})",
          R"(l1 l2 :: 3*f_{y$l1,y$l2}*g{$l1}_{x1,x1}*g{$l2}_{x1,x1})",
          R"(l1 l2 :: 4*f_{y$l1,y$l2}*g{$l1}_{x1}*g{$l2}_{x1,x1,x1})",
          R"(l1 :: f_{y$l1}*g{$l1}_{x1,x1,x1,x1})"}, {}},
        {"h_5 (m deps)", Shape::OneIndependent, 5,
         {R"(l1 l2 l3 l4 l5 :: f_{y$l1,y$l2,y$l3,y$l4,y$l5}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1}*g{$l4}_{x1}*g{$l5}_{x1})",
          R"(l1 l2 l3 l4 :: 10*f_{y$l1,y$l2,y$l3,y$l4}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1}*g{$l4}_{x1,x1})",
          R"(l1 l2 l3 :: 15*f_{y$l1,y$l2,y$l3}*g{$l1}_{x1}*g{$l2}_{x1,x1}*g{$l3}_{x1,x1})",
          R"(l1 l2 l3 :: 10*f_{y$l1,y$l2,y$l3}*g{$l1}_{x1}*g{$l2}_{x1}*g{$l3}_{x1,x1,x1})",
          R"(l1 l2 :: 10*f_{y$l1,y$l2}*g{$l1}_{x1,x1}*g{$l2}_{x1,x1,x1})",
          R"(l1 l2 :: 5*f_{y$l1,y$l2}*g{$l1}_{x1}*g{$l2}_{x1,x1,x1,x1})",
          R"(l1 :: f_{y$l1}*g{$l1}_{x1,x1,x1,x1,x1})"}, {}},
        {"h_{i1} (m deps)", Shape::General, 1,
         {R"(l1 :: f_{y$l1}*(g{$l1}_{x$i1}))"}, {}},
        {"h_{i1,i2} (m deps)", Shape::General, 2,
         {R"(l1 l2 :: f_{y$l1,y$l2}*(g{$l1}_{x$i1}*g{$l2}_{x$i2}))",
          R"(l1 :: f_{y$l1}*(g{$l1}_{x$i1,x$i2}))"}, {}},
        {"h_{i1,i2,i3} (m deps)", Shape::General, 3,
         {R"(l1 l2 l3 :: f_{y$l1,y$l2,y$l3}*(g{$l1}_{x$i1}*g{$l2}_{x$i2}*g{$l3}_{x$i3}))",
          R"(l1 l2 :: f_{y$l1,y$l2}*(g{$l1}_{x$i1}*g{$l2}_{x$i2,x$i3}+g{$l1}_{x$i2}*g{$l2}_{x$i1,x$i3}+g{$l1}_{x$i3}*g{$l2}_{x$i1,x$i2}))",
          R"(l1 :: f_{y$l1}*(g{$l1}_{x$i1,x$i2,x$i3}))"}, {}},
        {"h_{i1,i2,i3,i4} (m deps)", Shape::General, 4,
         {R"(l1 l2 l3 l4 :: f_{y$l1,y$l2,y$l3,y$l4}*(g{$l1}_{x$i1}*g{$l2}_{x$i2}*g{$l3}_{x$i3}*g{$l4}_{x$i4}))",
          R"(l1 l2 l3 :: f_{y$l1,y$l2,y$l3}*(g{$l1}_{x$i2}*g{$l2}_{x$i3}*g{$l3}_{x$i1,x$i4}+g{$l1}_{x$i3}*g{$l2}_{x$i1}*g{$l3}_{x$i2,x$i4}+g{$l1}_{x$i1}*g{$l2}_{x$i2}*g{$l3}_{x$i3,x$i4}+g{$l1}_{x$i1}*g{$l2}_{x$i4}*g{$l3}_{x$i2,x$i3}+g{$l1}_{x$i2}*g{$l2}_{x$i4}*g{$l3}_{x$i3,x$i1}+g{$l1}_{x$i3}*g{$l2}_{x$i4}*g{$l3}_{x$i1,x$i2}))",
          R"(l1 l2 :: f_{y$l1,y$l2}*(g{$l1}_{x$i1,x$i2}*g{$l2}_{x$i3,x$i4}+g{$l1}_{x$i1,x$i3}*g{$l2}_{x$i2,x$i4}+g{$l1}_{x$i1,x$i4}*g{$l2}_{x$i2,x$i3}))",
          R"(l1 l2 :: f_{y$l1,y$l2}*(g{$l1}_{x$i1}*g{$l2}_{x$i2,x$i3,x$i4}+g{$l1}_{x$i2}*g{$l2}_{x$i1,x$i3,x$i4}+g{$l1}_{x$i3}*g{$l2}_{x$i1,x$i2,x$i4}+g{$l1}_{x$i4}*g{$l2}_{x$i1,x$i2,x$i3}))",
          R"(l1 :: f_{y$l1}*(g{$l1}_{x$i1,x$i2,x$i3,x$i4}))"}, {}},
    };
    return f;
}

// ---- determinant and square-function forms, n = 2 ----------------------------

namespace {

std::vector<std::vector<int>> parse_words(const std::string &spec) {
    std::vector<std::vector<int>> words;
    std::stringstream ss(spec);
    for (std::string w; std::getline(ss, w, '|');) {
        std::vector<int> word;
        for (char c : w) word.push_back(c - '0');
        words.push_back(word);
    }
    return words;
}

}  // namespace

const std::vector<DetFixture> &determinant_fixtures() {
    static const std::vector<DetFixture> f = {
        {1, 1,
         "y[1,1]*D(1|2|3)+D(1|2|11)+y[1]*(2*D(1|2|13)-D(11|2|3))+y[2]*(-D(1|11|3))"
         "+y[1]*y[1]*(D(1|2|33)-2*D(13|2|3))+y[1]*y[2]*(-2*D(1|13|3))+y[1]*y[1]*y[1]*(-D(33|2|3))"
         "+y[1]*y[1]*y[2]*(-D(1|33|3))"},
        {1, 2,
         "y[1,2]*D(1|2|3)+D(1|2|12)+y[1]*(D(1|2|23)-D(12|2|3))+y[2]*(D(1|2|13)-D(1|12|3))"
         "+y[1]*y[1]*(-D(23|2|3))+y[1]*y[2]*(D(1|2|33)-D(13|2|3)-D(1|23|3))+y[2]*y[2]*(-D(1|13|3))"
         "+y[1]*y[1]*y[2]*(-D(33|2|3))+y[1]*y[2]*y[2]*(-D(1|33|3))"},
        {2, 2,
         "y[2,2]*D(1|2|3)+D(1|2|22)+y[1]*(-D(22|2|3))+y[2]*(2*D(1|2|23)-D(1|22|3))"
         "+y[1]*y[2]*(-2*D(23|2|3))+y[2]*y[2]*(D(1|2|33)-2*D(1|23|3))+y[1]*y[2]*y[2]*(-D(33|2|3))"
         "+y[2]*y[2]*y[2]*(-D(1|33|3))"},
    };
    return f;
}

Poly det_fixture(const DetFixture &f) {
    ExprContext ctx(2, 1);
    ctx.implicit_funcs = false;
    std::map<std::string, std::string> names;  // word spec -> parameter
    std::map<VarId, Poly> value;
    std::string text;
    for (size_t i = 0; i < f.text.size();) {
        if (f.text.compare(i, 2, "D(") != 0) {
            text += f.text[i++];
            continue;
        }
        size_t close = f.text.find(')', i);
        std::string spec = f.text.substr(i + 2, close - i - 2);
        auto [it, fresh] = names.emplace(spec, "det" + std::to_string(names.size()));
        if (fresh) {
            ctx.declare_param(it->second);
            value[param(it->second)] = det_words(2, parse_words(spec));
        }
        text += it->second;
        i = close + 1;
    }
    return substitute(parse_expression(text, ctx), value);
}

const std::vector<SquareFixture> &square_fixtures() {
    static const std::vector<SquareFixture> f = {
        {1, 1,
         "-Sq{3,1,1} + y[1]*(-2*Sq{3,1,3} + Sq{1,1,1}) + y[2]*Sq{2,1,1}"
         " + y[1]*y[1]*(-Sq{3,3,3} + 2*Sq{1,1,3}) + y[1]*y[2]*(2*Sq{2,1,3})"
         " + y[1]*y[1]*y[1]*Sq{1,3,3} + y[1]*y[1]*y[2]*Sq{2,3,3}"},
        {1, 2,
         "-Sq{3,1,2} + y[1]*(-Sq{3,2,3} + Sq{1,1,2}) + y[2]*(-Sq{3,1,3} + Sq{2,1,2})"
         " + y[1]*y[1]*Sq{1,2,3} + y[1]*y[2]*(-Sq{3,3,3} + Sq{1,1,3} + Sq{2,2,3}) + y[2]*y[2]*Sq{2,1,3}"
         " + y[1]*y[1]*y[2]*Sq{1,3,3} + y[1]*y[2]*y[2]*Sq{2,3,3}"},
        {2, 2,
         "-Sq{3,2,2} + y[1]*Sq{1,2,2} + y[2]*(-2*Sq{3,2,3} + Sq{2,2,2})"
         " + y[1]*y[2]*(2*Sq{1,2,3}) + y[2]*y[2]*(-Sq{3,3,3} + 2*Sq{2,2,3})"
         " + y[1]*y[2]*y[2]*Sq{1,3,3} + y[2]*y[2]*y[2]*Sq{2,3,3}"},
    };
    return f;
}

Poly square_fixture(const SquareFixture &f) { return parse_expression(f.text, flat_context(2)); }

// ---- auxiliary systems --------------------------------------------------------

namespace {

struct Alphabet {
    int n, N;
    explicit Alphabet(int n_) : n(n_), N(n_ + 1) {}
    Poly G(int a, int b) const { return Poly::of_sym(G_sym(n, a, b)); }
    Poly H(int k, int a, int b) const { return Poly::of_sym(H_sym(n, k, a, b)); }
    Poly L(int k, int j) const { return Poly::of_sym(L_sym(n, k, j)); }
    Poly M(int k) const { return Poly::of_sym(M_sym(n, k)); }
    Poly T(int j) const { return Poly::of_sym(theta_sym(n, j)); }
    Poly dx(const Poly &p, int j) const { return d_coord(p, n, j); }
    Poly dy(const Poly &p) const { return d_coord(p, n, N); }
    template <class F> Poly sum(F f) const {
        Poly r;
        for (int l = 1; l <= n; ++l) r += f(l);
        return r;
    }
};

}  // namespace

Poly theta_reference(int n, int a, int b, int j) {
    Alphabet A(n);
    const int N = A.N;
    const Q h(1, 2), t(1, 3);
    auto G = [&](int p, int q) { return A.G(p, q); };
    auto H = [&](int k, int p, int q) { return A.H(k, p, q); };
    auto L = [&](int k, int p) { return A.L(k, p); };
    auto M = [&](int k) { return A.M(k); };
    auto T = [&](int p) { return A.T(p); };
    auto S = [&](auto f) { return A.sum(f); };

    if (a <= n && b <= n) {
        int j1 = a, j2 = b;
        return Q(-2) * A.dy(G(j1, j2)) + A.dx(H(j1, j1, j1), j2) + S([&](int l) { return G(j2, l) * L(l, j1); }) +
               h * H(j1, j1, j1) * H(j2, j2, j2) - S([&](int l) { return H(l, j1, j2) * H(l, l, l); }) -
               G(j1, j2) * T(N) - h * H(j1, j1, j1) * T(j2) - h * H(j2, j2, j2) * T(j1) +
               S([&](int l) { return H(l, j1, j2) * T(l); }) + h * T(j1) * T(j2);
    }
    // Theta^{j1}_y and Theta^{n+1}_{x^{j1}} share their shape; four coefficients differ.
    auto mixed = [&](int j1, Q cH, Q cL, Q cGM, Q cGMs, Q cHL) {
        return cH * A.dy(H(j1, j1, j1)) + cL * A.dx(L(j1, j1), j1) + cGM * G(j1, j1) * M(j1) +
               cGMs * S([&](int l) { return G(j1, l) * M(l); }) - h * S([&](int l) { return H(l, l, l) * L(l, j1); }) +
               cHL * S([&](int l) { return H(j1, j1, l) * L(l, j1); }) -
               cHL * S([&](int l) { return H(l, j1, j1) * L(j1, l); }) - h * H(j1, j1, j1) * T(N) +
               h * S([&](int l) { return L(l, j1) * T(l); }) + h * T(j1) * T(N);
    };
    if (a <= n) return mixed(a, -t, 2 * t, 4 * t, 2 * t, 2 * t);
    if (b <= n) return mixed(b, -2 * t, t, 2 * t, 4 * t, t);
    return -A.dy(L(j, j)) + Q(2) * A.dx(M(j), j) + Q(2) * S([&](int l) { return H(j, j, l) * M(l); }) -
           S([&](int l) { return H(l, l, l) * M(l); }) - h * S([&](int l) { return L(l, j) * L(j, l); }) +
           S([&](int l) { return M(l) * T(l); }) + h * T(N) * T(N);
}

Poly compat_first_reference(int n, int j1, int j2, int j3) {
    Alphabet A(n);
    const Q h(1, 2), t(1, 3);
    auto G = [&](int p, int q) { return A.G(p, q); };
    auto H = [&](int k, int p, int q) { return A.H(k, p, q); };
    auto L = [&](int k, int p) { return A.L(k, p); };
    auto M = [&](int k) { return A.M(k); };
    auto dx = [&](const Poly &p, int c) { return A.dx(p, c); };
    auto dy = [&](const Poly &p) { return A.dy(p); };
    auto S = [&](auto f) { return A.sum(f); };
    auto S2 = [&](auto f) { return A.sum([&](int l) { return A.sum([&](int p) { return f(l, p); }); }); };

    Poly e;
    e += Q(-2) * dy(dx(G(j1, j2), j3)) + Q(2) * dy(dx(G(j1, j3), j2));
    e += -S([&](int l) { return dx(G(j3, l), j2) * L(l, j1); }) + S([&](int l) { return dx(G(j2, l), j3) * L(l, j1); }) -
         dy(G(j1, j2)) * H(j3, j3, j3) + dy(G(j1, j3)) * H(j2, j2, j2);
    e += Q(-2) * S([&](int l) { return dy(G(l, j3)) * H(l, j1, j2); }) +
         Q(2) * S([&](int l) { return dy(G(l, j2)) * H(l, j1, j3); }) -
         S([&](int l) { return dx(H(l, j1, j2), j3) * H(l, l, l); }) +
         S([&](int l) { return dx(H(l, j1, j3), j2) * H(l, l, l); });
    e += -2 * t * dy(H(j2, j2, j2)) * G(j1, j3) + 2 * t * dy(H(j3, j3, j3)) * G(j1, j2) -
         t * dx(L(j3, j3), j3) * G(j1, j2) + t * dx(L(j2, j2), j2) * G(j1, j3);
    e += -S([&](int l) { return dx(L(l, j1), j2) * G(j3, l); }) + S([&](int l) { return dx(L(l, j1), j3) * G(j2, l); });
    e += -2 * t * G(j1, j2) * G(j3, j3) * M(j3) + 2 * t * G(j1, j3) * G(j2, j2) * M(j2) -
         4 * t * S([&](int l) { return G(j1, j2) * G(j3, l) * M(l); }) +
         4 * t * S([&](int l) { return G(j1, j3) * G(j2, l) * M(l); });
    e += -h * S([&](int l) { return G(j3, l) * H(j1, j1, j1) * L(l, j2); }) +
         h * S([&](int l) { return G(j2, l) * H(j1, j1, j1) * L(l, j3); }) -
         h * S([&](int l) { return G(j3, l) * H(j2, j2, j2) * L(l, j1); }) +
         h * S([&](int l) { return G(j2, l) * H(j3, j3, j3) * L(l, j1); });
    e += -h * S([&](int l) { return G(j1, j3) * H(l, l, l) * L(l, j2); }) +
         h * S([&](int l) { return G(j1, j2) * H(l, l, l) * L(l, j3); }) -
         t * S([&](int l) { return G(j1, j2) * H(j3, j3, l) * L(l, j3); }) +
         t * S([&](int l) { return G(j1, j3) * H(j2, j2, l) * L(l, j2); });
    e += -t * S([&](int l) { return G(j1, j3) * H(l, j2, j2) * L(j2, l); }) +
         t * S([&](int l) { return G(j1, j2) * H(l, j3, j3) * L(j3, l); });
    e += -S2([&](int l, int p) { return G(j2, p) * H(l, j1, j3) * L(p, l); }) +
         S2([&](int l, int p) { return G(j3, p) * H(l, j1, j2) * L(p, l); });
    e += -S2([&](int l, int p) { return H(l, j1, j2) * H(p, l, j3) * H(p, p, p); }) +
         S2([&](int l, int p) { return H(l, j1, j3) * H(p, l, j2) * H(p, p, p); });
    return e;
}

const std::vector<std::string> &compat_first_errata() {
    static const std::vector<std::string> e = {
        "y-derivative added on G in the pair 2 sum_l G_{l,j3} H^l_{j1,j2} - 2 sum_l G_{l,j2} H^l_{j1,j3}",
        "coefficient 1/3 instead of 2/3 on the two L^{j}_{j,x^j} G terms",
        "sum over l added to the pair 1/3 G_{j1,j3} H^l_{j2,j2} L^{j2}_l - 1/3 G_{j1,j2} H^l_{j3,j3} L^{j3}_l",
    };
    return e;
}

}  // namespace jetsym

namespace jetsym {

ExprContext e1_context() {
    ExprContext c(1, 1);
    c.declare("X", c.base_vars());
    c.declare("Y", c.base_vars());
    c.declare("F", {xvar(1), yvar(1), yvar(1, {1})});
    return c;
}

PDESystem e1_system(const Poly &F) { return PDESystem{{1, 1, 1}, {yvar(1, {1})}, {{yvar(1, {1, 1}), F}}}; }

const std::string &e1_identity_text() {
    static const std::string s =
        "-Y_{x^2} + (-2*Y_{x,y} + X_{x^2})*y[1] + (-Y_{y^2} + 2*X_{x,y})*y[1]^2 + X_{y^2}*y[1]^3"
        " + (-Y_{y} + 2*X_{x})*F + 3*X_{y}*y[1]*F + X*F_{x} + Y*F_{y}"
        " + Y_{x}*F_{y[1]} + (Y_{y} - X_{x})*y[1]*F_{y[1]} - X_{y}*y[1]^2*F_{y[1]}";
    return s;
}

PDESystem e4_system() {
    ExprContext c(1, 2);
    return PDESystem{{1, 2, 1},
                     {yvar(1, {1})},
                     {{yvar(2, {1}), parse_expression("2*x*y1[1] + y1[1]^2", c)}, {yvar(1, {1, 1}), Poly()}}};
}

PDESystem e5_system() {
    ExprContext c(2, 1);
    return PDESystem{{2, 1, 2},
                     {yvar(1, {1}), yvar(1, {1, 1})},
                     {{yvar(1, {2}), parse_expression("1/4*y[1]^2", c)}, {yvar(1, {1, 1, 1}), Poly()}}};
}

const AlgebraFixture &e1_algebra() {
    static const AlgebraFixture a{
        1,
        1,
        {{"A", {"0"}, {"1"}},
         {"B", {"1"}, {"0"}},
         {"C", {"0"}, {"x"}},
         {"D", {"x"}, {"0"}},
         {"E", {"0"}, {"y"}},
         {"F", {"y"}, {"0"}},
         {"G", {"x^2"}, {"x*y"}},
         {"H", {"x*y"}, {"y^2"}}},
        {{"0", "0", "0", "0", "A", "B", "C", "D+2E"},
         {"0", "0", "A", "B", "0", "0", "E+2D", "F"},
         {"0", "-A", "0", "-C", "C", "D-E", "0", "G"},
         {"0", "-B", "C", "0", "0", "-F", "G", "0"},
         {"-A", "0", "-C", "0", "0", "F", "0", "H"},
         {"-B", "0", "-D+E", "F", "-F", "0", "H", "0"},
         {"-C", "-E-2D", "0", "-G", "0", "-H", "0", "0"},
         {"-D-2E", "-F", "-G", "0", "-H", "0", "0", "0"}},
        {{6 * 8 + 5, "H", "-H", "[G,F] printed H; antisymmetry with [F,G] = H and direct computation give -H"}},
    };
    return a;
}

const AlgebraFixture &e4_algebra() {
    static const AlgebraFixture a{
        1,
        2,
        {{"D", {"x"}, {"2*y1", "3*y2"}},
         {"L1", {"-1"}, {"x", "x^2"}},
         {"L1'", {"1"}, {"0", "2*y1"}},
         {"L2", {"0"}, {"1", "0"}},
         {"L3", {"0"}, {"0", "1"}}},
        {{"0", "-L1", "-L1'", "-2L2", "-3L3"},
         {"L1", "0", "-L2", "0", "0"},
         {"L1'", "L2", "0", "-2L3", "0"},
         {"2L2", "0", "2L3", "0", "0"},
         {"3L3", "0", "0", "0", "0"}},
        {},
    };
    return a;
}

const AlgebraFixture &e5_algebra() {
    static const AlgebraFixture a{
        2,
        1,
        {{"P1", {"1", "0"}, {"0"}},
         {"P2", {"0", "1"}, {"0"}},
         {"P3", {"0", "0"}, {"1"}},
         {"R1", {"-x2", "0"}, {"2*x1"}},
         {"R2", {"x1", "0"}, {"2*y"}},
         {"R3", {"x1", "2*x2"}, {"0"}},
         {"R4", {"-y", "2*x1"}, {"0"}},
         {"S1", {"-x1*x2", "-x2^2"}, {"x1^2"}},
         {"S2", {"x1^2 - x2*y", "2*x1*x2"}, {"2*x1*y"}},
         {"S3", {"x1*y", "-x1^2"}, {"y^2"}}},
        {},
        {},
    };
    return a;
}

std::vector<VectorField> fields_of(const AlgebraFixture &a) {
    std::vector<VectorField> out;
    for (auto &f : a.fields) out.push_back(parse_field(a.n, a.m, f.X, f.Y));
    return out;
}

std::vector<Q> table_entry(const AlgebraFixture &a, size_t i, size_t k, bool printed) {
    std::vector<Q> c(a.fields.size());
    std::string s = a.table.at(i).at(k);
    if (printed)
        for (auto &e : a.errata)
            if (e.line == i * a.fields.size() + k) s = e.printed;
    size_t p = 0;
    while (p < s.size()) {
        int sign = 1;
        if (s[p] == '+' || s[p] == '-') sign = s[p++] == '-' ? -1 : 1;
        size_t q = p;
        while (q < s.size() && std::isdigit((unsigned char)s[q])) ++q;
        Q coef = q > p ? Q(std::stoi(s.substr(p, q - p))) : Q(1);
        size_t r = q;
        while (r < s.size() && s[r] != '+' && s[r] != '-') ++r;
        std::string name = s.substr(q, r - q);
        p = r;
        if (name.empty()) {
            if (coef != 0) throw Error("table entry: bare number in " + s);
            continue;
        }
        size_t idx = 0;
        while (idx < a.fields.size() && a.fields[idx].name != name) ++idx;
        if (idx == a.fields.size()) throw Error("table entry: unknown field " + name);
        c[idx] += sign * coef;
    }
    return c;
}

const std::map<std::string, std::string> &transfer_numerators() {
    static const std::map<std::string, std::string> t = {
        {"Ax", "-Pi_{b}*Pi_{x,x} + Pi_{x}*Pi_{x,b}"},
        {"Bx", "-Pi_{x}*Pi_{x,a} + Pi_{a}*Pi_{x,x}"},
        {"Ay", "-Pi_{x,b}"},
        {"By", "Pi_{x,a}"},
        {"Ay1", "Pi_{b}"},
        {"By1", "-Pi_{a}"},
        {"Fx",
         "Pi_{x,x,x}*(Pi_{b}*Pi_{x,a} - Pi_{a}*Pi_{x,b})"
         " + Pi_{x,x,a}*(-Pi_{b}*Pi_{x,x} + Pi_{x}*Pi_{x,b}) + Pi_{x,x,b}*(-Pi_{x}*Pi_{x,a} + Pi_{a}*Pi_{x,x})"},
        {"Fy", "-Pi_{x,x,a}*Pi_{x,b} + Pi_{x,x,b}*Pi_{x,a}"},
        {"Fy1", "Pi_{x,x,a}*Pi_{b} - Pi_{x,x,b}*Pi_{a}"},
    };
    return t;
}

Fraction transfer_fixture(const std::string &key) {
    auto c = transfer_context();
    return Fraction(parse_expression(transfer_numerators().at(key), c),
                    parse_expression("Pi_{b}*Pi_{x,a} - Pi_{a}*Pi_{x,b}", c));
}

}  // namespace jetsym
