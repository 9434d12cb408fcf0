#include "jetsym/io.hpp"

#include <fstream>
#include <sstream>

namespace jetsym {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// Lines with comments stripped, paired with 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string &text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        line = trim(line.substr(0, line.find('#')));
        if (!line.empty()) out.emplace_back(no, line);
    }
    return out;
}

// Splits at separators outside brackets and braces.
std::vector<std::string> split_top(const std::string &s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[' || c == '{' || c == '(') ++depth;
        if (c == ']' || c == '}' || c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Header {
    std::map<std::string, std::string> kv;
    int get(const std::string &k, int def) const {
        auto it = kv.find(k);
        return it == kv.end() ? def : std::stoi(it->second);
    }
};

Header parse_header(int line_no, const std::string &line, const std::set<std::string> &allowed) {
    Header h;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("header: expected key=value, got '" + tok + "'", line_no, 1);
        std::string k = tok.substr(0, eq);
        if (!allowed.count(k)) throw ParseError("header: unknown key '" + k + "'", line_no, 1);
        h.kv[k] = tok.substr(eq + 1);
    }
    return h;
}

ExprContext context_from(const Header &h, int line_no) {
    ExprContext c(h.get("n", 1), h.get("m", 1));
    if (c.n < 1 || c.m < 1) throw ParseError("header: n and m must be >= 1", line_no, 1);
    if (h.kv.count("names")) {
        c.dep_names = split_top(h.kv.at("names"), ',');
        if ((int)c.dep_names.size() != c.m) throw ParseError("header: names must list m dependents", line_no, 1);
    }
    return c;
}

// Re-anchors parse errors at the file line.
template <class F>
auto at_line(int line_no, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError &e) {
        throw ParseError(e.what(), line_no, e.col);
    }
}

bool divides(const MultiIndex &L, const MultiIndex &K) {
    std::map<int, int> c;
    for (int i : K) ++c[i];
    for (int i : L)
        if (--c[i] < 0) return false;
    return true;
}

}  // namespace

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SystemFile parse_system(const std::string &text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty system file", 1, 1);
    auto [hno, hline] = lines.front();
    Header h = parse_header(hno, hline, {"n", "m", "kappa", "parametric", "names"});
    SystemFile f{{}, context_from(h, hno)};
    PDESystem &s = f.system;
    s.ctx = {f.names.n, f.names.m, h.get("kappa", 1)};
    if (s.ctx.kappa < 1) throw ParseError("header: kappa must be >= 1", hno, 1);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto [no, line] = lines[i];
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'jet = expression'", no, 1);
        VarId lhs = at_line(no, [&] { return parse_jetvar(trim(line.substr(0, eq)), f.names); });
        Poly rhs = at_line(no, [&] { return parse_expression(line.substr(eq + 1), f.names); });
        if (!is_jet(lhs)) throw ParseError("left-hand side must be a jet variable", no, 1);
        if (!s.skeleton.emplace(lhs, rhs).second) throw ParseError("duplicate equation", no, 1);
    }
    if (h.kv.count("parametric")) {
        for (auto &name : split_top(h.kv.at("parametric"), ','))
            s.parametric.insert(at_line(hno, [&] { return parse_jetvar(name, f.names); }));
    } else {
        for (VarId v : jet_vars(s.ctx.n, s.ctx.m, 1, s.ctx.kappa)) {
            bool principal = false;
            for (auto &[w, _] : s.skeleton)
                principal |= var(w).index == var(v).index && divides(var(w).idx, var(v).idx);
            if (!principal) s.parametric.insert(v);
        }
    }
    return f;
}

SystemFile read_system(const std::string &path) { return parse_system(read_file(path)); }

FieldFile parse_fields(const std::string &text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("empty field file", 1, 1);
    auto [hno, hline] = lines.front();
    Header h = parse_header(hno, hline, {"n", "m", "names"});
    FieldFile f;
    f.names = context_from(h, hno);
    f.n = f.names.n;
    f.m = f.names.m;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto [no, line] = lines[i];
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'name: X... ; Y...'", no, 1);
        auto groups = split_top(line.substr(colon + 1), ';');
        if (groups.size() != 2) throw ParseError("expected one ';' between X and Y components", no, 1);
        auto X = split_top(groups[0], ','), Y = split_top(groups[1], ',');
        if ((int)X.size() != f.n || (int)Y.size() != f.m)
            throw ParseError("expected " + std::to_string(f.n) + " X and " + std::to_string(f.m) + " Y components", no,
                             1);
        f.labels.push_back(trim(line.substr(0, colon)));
        f.fields.push_back(at_line(no, [&] { return parse_field(f.n, f.m, X, Y, &f.names); }));
    }
    return f;
}

FieldFile read_fields(const std::string &path) { return parse_fields(read_file(path)); }

}  // namespace jetsym
