#include "jetsym/acceptance.hpp"
#include "jetsym/fdb.hpp"
#include "jetsym/io.hpp"
#include "jetsym/reference.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>

using namespace jetsym;
using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

enum class Format { Text, Json, Latex };

struct Report {
    std::string command;
    json inputs = json::object();
    json results = json::array();
    std::vector<std::string> text, latex;
    bool ok = true;
};

// One named expression in all three renderings.
void add_expr(Report &r, const std::string &name, const Poly &p, const ExprContext &c, json extra = json::object(),
              const std::string &tex_name = "") {
    std::string s = to_string(p, c);
    extra["name"] = name;
    extra["expr"] = s;
    extra["terms"] = p.size();
    r.results.push_back(extra);
    r.text.push_back(name + " = " + s);
    r.latex.push_back((tex_name.empty() ? name : tex_name) + " &= " + to_latex(p, c) + " \\\\");
}

void add_line(Report &r, const std::string &line, json entry) {
    r.results.push_back(std::move(entry));
    r.text.push_back(line);
    r.latex.push_back("% " + line);
}

void emit(const Report &r, Format f, double ms) {
    switch (f) {
    case Format::Text:
        for (auto &l : r.text) std::cout << l << "\n";
        break;
    case Format::Latex:
        std::cout << "\\begin{align*}\n";
        for (auto &l : r.latex) std::cout << l << "\n";
        std::cout << "\\end{align*}\n";
        break;
    case Format::Json: {
        json j = {{"version", kSchemaVersion},
                  {"command", r.command},
                  {"inputs", r.inputs},
                  {"status", r.ok ? "ok" : "fail"},
                  {"results", r.results},
                  {"timings", {{"total_ms", ms}}}};
        std::cout << j.dump(2) << "\n";
    }
    }
}

std::string index_name(const MultiIndex &K) {
    std::string s;
    for (int i : K) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
}

std::vector<int> parse_index_list(const std::string &s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

// Known misprints in the published table of the same shape and order.
void add_notes(Report &r, const Fixture &f) {
    std::set<std::string> seen;
    for (auto &e : f.errata)
        if (seen.insert(e.note).second)
            add_line(r, "note: printed " + f.name + " differs from the computation: " + e.note,
                     {{"name", "note"}, {"table", f.name}, {"note", e.note}, {"printed", e.printed}, {"corrected", e.corrected}});
}

// ---- subcommands ------------------------------------------------------------

struct ProlongOpts {
    int n = 1, m = 1, kappa = 2;
    std::string target;
    bool compare = false;
    std::string route = "closed";
};

void cmd_prolong(const ProlongOpts &o, Report &r) {
    r.inputs = {{"n", o.n}, {"m", o.m}, {"kappa", o.kappa}, {"route", o.route}, {"compare", o.compare}};
    auto c = field_context(o.n, o.m);
    std::vector<VarId> targets;
    if (!o.target.empty()) {
        targets.push_back(parse_jetvar(o.target, c));
        r.inputs["target"] = o.target;
    } else {
        targets = jet_vars(o.n, o.m, o.kappa, o.kappa);
    }
    int top = 0;
    for (VarId v : targets) top = std::max(top, jet_order(v));
    std::optional<ProlongedField> ind;
    if (o.compare || o.route == "inductive") ind = prolong_inductive(generic_field(o.n, o.m), top);
    size_t mismatches = 0;
    for (VarId v : targets) {
        std::string name = "Y" + var_name(v, c).substr(1);
        Poly p = o.route == "inductive" ? ind->coeffs.at(v) : prolong_closed(o.n, o.m, v);
        json extra = json::object();
        if (o.compare) {
            Poly other = o.route == "inductive" ? prolong_closed(o.n, o.m, v) : ind->coeffs.at(v);
            bool same = other == p;
            extra["match"] = same;
            if (!same) {
                ++mismatches;
                r.text.push_back("MISMATCH at " + name + ": " + to_string(p - other, c));
            }
        }
        const Var &x = var(v);
        std::string tex = "\\mathbf{Y}";
        if (o.m > 1) tex += "^{" + std::to_string(x.index) + "}";
        tex += "_{" + index_name(x.idx) + "}";
        add_expr(r, name, p, c, extra, tex);
    }
    if (o.compare) {
        r.ok = mismatches == 0;
        add_line(r, r.ok ? "MATCH" : "MISMATCH (" + std::to_string(mismatches) + ")",
                 {{"name", "compare"}, {"match", r.ok}, {"compared", targets.size()}});
        for (auto &f : prolong_fixtures())
            if (f.order == top && admits(f.shape, o.n, o.m)) add_notes(r, f);
    }
}

struct FdbOpts {
    int n = 1, m = 1, order = 2;
    std::string target;
    bool compare = false;
};

void cmd_fdb(const FdbOpts &o, Report &r) {
    r.inputs = {{"n", o.n}, {"m", o.m}, {"order", o.order}, {"compare", o.compare}};
    auto c = fdb_context(o.n, o.m);
    std::vector<MultiIndex> targets;
    if (!o.target.empty()) {
        MultiIndex K = parse_index_list(o.target);
        std::sort(K.begin(), K.end());
        for (int i : K)
            if (i < 1 || i > o.n) throw Error("fdb: target index out of range");
        targets.push_back(K);
        r.inputs["target"] = o.target;
    } else {
        targets = multi_indices(o.n, o.order);
    }
    size_t mismatches = 0;
    for (auto &K : targets) {
        Poly p = fdb_closed({o.n, o.m, K});
        json extra = json::object();
        if (o.compare) {
            bool same = p == fdb_oracle({o.n, o.m, K});
            extra["match"] = same;
            mismatches += !same;
        }
        add_expr(r, "h_{" + index_name(K) + "}", p, c, extra);
    }
    if (o.compare) {
        r.ok = mismatches == 0;
        add_line(r, r.ok ? "MATCH" : "MISMATCH (" + std::to_string(mismatches) + ")",
                 {{"name", "compare"}, {"match", r.ok}, {"compared", targets.size()}});
        for (auto &f : fdb_fixtures())
            if (admits(f.shape, o.n, o.m) && f.order == (int)targets.front().size()) add_notes(r, f);
    }
}

void cmd_determine(const std::string &path, bool complete, Report &r) {
    r.inputs = {{"system", path}, {"complete", complete}};
    auto f = read_system(path);
    PDESystem s = complete ? complete_skeleton(f.system) : f.system;
    ExprContext c = field_context(s.ctx.n, s.ctx.m);
    c.dep_names = f.names.dep_names;
    for (auto &[v, p] : s.skeleton)
        add_line(r, "skeleton " + var_name(v, c) + " = " + to_string(p, c),
                 {{"name", "skeleton"}, {"jet", var_name(v, c)}, {"expr", to_string(p, c)}});
    auto ds = determining_system(s);
    std::set<std::string> seen;
    size_t k = 0;
    for (auto &e : ds.equations) {
        Poly q = e;
        if (q.terms().begin()->second < 0) q = -q;
        if (!seen.insert(to_string(q, c)).second) continue;
        add_expr(r, "E" + std::to_string(++k), q, c);
    }
    r.text.push_back(std::to_string(k) + " distinct determining equations");
}

void cmd_tangent(const std::string &sys_path, const std::string &vf_path, Report &r) {
    r.inputs = {{"system", sys_path}, {"fields", vf_path}};
    auto s = complete_skeleton(read_system(sys_path).system);
    auto ff = read_fields(vf_path);
    if (ff.n != s.ctx.n || ff.m != s.ctx.m) throw Error("tangent: field file and system disagree on n, m");
    size_t ok = 0;
    for (size_t i = 0; i < ff.fields.size(); ++i) {
        auto d = tangency_defect(s, ff.fields[i]);
        bool t = std::all_of(d.begin(), d.end(), [](const Poly &p) { return p.is_zero(); });
        ok += t;
        add_line(r, ff.labels[i] + (t ? ": tangent" : ": NOT tangent"), {{"name", ff.labels[i]}, {"tangent", t}});
    }
    r.ok = ok == ff.fields.size();
    r.text.push_back(std::to_string(ok) + "/" + std::to_string(ff.fields.size()) + " tangent");
}

std::string combination(const std::vector<Q> &c, const std::vector<std::string> &labels) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Q a = abs(c[i]);
        s += c[i] < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
        if (a != 1) s += to_string(a) + "*";
        s += labels[i];
    }
    return s.empty() ? "0" : s;
}

void cmd_brackets(const std::string &vf_path, int kappa, Report &r) {
    r.inputs = {{"fields", vf_path}, {"kappa", kappa}};
    auto ff = read_fields(vf_path);
    auto T = bracket_table(ff.fields);
    bool closed = true;
    for (size_t i = 0; i < T.size(); ++i)
        for (size_t k = 0; k < T.size(); ++k) {
            std::string name = "[" + ff.labels[i] + "," + ff.labels[k] + "]";
            if (!T[i][k].in_span) {
                closed = false;
                add_line(r, name + " outside the span", {{"name", name}, {"in_span", false}});
                continue;
            }
            std::string v = combination(T[i][k].coeffs, ff.labels);
            add_line(r, name + " = " + v, {{"name", name}, {"in_span", true}, {"value", v}});
        }
    bool jac = jacobi_holds(ff.fields);
    bool pb = true;
    for (int k = 1; k <= kappa; ++k)
        for (auto &f : ff.fields)
            for (auto &g : ff.fields) pb &= verify_prolong_bracket(f, g, k);
    add_line(r, std::string("closed: ") + (closed ? "yes" : "no") + ", Jacobi: " + (jac ? "yes" : "no") +
                    ", prolonged brackets up to order " + std::to_string(kappa) + ": " + (pb ? "yes" : "no"),
             {{"name", "summary"}, {"closed", closed}, {"jacobi", jac}, {"prolong_bracket", pb}});
    r.ok = closed && jac && pb;
}

void cmd_flat2(int n, const std::string &sys_path, Report &r) {
    r.inputs = {{"n", n}};
    if (!sys_path.empty()) {
        r.inputs["system"] = sys_path;
        auto f = read_system(sys_path);
        auto t = cubic_test(second_order_part(f.system));
        if (!t.ghlm) {
            r.ok = false;
            add_line(r, "not of the cubic form: " + t.witness, {{"name", "cubic_test"}, {"ok", false}, {"witness", t.witness}});
            return;
        }
        auto c = flat_context(f.system.ctx.n);
        add_line(r, "cubic form: yes", {{"name", "cubic_test"}, {"ok", true}});
        const std::pair<const char *, const std::map<std::vector<int>, Poly> *> fams[] = {
            {"G", &t.ghlm->G}, {"H", &t.ghlm->H}, {"L", &t.ghlm->L}, {"M", &t.ghlm->M}};
        for (auto [name, fam] : fams)
            for (auto &[k, p] : *fam) add_expr(r, std::string(name) + "{" + index_name(k) + "}", p, c);
        return;
    }
    auto a = collect_all(n), b = emit_families(n);
    auto m = match_up_to_scale(a, b);
    auto c = flat_context(n);
    for (auto &[k, p] : b) {
        if (p.is_zero()) continue;
        static const char *fam[] = {"I", "II", "III", "IV"};
        std::string name = std::string(fam[k[0]]) + "(" + index_name(std::vector<int>(k.begin() + 1, k.end())) + ")";
        add_expr(r, name, p, c);
    }
    std::string sc;
    for (auto &[s, cnt] : m.scales) sc += (sc.empty() ? "" : " ") + s + ":" + std::to_string(cnt);
    add_line(r, std::string("families match the compatibility expansion: ") + (m.ok ? "yes" : "no") + " (" +
                    std::to_string(m.nonzero) + " equations; scales " + sc + ")" + (m.ok ? "" : "; " + m.witness),
             {{"name", "match"}, {"ok", m.ok}, {"nonzero", m.nonzero}, {"witness", m.witness}});
    r.ok = m.ok;
}

void cmd_selftest(Report &r, Format f) {
    void (*live)(const CriterionResult &) = [](const CriterionResult &c) {
        std::cout << format_result(c) << "\n" << std::flush;
    };
    auto results = run_acceptance(f == Format::Text ? live : nullptr);
    for (auto &c : results) {
        r.results.push_back(json{{"criterion", c.index}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail},
                             {"seconds", c.seconds}});
        if (f != Format::Text) r.latex.push_back("% " + format_result(c));
        r.ok &= c.pass;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"jetsym: prolongations, symmetries and flatness of PDE systems"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));

    ProlongOpts po;
    auto *prolong = app.add_subcommand("prolong", "Prolongation coefficients of the generic field");
    prolong->add_option("--n", po.n)->check(CLI::Range(1, 6));
    prolong->add_option("--m", po.m)->check(CLI::Range(1, 6));
    prolong->add_option("--kappa", po.kappa)->check(CLI::Range(1, 12));
    prolong->add_option("--target", po.target, "Single jet, e.g. y[1,2] or y2[1]");
    prolong->add_option("--route", po.route)->check(CLI::IsMember({"closed", "inductive"}));
    prolong->add_flag("--compare", po.compare, "Check closed against inductive");

    FdbOpts fo;
    auto *fdb = app.add_subcommand("fdb", "Derivatives of a composite function");
    fdb->add_option("--n", fo.n)->check(CLI::Range(1, 6));
    fdb->add_option("--m", fo.m)->check(CLI::Range(1, 6));
    fdb->add_option("--order", fo.order)->check(CLI::Range(1, 12));
    fdb->add_option("--target", fo.target, "Directions, e.g. 1,1,2");
    fdb->add_flag("--compare", fo.compare, "Check closed against the chain rule");

    std::string sys_path, vf_path;
    bool no_complete = false;
    auto *determine = app.add_subcommand("determine", "Determining equations of a system");
    determine->add_option("--system", sys_path)->required()->check(CLI::ExistingFile);
    determine->add_flag("--no-complete", no_complete, "Use the skeleton as given");

    auto *tangent = app.add_subcommand("tangent", "Tangency of vector fields to a system");
    tangent->add_option("--system", sys_path)->required()->check(CLI::ExistingFile);
    tangent->add_option("--fields", vf_path)->required()->check(CLI::ExistingFile);

    int bkappa = 3;
    auto *brackets = app.add_subcommand("brackets", "Bracket table of vector fields");
    brackets->add_option("--fields", vf_path)->required()->check(CLI::ExistingFile);
    brackets->add_option("--kappa", bkappa, "Order for the prolonged-bracket check")->check(CLI::Range(0, 6));

    int fn = 2;
    auto *flat2 = app.add_subcommand("flat2", "Cubic test and integrability families");
    flat2->add_option("--n", fn)->check(CLI::Range(2, 4));
    flat2->add_option("--system", sys_path, "Run the cubic test on this system instead")->check(CLI::ExistingFile);

    auto *selftest = app.add_subcommand("selftest", "Acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Format f = format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text;
    Report r;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (*prolong) {
            r.command = "prolong";
            cmd_prolong(po, r);
        } else if (*fdb) {
            r.command = "fdb";
            cmd_fdb(fo, r);
        } else if (*determine) {
            r.command = "determine";
            cmd_determine(sys_path, !no_complete, r);
        } else if (*tangent) {
            r.command = "tangent";
            cmd_tangent(sys_path, vf_path, r);
        } else if (*brackets) {
            r.command = "brackets";
            cmd_brackets(vf_path, bkappa, r);
        } else if (*flat2) {
            r.command = "flat2";
            cmd_flat2(fn, sys_path, r);
        } else if (*selftest) {
            r.command = "selftest";
            cmd_selftest(r, f);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!(r.command == "selftest" && f == Format::Text)) emit(r, f, ms);
    return r.ok ? 0 : 1;
}
