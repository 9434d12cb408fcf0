#include <doctest.h>

#include "jetsym/io.hpp"
#include "jetsym/prolong.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace jetsym;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(JETSYM_CLI) + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    while (size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string &f) { return std::string(JETSYM_DATA) + "/" + f; }

std::string temp_file(const std::string &name, const std::string &text) {
    std::string path = "/tmp/jetsym_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("system file with default parametric jets") {
    auto f = parse_system("# comment\nn=2 m=1 kappa=2\ny[2] = (1/4)*y[1]^2  # first\ny[1,1,1] = 0\n");
    CHECK(f.system.ctx.kappa == 2);
    CHECK(f.system.skeleton.size() == 2);
    CHECK(f.system.parametric == std::set<VarId>{yvar(1, {1}), yvar(1, {1, 1})});
    CHECK(complete_skeleton(f.system).skeleton.size() == 7);
}

TEST_CASE("system file with dependent names") {
    auto f = read_system(data("e4.sys"));
    CHECK(f.system.skeleton.at(yvar(2, {1})) ==
          parse_expression("2*x*y1[1] + y1[1]^2", field_context(1, 2)));
    CHECK(f.system.parametric == std::set<VarId>{yvar(1, {1})});
}

TEST_CASE("file errors point at the line") {
    try {
        parse_system("n=1 m=1 kappa=1\n\ny[1,1] = 2*\n");
        FAIL("no throw");
    } catch (const ParseError &e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_system("n=1 m=1 kappa=1 bogus=3\n"), ParseError);
    CHECK_THROWS_AS(parse_system("n=1 m=1\ny[1,1] 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fields("n=2 m=1\nA: 1 ; 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fields("n=1 m=1\nA: 1, 0\n"), ParseError);
}

TEST_CASE("field files") {
    auto f = read_fields(data("e5.vf"));
    CHECK(f.fields.size() == 10);
    CHECK(f.labels.front() == "P1");
    CHECK(f.fields[8].X[0] == parse_expression("x1^2 - x2*y", field_context(2, 1)));
}

TEST_CASE("prolong compare") {
    auto r = run("prolong --n 1 --m 1 --kappa 6 --compare");
    CHECK(r.status == 0);
    CHECK(r.out.find("\nMATCH\n") != std::string::npos);
    CHECK(r.out.find("Y[1,1,1,1,1,1] = ") != std::string::npos);
}

TEST_CASE("json report schema and round trip") {
    auto r = run("--format json prolong --n 2 --m 1 --kappa 2 --compare");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["version"] == 1);
    CHECK(j["command"] == "prolong");
    CHECK(j["status"] == "ok");
    CHECK(j["timings"].contains("total_ms"));
    CHECK(j["inputs"]["n"] == 2);
    auto c = field_context(2, 1);
    size_t exprs = 0;
    for (auto &e : j["results"]) {
        if (!e.contains("expr")) continue;
        VarId v = parse_jetvar("y" + e["name"].get<std::string>().substr(1), c);
        CHECK(parse_expression(e["expr"].get<std::string>(), c) == prolong_closed(2, 1, v));
        ++exprs;
    }
    CHECK(exprs == 3);
}

TEST_CASE("composition with the misprint note") {
    auto r = run("fdb --n 1 --m 1 --order 5 --compare");
    CHECK(r.status == 0);
    CHECK(r.out.find("MATCH") != std::string::npos);
    CHECK(r.out.find("note: printed h_5") != std::string::npos);
}

TEST_CASE("tangency and brackets") {
    auto r = run("tangent --system " + data("e5.sys") + " --fields " + data("e5.vf"));
    CHECK(r.status == 0);
    CHECK(r.out.find("10/10 tangent") != std::string::npos);

    auto bad = temp_file("bad.vf", "n=2 m=1\nQ: x1^2, 0 ; 0\nP1: 1, 0 ; 0\n");
    auto r2 = run("tangent --system " + data("e5.sys") + " --fields " + bad);
    CHECK(r2.status == 1);
    CHECK(r2.out.find("1/2 tangent") != std::string::npos);

    auto r3 = run("brackets --fields " + data("e1.vf"));
    CHECK(r3.status == 0);
    CHECK(r3.out.find("[A,H] = D + 2*E") != std::string::npos);
    CHECK(r3.out.find("[G,F] = -H") != std::string::npos);
}

TEST_CASE("determining equations from a file") {
    auto r = run("determine --system " + data("e1.sys"));
    CHECK(r.status == 0);
    CHECK(r.out.find("4 distinct determining equations") != std::string::npos);
}

TEST_CASE("flatness") {
    auto r = run("flat2 --n 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("families match the compatibility expansion: yes") != std::string::npos);
    auto quartic = temp_file("q.sys", "n=2 m=1 kappa=1\ny[1,1] = y[1]^4\ny[1,2] = 0\ny[2,2] = 0\n");
    auto r2 = run("flat2 --system " + quartic);
    CHECK(r2.status == 1);
    auto cubic = temp_file("c.sys", "n=2 m=1 kappa=1\ny[1,1] = x1*y[1]^3\ny[1,2] = x1*y[1]^2*y[2]\ny[2,2] = x1*y[1]*y[2]^2\n");
    auto r3 = run("flat2 --system " + cubic);
    CHECK(r3.status == 0);
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run("").status == 2);
    CHECK(run("prolong --n 0").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("tangent --system /nonexistent --fields /nonexistent").status == 2);
    auto broken = temp_file("broken.sys", "n=1 m=1 kappa=1\ny[1,1] = (\n");
    CHECK(run("determine --system " + broken).status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("term cap from the environment") {
    auto r = run("prolong --n 2 --m 2 --kappa 3");
    CHECK(r.status == 0);
    std::string cmd = "JETSYM_MAX_TERMS=20 " + std::string(JETSYM_CLI) + " prolong --n 2 --m 2 --kappa 3 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    while (size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
    int st = pclose(p);
    CHECK(WEXITSTATUS(st) == 2);
    CHECK(out.find("JETSYM_MAX_TERMS") != std::string::npos);
}
