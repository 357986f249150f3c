#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = lpeg::cli::run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string data(const char* name) { return (fs::path(LPEG_TEST_DATA) / name).string(); }

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / ("lpeg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("check") {
    Outcome one = cli({"check", data("example1.peg")});
    CHECK(one.status == 0);
    CHECK(one.out.find("LPEG: yes") != std::string::npos);

    Outcome three = cli({"check", data("example3.peg")});
    CHECK(three.status == 1);
    CHECK(three.out.find("LPEG: no") != std::string::npos);
    CHECK(three.out.find("aAa") != std::string::npos);
    CHECK(three.out.find("B*") != std::string::npos);
}

TEST_CASE("compile then match") {
    fs::path dir = scratch_dir();
    std::string json = (dir / "astarb.json").string();
    Outcome c = cli({"compile", data("astarb.peg"), "--mode", "exact", "-o", json});
    REQUIRE(c.status == 0);
    CHECK(cli({"match", "--dfa", json, "aab"}).status == 0);
    CHECK(cli({"match", "--dfa", json, "aa"}).status == 1);
    CHECK(cli({"match", "--dfa", json, "aab"}).out == "accepted\n");
    CHECK(cli({"match", "--grammar", data("astarb.peg"), "--mode", "prefix", "aaba"}).status == 0);
    CHECK(cli({"match", "--grammar", data("astarb.peg"), "aaba"}).status == 1);
    CHECK(cli({"match", "aab"}).status == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
    fs::path dir = scratch_dir();
    std::string first = (dir / "a.json").string(), second = (dir / "b.json").string();
    std::string dot1 = (dir / "a.dot").string(), dot2 = (dir / "b.dot").string();
    REQUIRE(cli({"compile", data("example1.peg"), "--mode", "prefix", "-o", first, "--emit-bfa", dot1}).status == 0);
    REQUIRE(cli({"compile", data("example1.peg"), "--mode", "prefix", "-o", second, "--emit-bfa", dot2}).status == 0);
    CHECK(slurp(first) == slurp(second));
    CHECK(slurp(dot1) == slurp(dot2));
    CHECK(slurp(dot1).rfind("digraph", 0) == 0);
    CHECK(cli({"export-dot", "dfa", first}).out == cli({"export-dot", "dfa", second}).out);
    CHECK(cli({"regex2lpeg", "(a|b)*abb"}).out == cli({"regex2lpeg", "(a|b)*abb"}).out);
}

TEST_CASE("unminimized compile is equivalent") {
    fs::path dir = scratch_dir();
    std::string raw = (dir / "raw.json").string(), min = (dir / "min.json").string();
    REQUIRE(cli({"compile", data("example1.peg"), "-o", raw, "--no-minimize"}).status == 0);
    REQUIRE(cli({"compile", data("example1.peg"), "-o", min}).status == 0);
    CHECK(cli({"equiv", raw, min}).status == 0);
}

TEST_CASE("run") {
    Outcome ok = cli({"run", data("astarb.peg"), "aabba"});
    CHECK(ok.status == 0);
    CHECK(ok.out == "Consumed(3)\n");
    Outcome bad = cli({"run", data("astarb.peg"), "aa"});
    CHECK(bad.status == 1);
    CHECK(bad.out == "Fail\n");
}

TEST_CASE("regex2lpeg and dfa2lpeg round trip") {
    fs::path dir = scratch_dir();
    Outcome r = cli({"regex2lpeg", "(a|b)*abb"});
    REQUIRE(r.status == 0);
    spit(dir / "r.peg", r.out);
    CHECK(cli({"check", (dir / "r.peg").string()}).status == 0);

    std::string json = (dir / "r.json").string();
    REQUIRE(cli({"compile", (dir / "r.peg").string(), "-o", json}).status == 0);
    CHECK(cli({"match", "--dfa", json, "babb"}).status == 0);
    CHECK(cli({"match", "--dfa", json, "abba"}).status == 1);

    Outcome back = cli({"dfa2lpeg", json});
    REQUIRE(back.status == 0);
    spit(dir / "back.peg", back.out);
    std::string json2 = (dir / "back.json").string();
    REQUIRE(cli({"compile", (dir / "back.peg").string(), "-o", json2}).status == 0);
    CHECK(cli({"equiv", json, json2}).status == 0);
    CHECK(cli({"equiv", (dir / "back.peg").string(), (dir / "r.peg").string(), "--via", "interp"}).status == 0);

    CHECK(cli({"regex2lpeg", "a", "--alphabet", "xyz"}).out.find("%alphabet 'axyz'") != std::string::npos);
    CHECK(cli({"regex2lpeg", "(a"}).status == 2);
}

TEST_CASE("equiv reports counterexamples") {
    Outcome e = cli({"equiv", data("astarb.peg"), data("example1.peg")});
    CHECK(e.status == 1);
    CHECK(e.out.find("counterexample: \"b\"") != std::string::npos);
    Outcome i = cli({"equiv", data("astarb.peg"), data("example1.peg"), "--via", "interp", "--max-len", "3"});
    CHECK(i.status == 1);
    CHECK(i.out.find("counterexample: \"b\"") != std::string::npos);
    CHECK(cli({"equiv", data("astarb.peg"), data("astarb.peg"), "--mode", "prefix"}).status == 0);
}

TEST_CASE("export-dot") {
    Outcome g = cli({"export-dot", "grammar", data("astarb.peg")});
    CHECK(g.status == 0);
    CHECK(g.out.find("doublecircle") != std::string::npos);
    Outcome b = cli({"export-dot", "bfa", data("astarb.peg")});
    CHECK(b.status == 0);
    CHECK(b.out.rfind("digraph", 0) == 0);
}

TEST_CASE("exit codes for usage, input and budget errors") {
    CHECK(cli({}).status == 2);
    CHECK(cli({"frobnicate"}).status == 2);
    CHECK(cli({"compile", data("astarb.peg"), "--mode", "sideways"}).status == 2);
    CHECK(cli({"check", "/nonexistent/file.peg"}).status == 2);
    fs::path dir = scratch_dir();
    spit(dir / "broken.peg", "A <- (\n");
    Outcome broken = cli({"check", (dir / "broken.peg").string()});
    CHECK(broken.status == 2);
    CHECK_FALSE(broken.err.empty());
    CHECK(broken.out.empty());
    spit(dir / "broken.json", "{\"alphabet\": 3}");
    CHECK(cli({"match", "--dfa", (dir / "broken.json").string(), "a"}).status == 2);

    CHECK(cli({"compile", data("astarb.peg"), "--max-dfa-states", "1"}).status == 3);
    CHECK(cli({"compile", data("astarb.peg"), "--max-bfa-states", "2"}).status == 3);
    CHECK(cli({"equiv", data("astarb.peg"), data("astarb.peg"), "--via", "interp", "--max-len", "40"}).status == 3);
    CHECK(cli({"compile", data("example3.peg")}).status == 1);
    CHECK(cli({"--help"}).status == 0);
}
