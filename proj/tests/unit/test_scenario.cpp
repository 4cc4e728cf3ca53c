#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "asyncdes/scenario.hpp"

using namespace asyncdes;
namespace fs = std::filesystem;

namespace {

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ScenarioError& e) {
        return e.line();
    }
    return 0;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("scenario parsing and type checking") {
    const auto sc = parse("# comment\n\nnetwork abstract tau-on-join\ngenerate compositional   # trailing\nsave a\n");
    REQUIRE(sc.steps.size() == 3);
    CHECK(sc.steps[1].line == 4);
    CHECK(sc.steps[1].args == std::vector<std::string>{"compositional"});

    CHECK(error_line("minimize branching\n") == 1);
    CHECK(error_line("network abstract\ngenerate sideways\n") == 2);
    CHECK(error_line("generate direct\n") == 1);
    CHECK(error_line("network sideways\n") == 1);
    CHECK(error_line("network abstract fast\n") == 1);
    CHECK(error_line("read a.aut\ncompare @nothing branching\n") == 2);
    CHECK(error_line("read a.aut\ncompare a.aut weakly\n") == 2);
    CHECK(error_line("read a.aut\ncheck 8\n") == 2);
    CHECK(error_line("check 1\n") == 1);
    CHECK(error_line("read a.aut\ncheck 6\n") == 2);
    CHECK(error_line("read a.aut\ncheck 2 @x\n") == 2);
    CHECK(error_line("frobnicate\n") == 1);
    CHECK(error_line("read a.aut\nstrip-offers now\n") == 2);
    CHECK(error_line("read a.aut\nload a\n") == 2);
    CHECK(error_line("check 5\ncheck 7\n") == 0);
}

TEST_CASE("scenario runs are reproducible") {
    const fs::path dir = fs::temp_directory_path() / "asyncdes_scenario_test";
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "in.aut");
        f << "des (0, 5, 4)\n(0, \"CRYPT !1\", 1)\n(1, i, 2)\n(2, \"DATA !*\", 3)\n(1, \"DATA !*\", 3)\n(3, \"OUTPUT !*\", 0)\n";
    }
    const std::string text =
        "read in.aut\n"
        "save raw\n"
        "minimize branching\n"
        "write out.aut\n"
        "compare @raw branching\n"
        "compare @raw strong\n"
        "strip-offers\n"
        "hide-all-but CRYPT OUTPUT\n"
        "minimize branching\n"
        "compare @raw simulated-by\n"
        "check 1\n";
    const auto sc = parse(text);
    ScenarioOptions opt;
    opt.base_dir = dir;
    opt.output_dir = dir;
    std::ostringstream log1, log2;
    const auto r1 = run_scenario(sc, opt, log1);
    const std::string first = slurp(dir / "out.aut");
    const auto r2 = run_scenario(sc, opt, log2);
    CHECK(log1.str() == log2.str());
    CHECK(first == slurp(dir / "out.aut"));
    CHECK(first.rfind("des (0, 3, 3)", 0) == 0);
    // strong fails (the inert step is gone), simulated-by fails (labels differ
    // once offers are stripped); both are recorded, nothing else.
    CHECK(r1.failures.size() == 2);
    CHECK(r1.reports.size() == 1);
    CHECK(r1.reports[0].pass);
    CHECK(log1.str().find("COMPARE branching @raw: PASS") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("shipped scenario parses") {
    const fs::path p = fs::path(ASYNCDES_SOURCE_DIR) / "scenarios" / "paper.scn";
    const auto sc = parse_scenario_file(p);
    CHECK(sc.steps.size() > 20);
}
