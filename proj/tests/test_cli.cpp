#include "fqre/cli.hpp"
#include "fqre/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace fqre;
using namespace fqre::cli;

namespace
{

std::string
slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int
run(const std::string& args)
{
    const std::string cmd = std::string(FQRE_CLI_PATH) + " " + args + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string
tmp(const std::string& name)
{
    return std::string(FQRE_TEST_TMP) + "/" + name;
}

}  // namespace

TEST_CASE("number formatting and parsing")
{
    CHECK(format_real(0) == "0");
    CHECK(format_real(1.5) == "1.5");
    CHECK(format_real(1.7e11) == "1.7e+11");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("plain") == "plain");
    CHECK(parse_int_range("20:60:20") == std::vector<int>{20, 40, 60});
    CHECK(parse_int_range("1,5,3") == std::vector<int>{1, 5, 3});
    CHECK(parse_real_list("0.5,1e-3") == std::vector<double>{0.5, 1e-3});
    CHECK_THROWS_AS(parse_real_list("x"), ParseError);
    CHECK_THROWS_AS(parse_int_range("5:1:0"), ParseError);
}

TEST_CASE("overrides")
{
    Overrides o;
    apply_assignment(o, "n_M=20");
    apply_assignment(o, "q.amplify=off");
    apply_assignment(o, "interaction.K=6");
    apply_assignment(o, "eta=30");
    CHECK(o.qubitization.at("n_M") == 20);
    CHECK(o.interaction.at("n_M") == 20);
    CHECK(o.qubitization.at("amplify") == 0);
    CHECK(o.interaction.at("K") == 6);
    CHECK(o.qubitization.count("K") == 0);
    CHECK(o.system.at("eta") == 30);
    CHECK_THROWS_AS(apply_assignment(o, "bogus=1"), ParseError);
    CHECK_THROWS_AS(apply_assignment(o, "n_M"), ParseError);
}

TEST_CASE("scenario JSON")
{
    const auto sc = load_scenario_json(
        R"({"name":"x","eta":10,"species":[{"zeta":5,"count":2}],"r_s_bohr":2.0,"num_plane_waves":4096,
            "options":{"n_M":18}})",
        "inline");
    CHECK(sc.system.eta == 10);
    CHECK(derive(sc.system).r_s == doctest::Approx(2.0));
    CHECK(sc.system.n_requested == 4096);
    CHECK(sc.system.eps == 0.0016);
    CHECK(sc.overrides.qubitization.at("n_M") == 18);
    CHECK_THROWS_AS(load_scenario_json(R"({"eta":10,"omega_bohr3":5,"colour":1})", "inline"), ParseError);
    CHECK_THROWS_AS(load_scenario_json(R"({"eta":10)", "inline"), ParseError);
    CHECK_THROWS_WITH(load_scenario_json(R"({"eta":1,"omega_bohr3":100})", "inline"), doctest::Contains("eta must be >= 2"));
}

TEST_CASE("sweep rows follow grid order and keep failures")
{
    Scenario base = preset_scenario("jellium");
    SweepAxes ax;
    ax.eta = {10, 20};
    ax.rs = {1, 5};
    ax.log2n = {9};
    ax.eps = {0.0016, 1e-12};
    const auto rows = run_sweep(base, ax, Algorithm::both, 2);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0].system.eta == 10);
    CHECK(rows[0].algorithm == "qubitization");
    CHECK(rows[1].algorithm == "interaction");
    CHECK(rows[8].system.eta == 20);
    CHECK(rows[0].status == "ok");
    CHECK(rows[2].status != "ok");  // eps = 1e-12 cannot be met
    CHECK_FALSE(rows[2].message.empty());
}

TEST_CASE("command line: exit codes")
{
    CHECK(run("presets --format csv --out " + tmp("presets.csv")) == 0);
    CHECK(run("estimate --preset jellium --format json --out " + tmp("j.json")) == 0);
    CHECK(run("estimate --preset nowhere") == 2);
    CHECK(run("estimate --preset jellium --set n_Q=3") == 2);
    CHECK(run("estimate --preset jellium --set q.n_M=3 --algorithm qubitization") == 3);
    CHECK(run("estimate --preset jellium --set q.n_M=45 --algorithm qubitization") == 4);
    CHECK(run("reproduce wigner-table --out " + tmp("w.txt")) == 0);
    CHECK(run("reproduce nothing") == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("command line: byte-identical reruns")
{
    const std::string cases[] = {
        "estimate --preset ethylene_carbonate --format json",
        "estimate --preset lithium --format table --algorithm both",
        "sweep --eta 10:30:10 --rs 2,5 --log2n 9,12 --format csv --threads 4",
        "sweep --preset jellium --eta 20 --delta 0.01,0.1 --format json",
    };
    int i = 0;
    for (const auto& c : cases) {
        const std::string a = tmp("det_a_" + std::to_string(i)), b = tmp("det_b_" + std::to_string(i));
        REQUIRE(run(c + " --out " + a) == 0);
        REQUIRE(run(c + " --out " + b) == 0);
        const std::string sa = slurp(a);
        CHECK_FALSE(sa.empty());
        CHECK(sa == slurp(b));
        ++i;
    }
}

TEST_CASE("command line: CSV shape")
{
    REQUIRE(run("sweep --eta 10,20 --rs 3 --log2n 9 --format csv --out " + tmp("s.csv")) == 0);
    const std::string s = slurp(tmp("s.csv"));
    CHECK(s.rfind("eta,omega,n,n_p,r_s,delta,", 0) == 0);
    std::size_t lines = 0;
    for (std::size_t p = s.find("\r\n"); p != std::string::npos; p = s.find("\r\n", p + 2))
        ++lines;
    CHECK(lines == 5);  // header + 2 etas x 2 algorithms
}
