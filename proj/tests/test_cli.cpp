// Runs the built binary; WITTEN_CLI and WITTEN_SOURCE come from ctest.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string env(const char* name, const char* fallback) {
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

std::string cli() { return env("WITTEN_CLI", "./witten"); }
fs::path source() { return env("WITTEN_SOURCE", WITTEN_SOURCE_DIR); }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("witten_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Run {
    int code;
    std::string output;
};

Run run(const std::string& args) {
    auto log = fs::temp_directory_path() / ("witten_cli_log_" + std::to_string(::getpid()));
    std::string cmd = cli() + " " + args + " > " + log.string() + " 2>&1";
    int st = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

// d = 4 with a short grid, cheap enough for repeated oracle runs
const char* kSmall = R"([model]
weights = [1, -1]
zeta_values = [-0.25, 0.0, 0.25]
M = 1

[amplitude]
monomials = [{ coeff = 1, exponents = [0, 0, 0, 0] }, { coeff = 0.5, exponents = [2, 0, 0, 0] }]

[sigma]
poly = [1, 1]

[oracle]
epsilon_grid = [0.03125, 0.015625, 0.0078125, 0.00390625]
)";

}  // namespace

TEST_CASE("coeff matches the golden tables") {
    for (const char* name : {"coeff_d4", "coeff_d6", "coeff_d8"}) {
        CAPTURE(name);
        auto out = scratch(name);
        auto r = run("coeff --scenario " + (source() / "tests/golden" / (std::string(name) + ".toml")).string() +
                     " --out " + out.string());
        REQUIRE(r.code == 0);
        CHECK(slurp(out / "coefficients.txt") == slurp(source() / "tests/golden" / (std::string(name) + ".expected")));
    }
}

TEST_CASE("golden tables carry the closed-form values") {
    auto lines = [](const char* name) {
        std::istringstream in(slurp(source() / "tests/golden" / name));
        std::map<std::string, std::string> m;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string n, idx, rest;
            ls >> n >> idx;
            std::getline(ls, rest);
            m[n + " " + idx] += rest;
        }
        return m;
    };
    // c_{0,0,0} = 2^{-2-L} pi and c^{+-}_{L+1,0,0,0} = +-(i pi / 4) for L = 0
    auto d4 = lines("coeff_d4.expected");
    CHECK(d4["c_jkl 0,0,0"] == " 1/4 1 0");
    CHECK(d4["c_plus 1,0,0,0"] == " 1/4 1 1");
    CHECK(d4["c_minus 1,0,0,0"] == " -1/4 1 1");
    // N^+ = 1, N^- = -3 for (n+, n-) = (4, 2)
    auto d6 = lines("coeff_d6.expected");
    CHECK(d6["N_plus -"] == " 1/1 0 0");
    CHECK(d6["N_minus -"] == " -3/1 0 0");
    // C_{N,N+1,0,0} = (-1)^N N!, C_{N,m,m-1,0} = 1, C_{N,m,0,m-1} = 2^{1-m}
    auto d8 = lines("coeff_d8.expected");
    CHECK(d8["C 2,3,0,0"] == " 2/1 0 0");
    CHECK(d8["C 1,2,0,0"] == " -1/1 0 0");
    CHECK(d8["C 2,3,2,0"] == " 1/1 0 0");
    CHECK(d8["C 2,3,0,2"] == " 1/4 0 0");
}

TEST_CASE("config errors exit with 2") {
    auto dir = scratch("errors");
    CHECK(run("").code == 2);
    CHECK(run("frobnicate --scenario x").code == 2);
    CHECK(run("coeff").code == 2);
    CHECK(run("coeff --scenario " + (dir / "missing.toml").string()).code == 2);
    CHECK(run("coeff --scenario " + (source() / "scenarios/d4_jump.toml").string() + " --jobs 0").code == 2);

    std::string bad = kSmall;
    bad.replace(bad.find("M = 1"), 5, "M = -1");
    auto r = run("sweep --scenario " + write_file(dir, "bad.toml", bad).string() + " --out " + dir.string());
    CHECK(r.code == 2);
    CHECK(r.output.find("line 4") != std::string::npos);
    CHECK(r.output.find("model.M") != std::string::npos);

    r = run("sweep --scenario " + write_file(dir, "syntax.toml", "[model\n").string());
    CHECK(r.code == 2);
    CHECK(r.output.find("line 1") != std::string::npos);
}

TEST_CASE("sweep is deterministic and shows the singular value") {
    auto dir = scratch("sweep");
    auto sc = write_file(dir, "s.toml", kSmall);
    REQUIRE(run("sweep --scenario " + sc.string() + " --out " + (dir / "a").string()).code == 0);
    REQUIRE(run("sweep --scenario " + sc.string() + " --out " + (dir / "b").string() + " --jobs 3").code == 0);
    CHECK(slurp(dir / "a/sweep.csv") == slurp(dir / "b/sweep.csv"));

    auto rows = csv(dir / "a/sweep.csv");
    REQUIRE(rows.at(0) == std::vector<std::string>{"zeta", "j", "functional", "re", "im"});
    std::map<std::string, int> singular;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i][2] == "sigma_plus" || rows[i][2] == "sigma_minus") ++singular[rows[i][0]];
    // only zeta = 0 carries bracket functionals, at j = 1 = j_F
    CHECK(singular["0"] == 2);
    CHECK(singular.count("-0.25") == 0);
    CHECK(singular.count("0.25") == 0);
}

TEST_CASE("oracle output") {
    auto dir = scratch("oracle");
    auto sc = write_file(dir, "s.toml", kSmall);
    REQUIRE(run("oracle --scenario " + sc.string() + " --out " + (dir / "a").string()).code == 0);
    REQUIRE(run("oracle --scenario " + sc.string() + " --out " + (dir / "b").string() + " --jobs 2").code == 0);
    CHECK(slurp(dir / "a/oracle.csv") == slurp(dir / "b/oracle.csv"));
    auto rows = csv(dir / "a/oracle.csv");
    CHECK(rows.at(0) == std::vector<std::string>{"zeta", "epsilon", "re", "im", "method"});
    CHECK(rows.size() == 1 + 3 * 4);
    CHECK(rows.at(1).at(4) == "reduced-2d");
}

TEST_CASE("verify") {
    SUBCASE("jump scenario passes and writes the one-sided limits") {
        auto dir = scratch("verify_jump");
        auto r = run("verify --scenario " + (source() / "scenarios/d4_jump.toml").string() + " --out " + dir.string());
        CHECK(r.code == 0);
        auto slopes = csv(dir / "verify_slopes.csv");
        for (size_t i = 1; i < slopes.size(); ++i) CHECK(slopes[i][5] != "fail");
        auto jump = csv(dir / "verify_jump.csv");
        REQUIRE(jump.size() == 3);
        // f = 1: no jump at j = 0, antisymmetric limits at j = 1
        CHECK(std::stod(jump[1][5]) == 0.0);
        double up = std::stod(jump[2][1]), dn = std::stod(jump[2][3]);
        CHECK(up == doctest::Approx(-dn).epsilon(1e-12));
        CHECK(std::abs(up) > 1.0);
    }
    SUBCASE("a tolerance below the fit accuracy fails with 1") {
        auto dir = scratch("verify_tight");
        auto r = run("verify --scenario " + (source() / "scenarios/d4_jump.toml").string() + " --out " + dir.string() +
                     " --tol 1e-30");
        CHECK(r.code == 1);
        CHECK(slurp(dir / "verify_coefficients.csv").find(",fail") != std::string::npos);
    }
    SUBCASE("wrong-sign definite reports decay") {
        auto dir = scratch("verify_decay");
        auto r = run("verify --scenario " + (source() / "scenarios/d4_definite_wrong_sign.toml").string() + " --out " +
                     dir.string());
        CHECK(r.code == 0);
        auto rows = csv(dir / "verify_slopes.csv");
        REQUIRE(rows.size() == 4);
        for (size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i][2] == "superpolynomial decay");
            CHECK(rows[i][5] == "pass");
        }
        CHECK(csv(dir / "verify_coefficients.csv").size() == 1);
        CHECK_FALSE(fs::exists(dir / "verify_jump.csv"));
    }
}
