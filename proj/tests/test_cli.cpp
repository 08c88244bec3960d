#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = UDINT_CLI_PATH;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / "udint_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    fs::path operator/(const std::string& name) const { return dir / name; }
};

int run(const std::string& args, const fs::path& stdout_file) {
    std::string cmd = kCli + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    return std::system(cmd.c_str());
}

int run_quiet(const std::string& args) {
    std::string cmd = kCli + " " + args + " > /dev/null 2>/dev/null";
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("generate emits the radical-inverse prefix") {
    Scratch s;
    auto out = s / "gen.csv";
    REQUIRE(run("generate --seq vdc:2 --n 3", out) == 0);
    CHECK(slurp(out) == "n,x\n1,0.5\n2,0.25\n3,0.75\n");
}

TEST_CASE("csv bodies are byte-identical across runs") {
    Scratch s;
    auto a = s / "a.csv";
    auto b = s / "b.csv";
    std::string args = "integrate --seq kronecker:sqrt2 --f square --n 2000";
    REQUIRE(run(args + " --out " + a.string(), s / "ignore1") == 0);
    REQUIRE(run(args + " --out " + b.string(), s / "ignore2") == 0);
    std::string body = slurp(a);
    CHECK(body == slurp(b));
    CHECK(body.substr(0, 17) == "n,mean,tail_term\n");
}

TEST_CASE("the config sidecar reproduces the run verbatim") {
    Scratch s;
    auto out = s / "traj.csv";
    REQUIRE(run("truncated --seq prng:9 --f inv_sqrt --eps 0.5 --n 1000 --out " + out.string(),
                s / "ignore") == 0);
    std::string first = slurp(out);
    fs::path sidecar = out.string() + ".config.json";
    REQUIRE(fs::exists(sidecar));
    REQUIRE(run_quiet("run --config " + sidecar.string()) == 0);
    CHECK(slurp(out) == first);
}

TEST_CASE("config files override flags") {
    Scratch s;
    auto cfg = s / "cfg.json";
    {
        std::ofstream f(cfg);
        f << R"({"command":"generate","sequence":{"kind":"van_der_corput","base":2},"n_max":2})";
    }
    auto out = s / "gen.csv";
    // the flag says n=5, the config says 2; the config wins
    REQUIRE(run("generate --seq vdc:2 --n 5 --config " + cfg.string(), out) == 0);
    CHECK(slurp(out) == "n,x\n1,0.5\n2,0.25\n");
}

TEST_CASE("configs accept the integrand-name shorthand") {
    Scratch s;
    auto cfg = s / "short.json";
    {
        std::ofstream f(cfg);
        f << R"({"command":"integrate","sequence":{"kind":"van_der_corput","base":2},)"
          << R"("integrand":"square","n_max":100})";
    }
    auto out = s / "short.csv";
    REQUIRE(run("run --config " + cfg.string(), out) == 0);
    CHECK(slurp(out).substr(0, 17) == "n,mean,tail_term\n");
}

TEST_CASE("inapplicable fields are rejected, not ignored") {
    Scratch s;
    // --eps is not an option of integrate at all
    CHECK(run_quiet("integrate --seq prng:1 --f square --n 100 --eps 0.5") != 0);
    // and a config file smuggling eps into integrate is rejected too
    auto cfg = s / "bad.json";
    {
        std::ofstream f(cfg);
        f << R"({"command":"integrate","sequence":{"kind":"prng","seed":1},)"
          << R"("integrand":{"name":"square"},"n_max":100,"eps":0.5})";
    }
    CHECK(run_quiet("run --config " + cfg.string()) != 0);
    // sequence is not applicable to lemma-bound
    CHECK(run_quiet("lemma-bound --f log_recip --eps 0.1 --n 50 --replicas 2 --base-seed 1 "
                    "--seq prng:1") != 0);
}

TEST_CASE("bad names and missing requirements fail with nonzero status") {
    CHECK(run_quiet("integrate --seq prng:1 --f nope --n 100") != 0);
    CHECK(run_quiet("integrate --seq prng:1 --n 100") != 0);           // no integrand
    CHECK(run_quiet("integrate --f square --n 100") != 0);             // no sequence
    CHECK(run_quiet("slln --seq prng:1 --dist nope --n 100") != 0);    // unknown distribution
    CHECK(run_quiet("generate --seq kronecker:0.5 --n 10") != 0);      // rational alpha
    CHECK(run_quiet("generate --seq vdc:2 --n 10 --format yaml") != 0);
}

TEST_CASE("unwritable output fails loudly") {
    CHECK(run_quiet("generate --seq vdc:2 --n 3 --out /nonexistent_dir_udint/x.csv") != 0);
}

TEST_CASE("UDINT_OUT_DIR provides the default output directory") {
    Scratch s;
    std::string cmd = "UDINT_OUT_DIR=" + s.dir.string() + " " + kCli +
                      " generate --seq vdc:2 --n 1 --out rel.csv > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(s / "rel.csv") == "n,x\n1,0.5\n");
    CHECK(fs::exists(s / "rel.csv.config.json"));
}

TEST_CASE("counterexample runs against the sequence's own prefix") {
    Scratch s;
    auto out = s / "counter.csv";
    REQUIRE(run("integrate --seq prng:3 --f counterexample --n 500", out) == 0);
    std::string body = slurp(out);
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line)) {
        auto first_comma = line.find(',');
        auto second_comma = line.find(',', first_comma + 1);
        CHECK(line.substr(first_comma + 1, second_comma - first_comma - 1) == "0");
    }
}

TEST_CASE("json format carries the report and the config") {
    Scratch s;
    auto out = s / "traj.json";
    REQUIRE(run("integrate --seq vdc:2 --f square --n 500 --format json", out) == 0);
    std::string body = slurp(out);
    CHECK(body.find("\"trajectory\"") != std::string::npos);
    CHECK(body.find("\"config\"") != std::string::npos);
    auto cond = s / "cond.json";
    REQUIRE(run("conditions --seq prng:2 --f square --n 1000 --format json", cond) == 0);
    CHECK(slurp(cond).find("\"verdict3\"") != std::string::npos);
}

TEST_CASE("full-scale runs land on the expected values") {
    Scratch s;
    auto traj = s / "big.csv";
    REQUIRE(run("integrate --seq kronecker:sqrt2 --f square --n 1000000", traj) == 0);
    std::string body = slurp(traj);
    auto last_line = body.substr(body.rfind('\n', body.size() - 2) + 1);
    auto c1 = last_line.find(',');
    auto c2 = last_line.find(',', c1 + 1);
    double final_mean = std::stod(last_line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(last_line.substr(0, c1) == "1000000");
    CHECK(std::abs(final_mean - 1.0 / 3.0) < 1e-3);

    auto cond = s / "cond.csv";
    REQUIRE(run("conditions --seq kronecker:phi --f inv_sqrt --n 1000000", cond) == 0);
    std::string row = slurp(cond);
    CHECK(row.find("true,true,true") != std::string::npos);
}

TEST_CASE("discrepancy command emits one row per requested prefix") {
    Scratch s;
    auto out = s / "disc.csv";
    REQUIRE(run("discrepancy --seq kronecker:sqrt2 --n 1000 --schedule geometric", out) == 0);
    std::string body = slurp(out);
    // header + 3 checkpoints (100, 316, 1000)
    CHECK(std::count(body.begin(), body.end(), '\n') == 4);
    REQUIRE(run("discrepancy --seq kronecker:sqrt2 --n 1000", out) == 0);
    std::string single = slurp(out);
    CHECK(std::count(single.begin(), single.end(), '\n') == 2);
}
