#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "graphos/graph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("graphos_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_file = work_dir() / "out.txt";
    const std::string cmd =
        std::string(GRAPHOS_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << content;
    return p.string();
}

const std::string kC6 = "6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
const std::string kK3 = "3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("compute reports the 6-cycle headline values") {
    const std::string path = write_file("c6.edges", kC6);
    auto r = run_cli("compute --graph " + path + " --x RG --params theta_bar,d_inf --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["values"]["theta_bar"].get<double>() == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(j["values"]["d_inf"].get<double>() == doctest::Approx(2.25).epsilon(1e-4));
    CHECK(j["n"] == 6);
}

TEST_CASE("compute theta of a complete graph") {
    const std::string path = write_file("k3.edges", kK3);
    auto r = run_cli("compute --graph " + path + " --params theta --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["values"]["theta"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("reports are identical after a write/read round trip") {
    const std::string path = write_file("c6.edges", kC6);
    // re-emit the parsed graph through the library writer, then recompute
    graphos::Graph g = graphos::parse_edge_list_file(path);
    std::ostringstream ss;
    graphos::write_edge_list(g, ss);
    const std::string path2 = write_file("c6_rewritten.edges", ss.str());

    auto r1 = run_cli("compute --graph " + path + " --params theta_bar,sigma --format json");
    auto r2 = run_cli("compute --graph " + path2 + " --params theta_bar,sigma --format json");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r1.out) == json::parse(r2.out));
}

TEST_CASE("json values are plain decimals") {
    const std::string path = write_file("k3.edges", kK3);
    auto r = run_cli("compute --graph " + path + " --params theta,omega --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["values"]["omega"].is_number());
    CHECK(j["values"]["theta"].is_number());
    CHECK(j.contains("graph_hash"));
}

TEST_CASE("sandwich command flags the 6-cycle inequality") {
    const std::string path = write_file("c6.edges", kC6);
    auto r = run_cli("sandwich --graph " + path + " --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    bool saw_equality = false;
    for (const auto& f : j["flags"]) {
        if (f["name"] == "equality_case") {
            saw_equality = true;
            CHECK(f["pass"] == false);
        }
        if (f["name"] == "sandwich_classic") CHECK(f["pass"] == true);
    }
    CHECK(saw_equality);
}

TEST_CASE("product-check with a fixed seed is deterministic and passes") {
    const std::string a = write_file("k2.edges", "2\n1 2\n");
    const std::string b = write_file("p3.edges", "3\n1 2\n2 3\n");
    auto r1 = run_cli("product-check --g " + a + " --h " + b + " --trials 3 --seed 7 --format json");
    auto r2 = run_cli("product-check --g " + a + " --h " + b + " --trials 3 --seed 7 --format json");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    json j = json::parse(r1.out);
    CHECK(j["all_within_tol"] == true);
}

TEST_CASE("theta-stability command") {
    const std::string path = write_file("c5.edges", "5\n1 2\n2 3\n3 4\n4 5\n5 1\n");
    auto r = run_cli("theta-stability --graph " + path + " --p 2 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["residual"].get<double>() <= 1e-4);
}

TEST_CASE("iso command") {
    const std::string a = write_file("c5a.edges", "5\n1 2\n2 3\n3 4\n4 5\n5 1\n");
    const std::string b = write_file("c5b.edges", "5\n2 4\n4 1\n1 3\n3 5\n5 2\n");
    auto r = run_cli("iso --g " + a + " --h " + b + " --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["isomorphic"] == true);

    const std::string c = write_file("p5.edges", "5\n1 2\n2 3\n3 4\n4 5\n");
    auto r2 = run_cli("iso --g " + a + " --h " + c + " --format json");
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r2.out)["isomorphic"] == false);
}

TEST_CASE("batch keeps going after a failing row") {
    const std::string good = write_file("k2b.edges", "2\n1 2\n");
    const std::string big = write_file("big.edges", "18\n1 2\n");  // over the omega cap
    const std::string list = write_file("list.txt", good + "\n" + big + "\n" + good + "\n");
    auto r = run_cli("batch --list " + list + " --params theta,omega --jobs 2");
    REQUIRE(r.exit_code == 0);
    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "path,n,edges,theta,omega,error");
    int rows = 0, errors = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.find("exceeds cap") != std::string::npos) ++errors;
    }
    CHECK(rows == 3);
    CHECK(errors == 1);
}

TEST_CASE("graph6 ingestion") {
    const std::string g6 = write_file("c5.g6", "Dhc\n");
    auto r = run_cli("compute --graph " + g6 + " --params theta --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["values"]["theta"].get<double>() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
}

TEST_CASE("degenerate ratio exits with code 2") {
    const std::string path = write_file("e2.edges", "2\n");
    const std::string xfile = write_file("x.mat", "2 2\n0 1\n1 0\n");
    auto r = run_cli("compute --graph " + path + " --x " + xfile + " --params ratio");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("parse errors exit with code 1 and a line number") {
    const std::string bad = write_file("bad.edges", "3\n1 2\n1 oops\n");
    auto r = run_cli("compute --graph " + bad + " --params theta");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("line 3") != std::string::npos);

    auto r2 = run_cli("compute --graph /nonexistent.edges --params theta");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("environment tolerance override is honored but flags win") {
    const std::string path = write_file("k3c.edges", kK3);
    // sanity only: both runs succeed and agree on the value
    const std::string cmd = "GRAPHOS_GAP_TOL=1e-6 " + std::string(GRAPHOS_CLI_PATH) +
                            " compute --graph " + path + " --params theta --format json > " +
                            (work_dir() / "env_out.txt").string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    std::ifstream in(work_dir() / "env_out.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    json j = json::parse(ss.str());
    CHECK(j["values"]["theta"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
}
