#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* cli = std::getenv("BIPROX_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "BIPROX_CLI is not set");
    const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json json_of(const Run& r) {
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "biprox/1");
    return j;
}

}  // namespace

TEST_CASE("analyze") {
    auto j = json_of(run("analyze -g S4 -s '(1,2)'"));
    CHECK(j["index"] == 12);
    CHECK(j["interval"]["size"] == 6);
    CHECK(j["interval"]["distributive"] == false);
    CHECK(j["primal"]["Z"] == true);
    CHECK(j["primal"]["ZZ"] == false);
    CHECK(j["primal"]["w_cyclic"] == true);
    CHECK(j["primal"]["sum_bound"] == "7/6");
    CHECK(j["dual"]["w_cyclic"] == true);
    for (const auto& t : j["primal"]["theorems"]) CHECK(t.contains("name"));

    auto s3 = json_of(run("analyze -g S3 --side primal"));
    CHECK(s3["primal"]["w_cyclic"] == true);
    CHECK(s3["primal"]["cyclic"] == false);
    CHECK(!s3.contains("dual"));
    CHECK(run("analyze -g S3 --format text").code == 0);
}

TEST_CASE("table with reference check") {
    auto j = json_of(run("table -g S3 --check-paper"));
    CHECK(j["check"]["ok"] == true);
    CHECK(j["table"]["entries"].size() == 6);
    auto d = json_of(run("table -g S4 -s '(1,2)' --side dual --check-paper"));
    CHECK(d["check"]["ok"] == true);
    CHECK(d["check"]["permutation"][0] == 0);
    CHECK(json_of(run("table -g Z6")).at("table").at("entries").size() == 6);
}

TEST_CASE("lattice") {
    Run dot = run("lattice -g Z6");
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("digraph", 0) == 0);
    auto j = json_of(run("lattice -g Z6 --format json"));
    CHECK(j["lattice"]["size"] == 4);
    CHECK(j["lattice"]["distributive"] == true);
}

TEST_CASE("survey is reproducible") {
    Run a = run("survey --max-index 6 -j 3"), b = run("survey --max-index 6 -j 1");
    CHECK(a.out == b.out);
    auto j = json_of(a);
    CHECK(j["counts"]["errors"] == 0);
    for (const auto& [k, v] : j["checks"].items()) {
        INFO(k);
        if (v.is_boolean()) CHECK(v == true);
        else CHECK(v == 0);
    }
    Run csv = run("survey --max-index 4 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("class,group,", 0) == 0);
}

TEST_CASE("fusion-check and catalog") {
    auto j = json_of(run(std::string("fusion-check ") + BIPROX_DATA_DIR + "/kac210.txt"));
    CHECK(j["axioms"] == true);
    CHECK(j["total_dim"] == doctest::Approx(210.0));
    CHECK(j["simple"] == true);
    auto c = json_of(run("catalog --max-order 8"));
    CHECK(c["groups"].size() > 5);
}

TEST_CASE("exit codes") {
    CHECK(run("analyze -g NoSuchGroup").code == 1);
    CHECK(run("analyze").code == 1);
    CHECK(run("").code == 1);
    CHECK(run("analyze -g S5 --max-order 50").code == 2);
    CHECK(run("table -g S4 -s '(1,2)(3,4)' --side dual --check-paper").code == 1);
    CHECK(run("fusion-check /nonexistent/ring.txt").code == 1);

    const std::string bad = "bad_ring.txt";
    std::ofstream(bad) << "1 0\n0 1\n0 1\n0 2\n";
    CHECK(run("fusion-check " + bad).code == 4);
    std::remove(bad.c_str());
}
