// Contract tests for the command-line tool: exit codes, output shapes, and
// the rule that every schedule the tool writes passes its own validator.
// The binary path arrives in the PEBBLE_BIN environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "pebbling/serialize.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string bin() {
    const char* b = std::getenv("PEBBLE_BIN");
    REQUIRE_MESSAGE(b != nullptr, "PEBBLE_BIN must point at the pebble binary");
    return b;
}

RunResult run(const std::string& args) {
    RunResult r;
    const std::string cmd = bin() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string tmp_path(const std::string& name) {
    return "/tmp/pebble_cli_test_" + std::to_string(getpid()) + "_" + name;
}

void write(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("construct prints depth and space") {
    auto r = run("construct --length 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth=14 space=4") != std::string::npos);

    r = run("construct --length 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth=2 space=1") != std::string::npos);
}

TEST_CASE("construct rejects bad lengths with exit 2") {
    CHECK(run("construct --length 0").exit_code == 2);
    CHECK(run("construct").exit_code == 2);
    CHECK(run("construct --length 5 --no-such-flag").exit_code == 2);
}

TEST_CASE("written schedules pass validation") {
    const std::string sched = tmp_path("c.json");
    auto r = run("construct --length 12 --variant measured_target --out " + sched);
    REQUIRE(r.exit_code == 0);
    auto v = run("validate " + sched);
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("\"valid\":true") != std::string::npos);
    CHECK(v.out.find("\"depth\":23") != std::string::npos);
    std::remove(sched.c_str());
}

TEST_CASE("search prints the optimal depth") {
    auto r = run("search --length 3 --pebbles 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth=6") != std::string::npos);

    r = run("search --length 1 --pebbles 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth=2") != std::string::npos);
}

TEST_CASE("search exit codes for infeasible and node-capped runs") {
    CHECK(run("search --length 2 --pebbles 1").exit_code == 3);
    CHECK(run("search --length 12 --pebbles 4 --node-cap 10").exit_code == 4);
}

TEST_CASE("search writes a schedule that validates") {
    const std::string sched = tmp_path("s.json");
    const std::string weights = tmp_path("w.json");
    write(weights, R"({"default_site_weight": 1,
                       "transient": [{"mod": 3, "residue": 1, "weight": 1}]})");
    auto r = run("search --length 6 --pebbles 4 --weights " + weights +
                 " --variant measured_target --tie-break min-total-ops --out " + sched);
    REQUIRE(r.exit_code == 0);
    auto v = run("validate " + sched + " --weights " + weights);
    CHECK(v.exit_code == 0);
    std::remove(sched.c_str());
    std::remove(weights.c_str());
}

TEST_CASE("validate distinguishes invalid schedules from parse failures") {
    using namespace pebbling;
    const std::string good = tmp_path("good.json");
    const std::string bad = tmp_path("bad.json");
    const std::string junk = tmp_path("junk.json");

    Schedule minimal;
    minimal.length = 1;
    minimal.steps = {TimeStep{{pebble_at(1)}, {}}, TimeStep{{unpebble_at(1)}, {}}};
    write(good, serialize(minimal));

    Schedule overlap;
    overlap.length = 2;
    overlap.steps = {TimeStep{{pebble_at(1), pebble_at(2)}, {}}};
    write(bad, serialize(overlap));

    write(junk, "{not json");

    auto g = run("validate " + good);
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("\"depth\":2") != std::string::npos);

    auto b = run("validate " + bad);
    CHECK(b.exit_code == 5);
    CHECK(b.out.find("\"step\":0") != std::string::npos);

    CHECK(run("validate " + junk).exit_code == 1);
    CHECK(run("validate /no/such/file.json").exit_code == 1);

    std::remove(good.c_str());
    std::remove(bad.c_str());
    std::remove(junk.c_str());
}

TEST_CASE("metrics emits the four metrics") {
    const std::string sched = tmp_path("m.json");
    REQUIRE(run("construct --length 7 --out " + sched).exit_code == 0);
    auto r = run("metrics " + sched);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth,cost,space,weighted_space") != std::string::npos);
    CHECK(r.out.find("14,") != std::string::npos);
    std::remove(sched.c_str());
}

TEST_CASE("estimate: table strategy emits the reported row") {
    auto r = run("estimate --n 2048 --beta 160 --window 2 --pebbles 12 --strategy table");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("94,242,54") != std::string::npos);
    CHECK(r.out.find("157,253,14.5") != std::string::npos);
}

TEST_CASE("estimate: construction strategy depth column") {
    auto r = run("estimate --n 4096 --beta 200 --window 2 --pebbles 12 --strategy construction");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(",187,") != std::string::npos);
}

TEST_CASE("estimate: unknown block size is a usage error") {
    CHECK(run("estimate --n 2048 --beta 99 --window 2 --pebbles 12 --strategy table").exit_code == 2);
}

TEST_CASE("estimate: astar strategy reports a hit node cap as exit 4") {
    CHECK(run("estimate --n 2048 --beta 160 --pebbles 12 --strategy astar --node-cap 10")
              .exit_code == 4);
}

TEST_CASE("estimate: json output parses and is schema-stable") {
    auto a = run("estimate --n 2048 --beta 160 --pebbles 12 --strategy table --format json");
    auto b = run("estimate --n 2048 --beta 160 --pebbles 12 --strategy table --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["depth"] == 157);
    CHECK(j[0]["d"] == 94);
}

TEST_CASE("estimate: multiple configs give one row each") {
    auto r = run("estimate --n 2048 --beta 160 --beta 200 --pebbles 5 --pebbles 12 --strategy table");
    CHECK(r.exit_code == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + 4 rows
}

TEST_CASE("threads flag is accepted and does not change results") {
    auto a = run("--threads 1 search --length 5 --pebbles 3");
    auto b = run("--threads 8 search --length 5 --pebbles 3");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
