#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string bin() { return std::getenv("TCAT_BIN") ? std::getenv("TCAT_BIN") : "tcat"; }
std::string data(const std::string& f) { return std::string(std::getenv("TCAT_DATA") ? std::getenv("TCAT_DATA") : "data") + "/" + f; }

Run run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" + bin() + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args, int expect)
{
    Run r = run("--json " + args);
    CHECK(r.code == expect);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("term equality exit codes")
{
    CHECK(run("wone equal 'c.l' 'l'").code == 0);
    CHECK(run("wone equal 'c' 'id{W*W}'").code == 1);
    CHECK(run("wone equal 'p' '0'").code == 2);
}

TEST_CASE("parse errors carry a position")
{
    auto j = run_json("wone eval 'c.(l'", 2);
    CHECK(j["status"] == "error");
    CHECK(j["position"] == 4);
    CHECK(run("--bogus-flag selftest").code == 2);
    CHECK(run("algebroid check /nonexistent.json").code == 2);
}

TEST_CASE("algebroid check on so3")
{
    auto j = run_json("algebroid check " + data("so3.json"), 0);
    CHECK(j["status"] == "pass");
    int seen = 0;
    for (const auto& c : j["checks"])
        if (c["name"] == "alternating" || c["name"] == "Leibniz" || c["name"] == "Bianchi") {
            CHECK(c["pass"] == true);
            ++seen;
        }
    CHECK(seen == 3);
}

TEST_CASE("a failing algebroid exits 1 with a witness")
{
    auto j = run_json("algebroid check " + data("broken_bianchi.json"), 1);
    bool found = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "Bianchi") {
            found = true;
            CHECK(c["pass"] == false);
            CHECK(c.contains("witness"));
        }
    CHECK(found);
}

TEST_CASE("section bracket from text and from file")
{
    auto j = run_json("algebroid bracket " + data("so3.json") + " '1,0,0' '0,1,0'", 0);
    CHECK(j["result"]["bracket"] == nlohmann::json({"0", "0", "1"}));
    CHECK(run("algebroid bracket " + data("so3_action.json") + " " + data("section.json") + " 'x2,0,1'").code == 0);
    CHECK(run("algebroid bracket " + data("so3.json") + " '1,0' '0,1,0'").code == 2);
}

TEST_CASE("one example per kind runs")
{
    CHECK(run("cdc check " + data("map.json")).code == 0);
    CHECK(run("bundle check " + data("bundle.json")).code == 0);
    CHECK(run("bundle check " + data("connection.json")).code == 0);
    CHECK(run("tangent check -n 2").code == 0);
    CHECK(run("nerve object " + data("so3_action.json") + " -V 'W2*W'").code == 0);
    CHECK(run("nerve functoriality " + data("so3.json") + " --pairs 10").code == 0);
    CHECK(run("lie-tangent " + data("so3_action.json")).code == 0);
}

TEST_CASE("wrong kind is an input error")
{
    CHECK(run("algebroid check " + data("bundle.json")).code == 2);
    CHECK(run("cdc check " + data("so3.json")).code == 2);
}

TEST_CASE("reports are byte identical across runs")
{
    for (const std::string args : {"algebroid check " + data("so3_action.json"), std::string("tangent check -n 2"),
                                   "lie-tangent " + data("so3.json")}) {
        Run a = run("--json " + args), b = run("--json " + args);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("seed from environment and flag")
{
    auto j = run_json("selftest", 0);
    CHECK(j["result"]["seed"] == 20240611);
    Run e = run("--json selftest", "TCAT_SEED=7");
    CHECK(e.code == 0);
    CHECK(nlohmann::json::parse(e.out)["result"]["seed"] == 7);
    Run f = run("--json --seed 9 selftest", "TCAT_SEED=7");
    CHECK(nlohmann::json::parse(f.out)["result"]["seed"] == 9);
}

TEST_CASE("bianchi mutant keeps agreement")
{
    auto j = run_json("selftest --mutate bianchi", 0);
    CHECK(j["status"] == "pass");
}
