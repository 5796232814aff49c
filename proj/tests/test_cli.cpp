#include "doctest.h"

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "format.hpp"
#include "json.hpp"

using namespace vvmf;
using namespace vvmf::cli;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("exact and floating format") {
    CHECK(format_value(Cyclotomic(1L)) == "1 @1");
    CHECK(format_value(e(Rat(1, 3))) == "z @3");
    CHECK(format_value(Cyclotomic(-1L).embed(12)) == "-1 @1");
    CHECK(format_value(sqrt_int(-3), ValueMode::floating, 6) == "0.000000+1.732051i");
    CHECK(format_value(Cyclotomic(Rat(-1, 2)), ValueMode::floating, 3) == "-0.500+0.000i");
    CHECK(format_value(e(Rat(1, 2)), ValueMode::floating, 2) == "-1.00+0.00i");
    for (const auto& x : {Cyclotomic(Rat(7, 3)), e(Rat(5, 12)), sqrt_int(5) + e(Rat(1, 8)), Cyclotomic(0L),
                          Cyclotomic::zeta(4) / sqrt_int(3)})
        CHECK(Cyclotomic::parse(format_value(x)) == x);
}

TEST_CASE("gram input") {
    CHECK(parse_gram(R"({"gram": [[2, 1], [1, 2]]})") == IntMatrix{{2, 1}, {1, 2}});
    CHECK_THROWS_AS(parse_gram("{"), input_error);
    CHECK_THROWS_AS(parse_gram(R"({"matrix": [[2]]})"), input_error);
    CHECK_THROWS_AS(parse_gram(R"({"gram": [[2, 1]]})"), input_error);
    CHECK_THROWS_AS(parse_gram(R"({"gram": [[2.5, 1], [1, 2]]})"), input_error);
    CHECK_THROWS_AS(parse_gram(R"({"gram": [[1, 0], [0, 2]]})"), input_error);
    CHECK_THROWS_AS(read_gram_file(data("missing.json")), input_error);
}

TEST_CASE("fqm summary") {
    auto r = run("fqm --gram " + data("a2.json"));
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["order"] == 3);
    CHECK(j["level"] == 3);
    CHECK(j["signature"] == 2);
    CHECK(j["q_values"] == nlohmann::json({"0", "1/3", "1/3"}));
}

TEST_CASE("hecke prints a proportional expansion") {
    auto r = run("hecke --gram " + data("a2.json") + " -p 2 --kl 0,2 --bound 8");
    CHECK(r.status == 0);
    CHECK(r.out.find("0\t1/1\t18 @1") != std::string::npos);
    CHECK(r.out.find("# eigenvalue\t3 @1") != std::string::npos);
}

TEST_CASE("verify passes on A2") {
    auto r = run("verify --gram " + data("a2.json") + " --primes 2,3 --order 6");
    CHECK(r.status == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS\tlfun zeta-L p=2") != std::string::npos);
    CHECK(r.out.find("PASS\tsphalg p=3") != std::string::npos);
}

TEST_CASE("other subcommands") {
    auto w = run("weil --gram " + data("a2.json") + " --format json");
    CHECK(w.status == 0);
    auto j = nlohmann::json::parse(w.out);
    CHECK(j["T"][1][1] == "z @3");
    auto s = run("satake --gram " + data("a2.json") + " -p 3 --kl 0,2");
    CHECK(s.status == 0);
    CHECK(s.out.find("0\t2\t1 + 2*z @3") != std::string::npos);
    auto l = run("lfactor --gram " + data("a2.json") + " -p 2 --format json");
    CHECK(l.status == 0);
    CHECK(nlohmann::json::parse(l.out)["chi1chi2"] == "-2 @1");
    auto lc = run("lfactor --gram " + data("a2.json") + " -p 2 --chi1 \"1 @1\" --chi2 \"1 @1\"");
    CHECK(lc.out.find("den\t1 @1,0 @1,-4 @1,0 @1,4 @1") != std::string::npos);
    auto z = run("zeta --gram " + data("a2.json") + " --primes 2,3 --order 4 --format json");
    CHECK(z.status == 0);
    auto zj = nlohmann::json::parse(z.out);
    CHECK(zj["global"]["factors"].size() == 2);
    CHECK(zj["local"]["2"][2] == "2 @1");
    auto t = run("theta --gram " + data("a2.json") + " --bound 1 --float");
    CHECK(t.out.find("0\t1/1\t6.000000+0.000000i") != std::string::npos);
    auto e = run("eigen --gram " + data("a2.json") + " --primes 2 --depth 2");
    CHECK(e.out.find("2\t2\t6 @1") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("fqm --gram " + data("broken.json")).status == 2);
    CHECK(run("fqm --gram " + data("nonsquare.json")).status == 2);
    CHECK(run("fqm --gram " + data("missing.json")).status == 2);
    CHECK(run("fqm").status == 2);
    CHECK(run("nonsense").status == 2);
    CHECK(run("hecke --gram " + data("a2.json") + " -p 4").status == 2);
    CHECK(run("satake --gram " + data("hyperbolic3.json") + " -p 3 --kl 0,2").status == 3);
    CHECK(run("theta --gram " + data("hyperbolic3.json")).status == 3);
}
