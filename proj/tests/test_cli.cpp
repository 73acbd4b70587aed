#include "doctest.h"

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using spectral::cli::run;
using nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("spectral_cli_test_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("levels") {
    const auto r = call({"levels", "--space", "sphere:2", "--lmax", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "l,lambda,mult\n0,0,1\n1,2,3\n2,6,5\n3,12,7\n");
    const auto j = call({"levels", "--space", "cp:4", "--lmax", "1", "--format", "json"});
    CHECK(j.code == 0);
    const auto doc = ordered_json::parse(j.out);
    CHECK(doc["levels"][1]["mult"] == 8);
    CHECK(doc["levels"][1]["lambda"] == 3);
}

TEST_CASE("eval prints exact and floating values side by side") {
    const auto r = call({"eval", "--space", "sphere:2", "--quantity", "R1", "15/4", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("15/4,9,9,9,9,true") != std::string::npos);
    CHECK(r.out.find("2,2,2,2,2,true") != std::string::npos);
    const auto n = call({"eval", "--space", "hemisphere-n:2", "--quantity", "N", "2"});
    CHECK(n.code == 0);
    CHECK(n.out.find("\n2,3,3,3,3,true") != std::string::npos);
}

TEST_CASE("verify exit codes") {
    const auto lower = call({"verify", "sphere:2", "s2.r1.lower"});
    CHECK(lower.code == 0);
    CHECK(lower.out.find("ok   s2.r1.lower") == 0);
    CHECK(lower.out.find("min slack 0 at z=2,") != std::string::npos);

    const auto polya = call({"verify", "hemisphere-d:3", "fail.hemi.polya.d≥3"});
    CHECK(polya.code == 0);
    CHECK(polya.out.find("first witness z=3") != std::string::npos);

    CHECK(call({"verify", "no.such.id"}).code == 2);
    CHECK(call({"verify", "torus:2", "s2.r1.lower"}).code == 2);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({"levels", "--space", "sphere:0"}).code == 2);
    CHECK(call({"levels", "--tol", "-1", "--space", "sphere:2"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"verify", "s2.r1.lower", "--tol", "0"}).code == 2);
}

TEST_CASE("verify writes JSON reports that round-trip") {
    TempDir tmp;
    const auto r = call({"verify", "s2.r1.upper", "fail.s1.weyl", "--out", tmp.path.string()});
    CHECK(r.code == 0);
    for (const char* name : {"s2.r1.upper.json", "fail.s1.weyl.json"}) {
        const std::string text = slurp(tmp.path / name);
        REQUIRE_FALSE(text.empty());
        const auto doc = ordered_json::parse(text);
        std::string again = doc.dump(2);
        if (text.back() == '\n') again += "\n";
        CHECK(again == text);
        CHECK(doc["pass"] == true);
    }
    const auto fail = ordered_json::parse(slurp(tmp.path / "fail.s1.weyl.json"));
    CHECK(fail["expected_valid"] == false);
    CHECK(fail["lower_violated"] == true);
    CHECK(fail["upper_violated"] == true);
}

TEST_CASE("sumrule") {
    const auto trace = call({"sumrule", "sphere:2", "trace", "--lmax", "1000"});
    CHECK(trace.code == 0);
    CHECK(trace.out.find("partial sum 0.99999") != std::string::npos);
    const auto pq = call({"sumrule", "cayley:16", "pq", "--lmax", "10"});
    CHECK(pq.code == 0);
    CHECK(pq.out.find("exact equality") != std::string::npos);
    const auto r2 = call({"sumrule", "rp:2", "r2"});
    CHECK(r2.code == 0);
    CHECK(r2.out.find("known failure") != std::string::npos);
    CHECK(call({"sumrule", "sphere:2", "bogus"}).code == 2);
    CHECK(call({"sumrule", "hemisphere-d:2", "pq"}).code == 2);
}

TEST_CASE("figure files") {
    TempDir tmp;
    const auto r = call({"figure", "f1", "--out", tmp.path.string(), "--points", "8", "--lmax", "10"});
    CHECK(r.code == 0);
    const std::string csv = slurp(tmp.path / "f1.csv");
    CHECK(csv.rfind("z,series_label,value\n", 0) == 0);
    CHECK(slurp(tmp.path / "f1.svg").find("<polyline") != std::string::npos);
    CHECK(call({"figure", "f99", "--out", tmp.path.string()}).code == 2);

    // same config, same bytes
    const auto again = call({"figure", "f1", "--out", tmp.path.string(), "--points", "8", "--lmax", "10"});
    CHECK(again.code == 0);
    CHECK(slurp(tmp.path / "f1.csv") == csv);
}

TEST_CASE("expansion") {
    const auto r = call({"expansion", "--space", "hemisphere-d:3", "--quantity", "N", "--terms", "3", "--lmax", "5",
                         "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = ordered_json::parse(r.out);
    CHECK(doc["series"].size() == 3);
    CHECK(call({"expansion", "--space", "cp:4", "--quantity", "N"}).code == 2);
    CHECK(call({"expansion", "--space", "sphere:2", "--quantity", "R1", "--terms", "3"}).code == 2);
}
