#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apgeo/cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = apgeo::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("apgeo-test-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("nfun prints the n-value") {
    RunResult r = run_cli({"nfun", "--gamma", "2,1;1,1", "--prime", "5", "--r", "2",
                           "--no-cache"});
    CHECK(r.code == 0);
    CHECK(r.out == "25\n");
    RunResult brute = run_cli({"nfun", "--gamma", "2,1;1,1", "--prime", "5", "--r", "2",
                               "--brute", "--no-cache"});
    CHECK(brute.out == "25\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({"nfun", "--gamma", "2,1;1"}).code == 2);
    CHECK(run_cli({"progression", "--k", "2", "--gamma", "not-a-matrix", "--no-cache"}).code == 2);
    CHECK(run_cli({"bogus-subcommand"}).code == 2);
    CHECK(run_cli({"verify", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("progression, file output, and verify round trip") {
    TempDir tmp;
    std::string witness_path = (tmp.path / "w.json").string();
    RunResult built = run_cli({"progression", "--k", "3", "--gamma", "2,1;1,1", "--no-cache",
                               "--out", witness_path});
    REQUIRE(built.code == 0);
    auto j = nlohmann::json::parse(built.out);
    CHECK(j.at("C").get<std::string>() == "20");
    CHECK(j.at("primes").get<std::vector<long>>() == std::vector<long>{3, 5, 7});

    RunResult verified = run_cli({"verify", witness_path});
    CHECK(verified.code == 0);

    // tamper with one digit and watch verification fail
    auto tampered = nlohmann::json::parse(std::ifstream(witness_path));
    std::string entry = tampered["terms"][0]["theta"][0][0].get<std::string>();
    entry.back() = entry.back() == '9' ? '8' : '9';
    tampered["terms"][0]["theta"][0][0] = entry;
    std::string bad_path = (tmp.path / "tampered.json").string();
    std::ofstream(bad_path) << tampered.dump();
    RunResult failed = run_cli({"verify", bad_path});
    CHECK(failed.code == 1);
    CHECK(failed.err.find("FAILED") != std::string::npos);
}

TEST_CASE("contains pipeline via the CLI") {
    RunResult r = run_cli({"contains", "--k", "2", "--gamma", "6,1;5,1", "--no-cache"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("contains"));
    CHECK(j["contains"]["j"].get<std::string>() == "2");
}

TEST_CASE("warm cache reproduces cold-cache output byte for byte") {
    TempDir tmp;
    std::string cache_path = (tmp.path / "cache.jsonl").string();
    std::vector<std::string> args{"progression", "--k", "3", "--gamma", "2,1;1,1",
                                  "--cache", cache_path};
    RunResult cold = run_cli(args);
    REQUIRE(cold.code == 0);
    CHECK(std::filesystem::exists(cache_path));
    RunResult warm = run_cli(args);
    CHECK(warm.code == 0);
    CHECK(warm.out == cold.out);
    RunResult nocache = run_cli({"progression", "--k", "3", "--gamma", "2,1;1,1", "--no-cache"});
    CHECK(nocache.out == cold.out);
}

TEST_CASE("corrupt cache lines are skipped with a warning") {
    TempDir tmp;
    std::string cache_path = (tmp.path / "cache.jsonl").string();
    {
        std::ofstream f(cache_path);
        f << "this is not json\n";
        f << R"({"gamma_hash":"x","v":"not a number","r":1,"n_value":"5"})" << "\n";
    }
    RunResult r = run_cli({"nfun", "--gamma", "2,1;1,1", "--prime", "5", "--r", "1",
                           "--cache", cache_path});
    CHECK(r.code == 0);
    CHECK(r.out == "5\n");
}

TEST_CASE("vdw subcommand") {
    RunResult r = run_cli({"vdw", "--colors", "2", "--k", "3", "--cap", "20"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("w").get<int>() == 9);

    RunResult capped = run_cli({"vdw", "--colors", "3", "--k", "4", "--cap", "10"});
    CHECK(capped.code == 3);
}

TEST_CASE("density subcommand") {
    RunResult r = run_cli({"density", "--disc", "5", "--bound", "1000"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("primes").get<long>() == 168);
    CHECK(run_cli({"density", "--disc", "7", "--bound", "1000"}).code == 2);
}

TEST_CASE("kernel-check subcommand") {
    RunResult r = run_cli({"kernel-check", "--n", "2", "--p", "3", "--i", "1", "--exhaustive"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("pass").get<bool>());
}

TEST_CASE("absprim subcommand") {
    RunResult r = run_cli({"absprim", "--gamma", "2,1;1,1"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("absolutely_primitive").get<bool>());
    RunResult para = run_cli({"absprim", "--gamma", "1,1;0,1"});
    CHECK(para.code == 0);
    CHECK(nlohmann::json::parse(para.out).at("class").get<std::string>() == "parabolic");
}

TEST_CASE("transfer subcommand, and its output verifies") {
    TempDir tmp;
    std::string witness_path = (tmp.path / "w.json").string();
    REQUIRE(run_cli({"progression", "--k", "3", "--gamma", "2,1;1,1", "--no-cache", "--out",
                     witness_path})
                .code == 0);
    std::string map_path = (tmp.path / "map.json").string();
    std::ofstream(map_path) << "[[2,1],[1,3]]";
    std::string out_path = (tmp.path / "transferred.json").string();
    RunResult r = run_cli({"transfer", "--witness", witness_path, "--dm", "2", "--dmp", "3",
                           "--map", map_path, "--k", "3", "--no-cache", "--out", out_path});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("transfer").at("D").get<std::string>() == "6");
    CHECK(j.at("transfer").at("multipliers").size() == 3);
    // the transferred file still carries a verifiable witness
    CHECK(run_cli({"verify", out_path}).code == 0);
    // and contains-produced witnesses verify too
    std::string wc = (tmp.path / "wc.json").string();
    REQUIRE(run_cli({"contains", "--k", "2", "--gamma", "6,1;5,1", "--no-cache", "--out", wc})
                .code == 0);
    CHECK(run_cli({"verify", wc}).code == 0);
}

TEST_CASE("APGEO_CACHE environment variable sets the cache path") {
    TempDir tmp;
    std::string cache_path = (tmp.path / "env-cache.jsonl").string();
    setenv("APGEO_CACHE", cache_path.c_str(), 1);
    RunResult r = run_cli({"nfun", "--gamma", "2,1;1,1", "--prime", "5", "--r", "2"});
    unsetenv("APGEO_CACHE");
    CHECK(r.code == 0);
    CHECK(r.out == "25\n");
    CHECK(std::filesystem::exists(cache_path));
}
