#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bdtw/generate.hpp"
#include "bdtw/rng.hpp"
#include "bdtw/series_io.hpp"
#include "bench_report.hpp"
#include "commands.hpp"

using namespace bdtw;
using bdtw::tools::run_cli;

namespace {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bdtw_cli_test_" + std::to_string(SplitMix64(reinterpret_cast<std::uintptr_t>(this)).next()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dist on bits and rle files") {
    TempDir dir;
    const auto x = dir.write("x.bits", "010\n");
    const auto y = dir.write("y.bits", "0\n");
    auto r = run({"dist", "--format", "bits", "--algo", "auto", x, y});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    const auto xr = dir.write("x.rle", "1*0 1*1 1*0\n");
    const auto yr = dir.write("y.rle", "1*0");
    r = run({"dist", "--format", "rle", "--algo", "auto", xr, yr});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    for (const char* algo : {"linear", "rle", "dp"}) {
        CHECK(run({"dist", "--algo", algo, x, y}).out == "1\n");
        CHECK(run({"dist", "--format", "rle", "--algo", algo, xr, yr}).out == "1\n");
    }
}

TEST_CASE("dist JSON record has a fixed field order") {
    TempDir dir;
    const auto x = dir.write("x", "00110\n");
    const auto y = dir.write("y", "01\n");
    const auto r = run({"dist", "--json", "--algo", "linear", x, y});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"value", "algorithm", "n", "m", "k", "l", "elapsed_ns"});
    CHECK(j["value"] == 1);
    CHECK(j["algorithm"] == "linear");
    CHECK(j["n"] == 5);
    CHECK(j["l"] == 2);
}

TEST_CASE("dist handles several lines per file") {
    TempDir dir;
    const auto x = dir.write("x", "010\n0101\r\n1\n");
    const auto y = dir.write("y", "0\n1010\n1\n");
    const auto r = run({"dist", x, y});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n2\n0\n");
    CHECK(run({"dist", x, dir.write("z", "0\n")}).code == 2);
}

TEST_CASE("dist error exit codes") {
    TempDir dir;
    const auto bad = dir.write("bad", "01a0\n");
    const auto good = dir.write("good", "0\n");
    auto r = run({"dist", bad, good});
    CHECK(r.code == 2);
    CHECK(r.err.find(bad + ":1:3") != std::string::npos);

    CHECK(run({"dist", "--format", "rle", dir.write("nc", "1*0 2*0\n"), dir.write("g", "1*0\n")}).code == 2);
    CHECK(run({"dist", dir.path.string() + "/missing", good}).code == 2);
    CHECK(run({"dist", "--algo", "quantum", good, good}).code == 2);
    CHECK(run({"dist", good}).code == 2);

    const auto huge = dir.write("huge.rle", "1099511627776*0 1*1\n");
    const auto one = dir.write("one.rle", "1*1\n");
    CHECK(run({"dist", "--format", "rle", "--algo", "linear", huge, one}).code == 3);
    CHECK(run({"dist", "--format", "rle", "--algo", "dp", huge, one}).code == 3);
    r = run({"dist", "--format", "rle", huge, one});
    CHECK(r.code == 0);
    CHECK(r.out == "1099511627776\n");
}

TEST_CASE("dist diagnostics") {
    TempDir dir;
    const auto x = dir.write("x", "0100110\n");
    const auto y = dir.write("y", "1\n");
    auto r = run({"dist", "--dump-instances", x, y});
    CHECK(r.code == 0);
    CHECK(r.err.find("shortcut 4") != std::string::npos);

    const auto a = dir.write("a", "4*0 1*1 4*0 2*1 3*0\n");
    const auto b = dir.write("b", "4*0 2*1 3*0\n");
    r = run({"dist", "--format", "rle", "--dump-instances", "--delta-trace", a, b});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    CHECK(r.err.find("pair 0 instance 0: s=3 r=1 offset=0 weights=1,4,2") != std::string::npos);
    CHECK(r.err.find("pair 0 delta-trace 0: 1") != std::string::npos);
}

TEST_CASE("selftest") {
    auto r = run({"selftest", "--max-len", "1", "--trials", "0", "--seed", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("exhaustive pairs checked: 4\n") != std::string::npos);

    r = run({"selftest", "--max-len", "5", "--trials", "200", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("failures: 0") != std::string::npos);

    CHECK(run({"selftest", "--max-len", "13"}).code == 2);
    CHECK(run({"selftest", "--max-len", "0"}).code == 2);
}

TEST_CASE("bench report shape and determinism") {
    auto r = run({"bench", "--gen", "uniform", "--sizes", "2^10,2^11,2^12", "--trials", "2", "--seed", "7",
                  "--algos", "linear", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["seed"] == 7);
    CHECK(j["rows"].size() == 3);
    for (const auto& row : j["rows"]) CHECK(row["algorithm"] == "linear");

    auto strip = [](nlohmann::json v) {
        for (auto& row : v["rows"]) row.erase("median_ns");
        return v.dump();
    };
    const auto again = run({"bench", "--gen", "uniform", "--sizes", "2^10,2^11,2^12", "--trials", "2", "--seed",
                            "7", "--algos", "linear", "--json"});
    CHECK(strip(j) == strip(nlohmann::json::parse(again.out)));

    r = run({"bench", "--gen", "alternating", "--sizes", "2^10", "--algos", "linear,dp,rle", "--trials", "1",
             "--json"});
    REQUIRE(r.code == 0);
    const auto alt = nlohmann::json::parse(r.out);
    REQUIRE(alt["rows"].size() == 3);
    CHECK(alt["rows"][0]["checksum"] == alt["rows"][1]["checksum"]);
    CHECK(alt["rows"][0]["checksum"] == alt["rows"][2]["checksum"]);

    r = run({"bench", "--gen", "few_runs:1000", "--sizes", "2^30", "--algos", "rle", "--trials", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("few_runs(1000)\t1073741824\trle_tree") != std::string::npos);

    CHECK(run({"bench", "--gen", "few_runs:1000", "--sizes", "2^30", "--algos", "linear", "--trials", "1"}).code ==
          3);
    CHECK(run({"bench", "--gen", "zipf", "--sizes", "10"}).code == 2);
    CHECK(run({"bench", "--gen", "uniform", "--sizes", "ten"}).code == 2);
}

TEST_CASE("generated series survive a text round trip") {
    for (const char* g : {"uniform", "biased:0.2", "few_runs:17", "alternating"}) {
        const GeneratorSpec spec = parse_generator(g);
        const BinarySeries x = generate_bits(spec, 300, 5);
        CHECK(x.size() == 300);
        CHECK(parse_bits(format_bits(x) + "\n").at(0) == x);
        const RleSeries r = generate_rle(spec, 300, 5);
        CHECK(r.total_length() == 300);
        CHECK(parse_rle(format_rle(r)).at(0) == r);
    }
    CHECK(generate_rle(parse_generator("few_runs(17)"), 300, 5).run_count() == 17);
}
