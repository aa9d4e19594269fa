#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kellyfreq/cli.hpp"

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"kellyfreq"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code =
        kellyfreq::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Pulls the number following "\"<key>\": " out of a JSON line.
double json_field(const std::string& text, const std::string& key) {
    const std::string needle = "\"" + key + "\": ";
    const std::size_t pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + needle.size(), nullptr);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("kellyfreq_test_" + name);
}

}  // namespace

TEST_CASE("optimize emits the single-period optimum as JSON") {
    const CliRun r = run({"optimize", "--bernoulli", "0.6,1", "--n", "1"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(json_field(r.out, "k_star") - 0.2) <= 1e-9);
    CHECK(std::abs(json_field(r.out, "g_star") - 0.020136) <= 1e-4);
    CHECK(r.out.find("\"boundary\": \"interior\"") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("sweep emits one csv row per waiting period") {
    const CliRun r = run({"sweep", "--bernoulli", "0.8,1", "--n-max", "10"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "n,k_star,g_star,e_star,theta,merged");
    double prev = 1e9;
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        // third column is g_star
        std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
        const double g = std::strtod(line.c_str() + c2 + 1, nullptr);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
    CHECK(rows == 10);
}

TEST_CASE("attract reports closed-form values for uniform supports") {
    const CliRun r = run({"attract", "--uniform", "-0.5,0.5"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(json_field(r.out, "theta") - 1.0986123) <= 1e-6);
    CHECK(r.out.find("\"satisfied\": false") != std::string::npos);
    CHECK(std::abs(json_field(r.out, "b_min") - 0.7564312) <= 1e-6);
}

TEST_CASE("attract reports inf theta for a total-loss atom") {
    const CliRun r = run({"attract", "--bernoulli", "0.6,1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"theta\": \"inf\"") != std::string::npos);
    CHECK(r.out.find("\"satisfied\": false") != std::string::npos);
}

TEST_CASE("costs table carries the source tag and best waiting period") {
    const CliRun r = run({"costs", "--epsilon", "0.1"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "# source=figure3");
    REQUIRE(std::getline(is, line));
    CHECK(line == "p,n,k_star,g_star,argmax_n");
    while (std::getline(is, line)) {
        CHECK(line.size() > 2);
        CHECK(line.substr(line.rfind(',') + 1) == "2");
    }
}

TEST_CASE("bmin table is monotone") {
    const CliRun r = run({"bmin"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# source=figure5");
    std::getline(is, line);
    CHECK(line == "abs_a,b_min");
    double prev = -1.0;
    while (std::getline(is, line)) {
        const double b = std::strtod(line.c_str() + line.find(',') + 1, nullptr);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("simulate is reproducible through the cli") {
    const CliRun a = run({"simulate", "--bernoulli", "0.6,1", "--k", "0.2", "--n", "1",
                          "--horizon", "1000", "--trials", "50", "--seed", "7"});
    const CliRun b = run({"simulate", "--bernoulli", "0.6,1", "--k", "0.2", "--n", "1",
                          "--horizon", "1000", "--trials", "50", "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"ruin_count\": 0") != std::string::npos);
}

TEST_CASE("conjectures reports the scan contingency") {
    const CliRun r = run({"conjectures", "--bernoulli", "0.8,0.5", "--n-max", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"violated\": false") != std::string::npos);
    CHECK(r.out.find("\"satisfied\": true") != std::string::npos);
    CHECK(r.out.find("\"flat\": true") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"optimize"}).code == 2);  // no distribution
    CHECK(run({"optimize", "--bernoulli", "0.6,1", "--uniform", "-0.2,1"}).code == 2);
    CHECK(run({"optimize", "--bernoulli", "abc"}).code == 2);
    CHECK(run({"optimize", "--bernoulli", "0.6"}).code == 2);
    CHECK(run({"optimize", "--bernoulli", "0.6,1", "--no-such-flag"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    const CliRun r = run({"optimize"});
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("domain errors exit with 1") {
    const CliRun r = run({"optimize", "--bernoulli", "1.5,1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);

    CHECK(run({"optimize", "--dist-file", "/no/such/file.csv"}).code == 1);
    CHECK(run({"simulate", "--bernoulli", "0.6,1", "--k", "0.2", "--n", "3",
               "--horizon", "10"}).code == 1);
}

TEST_CASE("help exits with 0") {
    CHECK(run({"--help"}).code == 0);
    const CliRun r = run({"optimize", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--bernoulli") != std::string::npos);
}

TEST_CASE("dumped distributions reproduce results exactly") {
    const std::filesystem::path path = temp_file("roundtrip.csv");
    const std::string path_str = path.string();

    const CliRun first = run({"optimize", "--bernoulli", "0.6,0.5", "--n", "3",
                              "--dump-dist", path_str.c_str()});
    REQUIRE(first.code == 0);

    const CliRun second = run({"optimize", "--dist-file", path_str.c_str(), "--n", "3"});
    REQUIRE(second.code == 0);
    CHECK(first.out == second.out);

    const CliRun sweep1 = run({"sweep", "--bernoulli", "0.6,0.5", "--n-max", "6"});
    const CliRun sweep2 = run({"sweep", "--dist-file", path_str.c_str(), "--n-max", "6"});
    CHECK(sweep1.out == sweep2.out);

    std::filesystem::remove(path);
}

TEST_CASE("output flag writes to a file instead of stdout") {
    const std::filesystem::path path = temp_file("outfile.json");
    const std::string path_str = path.string();
    const CliRun r = run({"optimize", "--bernoulli", "0.6,1", "--n", "2", "-o",
                          path_str.c_str()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(std::abs(json_field(content.str(), "k_star") - 0.44 / 3.0) <= 1e-9);
    std::filesystem::remove(path);
}

TEST_CASE("trajectory dump has the expected shape") {
    const std::filesystem::path path = temp_file("traj.csv");
    const std::string path_str = path.string();
    const CliRun r = run({"simulate", "--bernoulli", "0.6,0.5", "--k", "0.5", "--n", "2",
                          "--horizon", "6", "--trials", "2", "--seed", "3",
                          "--trajectories", path_str.c_str()});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "trial,step,v");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2 * (1 + 3));  // per trial: initial point + 3 blocks
    std::filesystem::remove(path);
}
