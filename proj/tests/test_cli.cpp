#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dupdel/cli.hpp"
#include "dupdel/report_io.hpp"
#include "dupdel/snapshot_io.hpp"

using namespace dupdel;
using namespace dupdel::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("dupdel_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ignored;
        fs::remove_all(path, ignored);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_binary(const std::string& args, const std::string& stderr_path) {
    const std::string cmd = std::string(DUPDEL_CLI_PATH) + " " + args + " > /dev/null 2> " + stderr_path;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured run_config(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig theory_config(double p) {
    RunConfig c;
    c.command = Command::Theory;
    c.p = p;
    return c;
}

}  // namespace

TEST_CASE("counts parse exactly in plain and scientific notation") {
    CHECK(parse_count("1000000", "--steps") == 1000000);
    CHECK(parse_count("1e6", "--steps") == 1000000);
    CHECK(parse_count("1E6", "--steps") == 1000000);
    CHECK(parse_count("2.5e3", "--steps") == 2500);
    CHECK(parse_count("1.0e1", "--steps") == 10);
    CHECK(parse_count("1e+3", "--steps") == 1000);
    CHECK(parse_count("0", "--seed") == 0);
    CHECK(parse_count("18446744073709551615", "--seed") == 18446744073709551615ULL);
    CHECK(parse_count("1e19", "--seed") == 10000000000000000000ULL);
}

TEST_CASE("malformed counts name the flag") {
    for (const char* bad : {"", "abc", "-5", "0.5", "2.55e1", "1e20", "18446744073709551616", "1e-3", "1,000", " 5"}) {
        CAPTURE(bad);
        try {
            parse_count(bad, "--steps");
            FAIL("accepted");
        } catch (const UsageError& e) {
            CHECK(std::string(e.what()).rfind("--steps: ", 0) == 0);
        }
    }
}

TEST_CASE("checkpoint lists") {
    CHECK(parse_checkpoints("1e3,1e4,1e5,1e6") == std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
    CHECK(parse_checkpoints("7") == std::vector<std::uint64_t>{7});
    CHECK_THROWS_AS(parse_checkpoints("1e3,,1e4"), UsageError);
    CHECK_THROWS_AS(parse_checkpoints("1e3,"), UsageError);
}

TEST_CASE("validation names the offending flag") {
    auto flag_of = [](const RunConfig& c) {
        try {
            validate(c);
        } catch (const UsageError& e) {
            const std::string what = e.what();
            return what.substr(0, what.find(':'));
        }
        return std::string();
    };
    RunConfig sim;
    sim.command = Command::Simulate;
    sim.steps = 100;
    CHECK(flag_of(sim).empty());

    RunConfig c = sim;
    c.p = 1.0;
    CHECK(flag_of(c) == "--p");
    c = sim;
    c.p = 0.0;
    CHECK(flag_of(c) == "--p");
    c = sim;
    c.steps = 0;
    CHECK(flag_of(c) == "--steps");
    c = sim;
    c.checkpoints = {50, 20};
    CHECK(flag_of(c) == "--checkpoints");
    c = sim;
    c.checkpoints = {50, 200};
    CHECK(flag_of(c) == "--checkpoints");
    c = sim;
    c.replicas = 0;
    CHECK(flag_of(c) == "--replicas");
    c = sim;
    c.K = 1;
    CHECK(flag_of(c) == "--K");
    c = sim;
    c.tol = 0.0;
    CHECK(flag_of(c) == "--tol");

    RunConfig theory = theory_config(0.5);
    CHECK(flag_of(theory).empty());
}

TEST_CASE("run maps validation failures to exit code 1") {
    RunConfig c = theory_config(1.0);
    const Captured r = run_config(c);
    CHECK(r.code == kValidation);
    CHECK(r.err.find("--p") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("theory table at p = 1/2") {
    RunConfig c = theory_config(0.5);
    c.K = 100;
    const Captured r = run_config(c);
    REQUIRE(r.code == kSuccess);
    std::istringstream in(r.out);
    std::string header, columns, first;
    std::getline(in, header);
    std::getline(in, columns);
    std::getline(in, first);
    CHECK(header.find("regime=critical") != std::string::npos);
    CHECK(header.find("K=100") != std::string::npos);
    CHECK(columns == "k,d_k,c_k,asymptotic_k");
    const double d1 = std::stod(first.substr(first.find(',') + 1));
    CHECK(d1 == doctest::Approx(0.403653).epsilon(1e-6));
}

TEST_CASE("theory table at p = 0.75 records beta and gamma") {
    RunConfig c = theory_config(0.75);
    c.K = 200;
    const Captured r = run_config(c);
    REQUIRE(r.code == kSuccess);
    CHECK(r.out.find("beta=1.5 gamma=0.333333") != std::string::npos);
}

TEST_CASE("theory at p = 0.25 uses the tail rule and decreases") {
    const Captured r = run_config(theory_config(0.25));
    REQUIRE(r.code == kSuccess);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.find("K=" + std::to_string(choose_truncation(0.25))) != std::string::npos);
    std::getline(in, line);
    double prev = 2.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string k, d;
        std::getline(row, k, ',');
        std::getline(row, d, ',');
        const double value = std::stod(d);
        CHECK(value > 0.0);
        if (rows > 0) CHECK(value < prev);
        prev = value;
        ++rows;
    }
    CHECK(rows == choose_truncation(0.25));
}

TEST_CASE("simulate writes checkpoints atomically and reproducibly") {
    TempDir dir;
    RunConfig c;
    c.command = Command::Simulate;
    c.p = 0.75;
    c.steps = 100000;
    c.seed = 7;
    c.checkpoints = {1000, 10000, 100000};
    c.output_path = dir.file("a.csv");
    const Captured first = run_config(c);
    REQUIRE(first.code == kSuccess);
    CHECK(first.out.find("growth_ratio=") != std::string::npos);
    CHECK_FALSE(fs::exists(c.output_path + ".tmp"));
    const std::string text = slurp(c.output_path);
    std::istringstream in(text);
    const auto snaps = read_snapshots_csv(in);
    REQUIRE(snaps.size() == 3);
    CHECK(snaps.back().m == 100000);

    c.output_path = dir.file("b.csv");
    REQUIRE(run_config(c).code == kSuccess);
    CHECK(slurp(c.output_path) == text);

    c.format = Format::Json;
    c.output_path = dir.file("a.json");
    REQUIRE(run_config(c).code == kSuccess);
    const auto j = nlohmann::json::parse(slurp(c.output_path));
    REQUIRE(j.size() == 3);
    CHECK(snapshot_from_json(j[2]) == snaps[2]);
}

TEST_CASE("unwritable output maps to exit code 3") {
    RunConfig c = theory_config(0.6);
    c.K = 10;
    c.output_path = "/nonexistent-dir/sub/out.csv";
    const Captured r = run_config(c);
    CHECK(r.code == kIo);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("compare emits reports that round-trip") {
    TempDir dir;
    RunConfig c;
    c.command = Command::Compare;
    c.p = 0.25;
    c.steps = 200000;
    c.seed = 3;
    c.checkpoints = {20000, 200000};
    c.replicas = 2;
    c.format = Format::Json;
    c.output_path = dir.file("r.json");
    const Captured r = run_config(c);
    REQUIRE(r.code == kSuccess);
    CHECK(r.out.find("K=") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(c.output_path));
    CHECK(j.at("K") == choose_truncation(0.25));
    REQUIRE(j.at("replicas").size() == 2);
    CHECK(j.at("replicas")[1].at("seed") == replica_seed(3, 1));
    for (const auto& rep : j.at("replicas")) {
        REQUIRE(rep.at("reports").size() == 2);
        for (const auto& report : rep.at("reports")) {
            const ComparisonReport back = report_from_json(report);
            CHECK(report_to_json(back) == report);
            CHECK(back.tv_distance < 0.05);
        }
    }
    const std::string first = slurp(c.output_path);
    REQUIRE(run_config(c).code == kSuccess);
    CHECK(slurp(c.output_path) == first);
}

TEST_CASE("oracle check") {
    RunConfig c;
    c.command = Command::OracleCheck;
    c.p = 0.6;
    Captured r = run_config(c);
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("quadrature vs hypergeometric") != std::string::npos);
    CHECK(r.out.find("quadrature vs backward_recursion") != std::string::npos);
    CHECK(r.out.find("quadrature vs fixed_point") != std::string::npos);

    c.p = 0.5;
    r = run_config(c);
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("quadrature vs backward_recursion") != std::string::npos);
    CHECK(r.out.find("hypergeometric") == std::string::npos);

    c.p = 0.6;
    c.threshold = 1e-300;
    r = run_config(c);
    CHECK(r.code == kNumeric);
    CHECK(r.out.find("BREACH") != std::string::npos);
}

TEST_CASE("asymptotics table") {
    RunConfig c = theory_config(0.75);
    c.command = Command::Asymptotics;
    c.K = 2000;
    const Captured r = run_config(c);
    REQUIRE(r.code == kSuccess);
    CHECK(r.out.find("k,d_k,asymptotic_k,ratio") != std::string::npos);
    const std::string last = r.out.substr(r.out.rfind("2000,"));
    const double ratio = std::stod(last.substr(last.rfind(',') + 1));
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("binary: usage errors exit 1 and name the flag") {
    TempDir dir;
    const std::string err = dir.file("err.txt");
    CHECK(run_binary("theory --p 1.0", err) == 1);
    CHECK(slurp(err).find("--p") != std::string::npos);
    CHECK(run_binary("simulate --p 0.5 --steps 2.5", err) == 1);
    CHECK(slurp(err).find("--steps") != std::string::npos);
    CHECK(run_binary("theory --format xml", err) == 1);
    CHECK(slurp(err).find("--format") != std::string::npos);
    CHECK(run_binary("theory --bogus 3", err) == 1);
    CHECK(run_binary("", err) == 1);
}

TEST_CASE("binary: identical invocations give identical files") {
    TempDir dir;
    const std::string err = dir.file("err.txt");
    const std::string args = "simulate --p 0.75 --steps 1000000 --seed 7 --checkpoints 1e3,1e4,1e5,1e6 --out ";
    REQUIRE(run_binary(args + dir.file("a.csv"), err) == 0);
    REQUIRE(run_binary(args + dir.file("b.csv"), err) == 0);
    const std::string a = slurp(dir.file("a.csv"));
    CHECK(a == slurp(dir.file("b.csv")));
    std::istringstream in(a);
    const auto snaps = read_snapshots_csv(in);
    REQUIRE(snaps.size() == 4);
    std::set<std::uint64_t> ms;
    for (const auto& s : snaps) ms.insert(s.m);
    CHECK(ms == std::set<std::uint64_t>{1000, 10000, 100000, 1000000});
}

TEST_CASE("binary: oracle check exit status") {
    TempDir dir;
    const std::string err = dir.file("err.txt");
    CHECK(run_binary("oracle-check --p 0.6", err) == 0);
    CHECK(run_binary("oracle-check --p 0.6 --threshold 1e-300", err) == 2);
}
