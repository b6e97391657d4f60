#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dupdel/cli.hpp"

namespace {

using dupdel::cli::Command;
using dupdel::cli::RunConfig;

struct RawFlags {
    double p = 0.5;
    std::string steps;
    std::string seed = "1";
    std::string K;
    double tol = dupdel::kDefaultTolerance;
    std::string checkpoints;
    std::string replicas = "1";
    std::string out;
    std::string format = "csv";
    double threshold = 1e-8;
};

void add_common(CLI::App& sub, RawFlags& raw) {
    sub.add_option("--p", raw.p, "duplication probability in (0, 1)");
    sub.add_option("--K", raw.K, "truncation size (default: tail rule)");
    sub.add_option("--tol", raw.tol, "quadrature tolerance");
    sub.add_option("--out", raw.out, "output file (default: stdout)");
    sub.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_run(CLI::App& sub, RawFlags& raw) {
    sub.add_option("--steps", raw.steps, "number of steps")->required();
    sub.add_option("--seed", raw.seed, "base seed");
    sub.add_option("--checkpoints", raw.checkpoints, "comma-separated step indices");
}

RunConfig to_config(Command command, const RawFlags& raw) {
    using dupdel::cli::parse_count;
    RunConfig c;
    c.command = command;
    c.p = raw.p;
    if (!raw.steps.empty()) c.steps = parse_count(raw.steps, "--steps");
    c.seed = parse_count(raw.seed, "--seed");
    if (!raw.K.empty()) c.K = static_cast<std::size_t>(parse_count(raw.K, "--K"));
    c.tol = raw.tol;
    if (!raw.checkpoints.empty()) c.checkpoints = dupdel::cli::parse_checkpoints(raw.checkpoints);
    c.replicas = static_cast<std::size_t>(parse_count(raw.replicas, "--replicas"));
    c.output_path = raw.out;
    c.format = raw.format == "json" ? dupdel::cli::Format::Json : dupdel::cli::Format::Csv;
    c.threshold = raw.threshold;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Duplication-deletion random graph: simulation, exact theory, comparison"};
    app.require_subcommand(1);
    RawFlags raw;

    auto* simulate = app.add_subcommand("simulate", "run the process and write checkpoint snapshots");
    add_common(*simulate, raw);
    add_run(*simulate, raw);

    auto* theory = app.add_subcommand("theory", "write the limiting degree distribution table");
    add_common(*theory, raw);

    auto* compare = app.add_subcommand("compare", "simulate and compare against theory");
    add_common(*compare, raw);
    add_run(*compare, raw);
    compare->add_option("--replicas", raw.replicas, "independent seeded replicas");

    auto* asymptotics = app.add_subcommand("asymptotics", "exact values against asymptotic laws");
    add_common(*asymptotics, raw);

    auto* oracle = app.add_subcommand("oracle-check", "cross-check the independent solution methods");
    add_common(*oracle, raw);
    oracle->add_option("--threshold", raw.threshold, "largest allowed pairwise deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dupdel::cli::kValidation;
    }

    Command command = Command::Theory;
    if (*simulate) command = Command::Simulate;
    else if (*compare) command = Command::Compare;
    else if (*asymptotics) command = Command::Asymptotics;
    else if (*oracle) command = Command::OracleCheck;

    RunConfig config;
    try {
        config = to_config(command, raw);
    } catch (const dupdel::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dupdel::cli::kValidation;
    }
    return dupdel::cli::run(config, std::cout, std::cerr);
}
