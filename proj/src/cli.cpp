#include "dupdel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

#include "dupdel/analysis.hpp"
#include "dupdel/errors.hpp"
#include "dupdel/process.hpp"
#include "dupdel/report_io.hpp"
#include "dupdel/rng.hpp"
#include "dupdel/snapshot_io.hpp"
#include "dupdel/theory_io.hpp"

namespace dupdel::cli {

std::uint64_t parse_count(std::string_view text, std::string_view flag) {
    static const std::regex pattern(R"(^([0-9]+)(?:\.([0-9]+))?(?:[eE]\+?([0-9]+))?$)");
    const std::string s(text);
    std::smatch match;
    if (!std::regex_match(s, match, pattern)) {
        throw UsageError(flag, "'" + s + "' is not a non-negative integer");
    }
    std::string digits = match[1].str() + match[2].str();
    const std::size_t frac_len = match[2].length();
    std::size_t exponent = 0;
    if (match[3].matched) {
        if (match[3].length() > 3) throw UsageError(flag, "'" + s + "' is out of range");
        exponent = std::stoul(match[3].str());
    }
    if (exponent >= frac_len) {
        digits.append(exponent - frac_len, '0');
    } else {
        const std::size_t drop = frac_len - exponent;
        if (digits.find_first_not_of('0', digits.size() - drop) != std::string::npos) {
            throw UsageError(flag, "'" + s + "' is not an integer");
        }
        digits.resize(digits.size() - drop);
    }
    std::uint64_t value = 0;
    for (const char ch : digits) {
        const auto d = static_cast<std::uint64_t>(ch - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
            throw UsageError(flag, "'" + s + "' is out of range");
        }
        value = value * 10 + d;
    }
    return value;
}

std::vector<std::uint64_t> parse_checkpoints(std::string_view text) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        out.push_back(parse_count(text.substr(start, comma - start), "--checkpoints"));
        start = comma + 1;
    }
    return out;
}

void validate(const RunConfig& config) {
    if (!(config.p > 0.0 && config.p < 1.0)) {
        throw UsageError("--p", "must lie strictly between 0 and 1");
    }
    if (config.K && *config.K < 2) throw UsageError("--K", "must be at least 2");
    if (config.K && *config.K > kMaxTruncation) {
        throw UsageError("--K", "must not exceed " + std::to_string(kMaxTruncation));
    }
    if (!(config.tol > 0.0) || config.tol >= 1.0) throw UsageError("--tol", "must lie in (0, 1)");
    if (config.replicas == 0) throw UsageError("--replicas", "must be at least 1");
    if (!(config.threshold > 0.0)) throw UsageError("--threshold", "must be positive");
    const bool runs = config.command == Command::Simulate || config.command == Command::Compare;
    if (runs) {
        if (config.steps == 0) throw UsageError("--steps", "must be a positive integer");
        for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
            const auto c = config.checkpoints[i];
            if (c == 0 || c > config.steps) {
                throw UsageError("--checkpoints", "entries must lie in [1, --steps]");
            }
            if (i > 0 && c <= config.checkpoints[i - 1]) {
                throw UsageError("--checkpoints", "entries must be strictly increasing");
            }
        }
    }
}

void write_output(const std::string& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        fallback.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
        body(out);
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(temp, ignored);
            throw IoError("write to '" + temp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw IoError("cannot move output into '" + path + "': " + ec.message());
    }
}

namespace {

std::vector<std::uint64_t> checkpoints_or_final(const RunConfig& config) {
    if (!config.checkpoints.empty()) return config.checkpoints;
    return {config.steps};
}

std::size_t truncation_for(const RunConfig& config) {
    return config.K ? *config.K : choose_truncation(config.p);
}

std::ostream& precise(std::ostream& os) {
    os.precision(std::numeric_limits<double>::max_digits10);
    return os;
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& console) {
    const ProcessParams params(config.p, config.seed);
    const auto checkpoints = checkpoints_or_final(config);
    std::vector<Snapshot> snapshots;
    const CliqueState final_state = simulate(params, config.steps, checkpoints,
                                             [&](const Snapshot& s) { snapshots.push_back(s); });
    write_output(config.output_path, console, [&](std::ostream& out) {
        if (config.format == Format::Json) {
            out << snapshots_to_json(snapshots).dump(2) << '\n';
        } else {
            write_snapshots_csv(out, snapshots);
        }
    });
    if (!config.output_path.empty()) {
        precise(console) << "m=" << final_state.step_index() << " n_vertices=" << final_state.num_vertices()
                         << " growth_ratio=" << growth_rate_check(final_state, config.p) << '\n';
    }
    return kSuccess;
}

int cmd_theory(const RunConfig& config, std::ostream& console) {
    const DegreeDistribution dist = degree_distribution(config.p, truncation_for(config), config.tol);
    write_output(config.output_path, console, [&](std::ostream& out) {
        if (config.format == Format::Json) {
            out << theory_to_json(dist).dump(2) << '\n';
        } else {
            write_theory_csv(out, dist);
        }
    });
    if (!config.output_path.empty()) console << theory_header_line(dist) << '\n';
    return kSuccess;
}

int cmd_compare(const RunConfig& config, std::ostream& console) {
    const DegreeDistribution theory = degree_distribution(config.p, truncation_for(config), config.tol);
    const ProcessParams params(config.p, config.seed);
    const auto checkpoints = checkpoints_or_final(config);
    std::vector<std::vector<ComparisonReport>> traces;
    if (config.replicas == 1) {
        traces.push_back(convergence_trace(params, theory, checkpoints));
    } else {
        traces = replica_traces(params, theory, checkpoints, config.replicas);
    }
    std::vector<double> mean_tv(checkpoints.size(), 0.0);
    for (const auto& trace : traces) {
        for (std::size_t i = 0; i < trace.size(); ++i) mean_tv[i] += trace[i].tv_distance;
    }
    for (double& v : mean_tv) v /= static_cast<double>(traces.size());

    write_output(config.output_path, console, [&](std::ostream& out) {
        if (config.format == Format::Csv) {
            write_reports_csv(out, traces);
            return;
        }
        nlohmann::json j;
        j["p"] = config.p;
        j["seed"] = config.seed;
        j["steps"] = config.steps;
        j["K"] = theory.truncation();
        j["tol"] = config.tol;
        nlohmann::json reps = nlohmann::json::array();
        for (std::size_t i = 0; i < traces.size(); ++i) {
            nlohmann::json reports = nlohmann::json::array();
            for (const auto& r : traces[i]) reports.push_back(report_to_json(r));
            const std::uint64_t seed =
                config.replicas == 1 ? config.seed : replica_seed(config.seed, i);
            reps.push_back({{"replica", i}, {"seed", seed}, {"reports", std::move(reports)}});
        }
        j["replicas"] = std::move(reps);
        nlohmann::json summary = nlohmann::json::array();
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            summary.push_back({{"m", checkpoints[i]}, {"mean_tv_distance", mean_tv[i]}});
        }
        j["mean_tv"] = std::move(summary);
        out << j.dump(2) << '\n';
    });
    if (!config.output_path.empty()) {
        precise(console);
        console << "K=" << theory.truncation() << " replicas=" << traces.size() << '\n';
        for (std::size_t i = 0; i < checkpoints.size(); ++i) {
            console << "m=" << checkpoints[i] << " mean_tv=" << mean_tv[i] << '\n';
        }
        const auto& last = traces.front().back();
        console << "growth_ratio=" << last.growth_ratio;
        if (last.fitted_exponent) console << " fitted_exponent=" << *last.fitted_exponent;
        if (last.fitted_rate) console << " fitted_rate=" << *last.fitted_rate;
        console << '\n';
    }
    return kSuccess;
}

int cmd_asymptotics(const RunConfig& config, std::ostream& console) {
    const std::size_t K = config.K ? *config.K : 1000;
    const DegreeDistribution dist = degree_distribution(config.p, K, config.tol);
    std::vector<std::size_t> grid;
    for (std::size_t k = 1; k < K; k *= 2) grid.push_back(k);
    grid.push_back(K);
    write_output(config.output_path, console, [&](std::ostream& out) {
        if (config.format == Format::Json) {
            nlohmann::json rows = nlohmann::json::array();
            for (const std::size_t k : grid) {
                const double a = asymptotic(config.p, static_cast<double>(k));
                rows.push_back({{"k", k}, {"d_k", dist.d(k)}, {"asymptotic_k", a}, {"ratio", dist.d(k) / a}});
            }
            out << nlohmann::json{{"p", config.p}, {"K", K}, {"rows", rows}}.dump(2) << '\n';
            return;
        }
        precise(out) << theory_header_line(dist) << '\n' << "k,d_k,asymptotic_k,ratio\n";
        for (const std::size_t k : grid) {
            const double a = asymptotic(config.p, static_cast<double>(k));
            out << k << ',' << dist.d(k) << ',' << a << ',' << dist.d(k) / a << '\n';
        }
    });
    return kSuccess;
}

int cmd_oracle_check(const RunConfig& config, std::ostream& console) {
    constexpr double kFixedPointThreshold = 1e-4;
    constexpr std::size_t kFixedPointIterations = 10'000;
    constexpr std::size_t kFixedPointMaxK = 20;
    const std::size_t K = config.K ? *config.K : 50;
    const RegimeParams rp = regime_params(config.p);

    struct Pair {
        std::string name;
        double deviation;
        double threshold;
    };
    std::vector<Pair> pairs;
    auto max_abs_diff = [](const DegreeDistribution& a, const DegreeDistribution& b) {
        double worst = 0.0;
        for (std::size_t k = 1; k <= a.truncation(); ++k) worst = std::max(worst, std::abs(a.d(k) - b.d(k)));
        return worst;
    };

    const DegreeDistribution quad = degree_distribution(config.p, K, config.tol);
    const DegreeDistribution back = degree_dist_backward(config.p, K);
    pairs.push_back({"quadrature vs backward_recursion", max_abs_diff(quad, back), config.threshold});
    if (rp.regime == Regime::Supercritical && std::abs(config.p - 0.5) > 1e-12) {
        const DegreeDistribution hyper = degree_dist_hypergeometric(config.p, K);
        pairs.push_back({"quadrature vs hypergeometric", max_abs_diff(quad, hyper), config.threshold});
        pairs.push_back({"backward_recursion vs hypergeometric", max_abs_diff(back, hyper), config.threshold});
    }
    const CliqueSizeDistribution lower =
        lower_bound_fixed_point(config.p, std::max<std::size_t>(8 * K, 400), kFixedPointIterations);
    const CliqueSizeDistribution quad_c = clique_sizes(quad);
    double fp_dev = 0.0;
    for (std::size_t k = 1; k <= std::min(K, kFixedPointMaxK); ++k) {
        fp_dev = std::max(fp_dev, std::abs(lower.c(k) - quad_c.c(k)));
    }
    pairs.push_back({"quadrature vs fixed_point", fp_dev, kFixedPointThreshold});

    bool ok = true;
    std::ostringstream text;
    precise(text) << "p=" << config.p << " regime=" << to_string(rp.regime) << " K=" << K << '\n';
    text.precision(3);
    for (const auto& pair : pairs) {
        const bool pass = pair.deviation <= pair.threshold;
        ok = ok && pass;
        text << (pass ? "ok     " : "BREACH ") << pair.name << ": max |diff| = " << std::scientific
             << pair.deviation << " (threshold " << pair.threshold << ")\n"
             << std::defaultfloat;
    }
    write_output(config.output_path, console, [&](std::ostream& out) { out << text.str(); });
    return ok ? kSuccess : kNumeric;
}

int run(const RunConfig& config, std::ostream& console, std::ostream& errors) {
    try {
        validate(config);
        switch (config.command) {
            case Command::Simulate: return cmd_simulate(config, console);
            case Command::Theory: return cmd_theory(config, console);
            case Command::Compare: return cmd_compare(config, console);
            case Command::Asymptotics: return cmd_asymptotics(config, console);
            case Command::OracleCheck: return cmd_oracle_check(config, console);
        }
    } catch (const UsageError& e) {
        errors << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const NonConvergence& e) {
        errors << "error: numeric non-convergence: " << e.what() << '\n';
        return kNumeric;
    } catch (const IoError& e) {
        errors << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        errors << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kSuccess;
}

}  // namespace dupdel::cli
