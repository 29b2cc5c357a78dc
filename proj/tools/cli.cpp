#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "tdma/algorithms.hpp"
#include "tdma/bench.hpp"
#include "tdma/instance.hpp"
#include "tdma/oracle.hpp"
#include "tdma/schedule.hpp"

namespace tdma::cli {

namespace {

namespace fs = std::filesystem;

struct ScheduleArgs {
    std::string algorithm;
    std::string input;
    std::string out;
};

struct ValidateArgs {
    std::string input;
    std::string schedule;
};

struct BenchArgs {
    std::size_t senders = 50;
    std::size_t receivers = 50;
    Weight wmin = 1;
    Weight wmax = 200;
    double density = 1.0;
    Weight dmin = 1;
    Weight dmax = 100;
    std::size_t instances = 100;
    std::string algorithms = "all";
    std::uint64_t seed = 0;
    std::string out = "results.csv";
};

struct OracleArgs {
    std::string input;
};

fs::path sibling(const fs::path& input, const std::string& suffix) {
    return input.parent_path() / (input.filename().string() + suffix);
}

/// `foo/results.csv` -> `foo/results.aggregates.csv`.
fs::path aggregates_path(const fs::path& records) {
    auto stem = records.stem().string();
    auto ext = records.extension().string();
    return records.parent_path() / (stem + ".aggregates" + (ext.empty() ? ".csv" : ext));
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
    if (text == "all") {
        return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    }
    std::vector<Algorithm> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto name = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto algorithm = parse_algorithm(name);
        if (!algorithm) {
            throw std::invalid_argument("unknown algorithm '" + name + "'");
        }
        if (std::find(out.begin(), out.end(), *algorithm) == out.end()) {
            out.push_back(*algorithm);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

int cmd_schedule(const ScheduleArgs& args, std::ostream& out, std::ostream& err) {
    const auto instance = read_instance_file(args.input);
    const auto algorithm = *parse_algorithm(args.algorithm);
    AlgorithmResult result;
    try {
        result = run_algorithm(algorithm, instance);
    } catch (const AlgorithmError& e) {
        err << "internal validation failure: " << e.what() << '\n';
        return kAlgorithmFailure;
    }
    const auto target = args.out.empty() ? sibling(args.input, "." + args.algorithm + ".schedule") : fs::path(args.out);
    write_text_file(target, format_schedule(result.schedule));
    out << "alg=" << args.algorithm << " frames=" << result.frames << " cost=" << result.cost
        << " lb=" << result.stats.lower_bound << " ratio=" << format_ratio(result.cost, result.stats.lower_bound)
        << '\n';
    return kOk;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out) {
    const auto instance = read_instance_file(args.input);
    const auto file = parse_schedule(read_text_file(args.schedule));
    auto violations = validate(file.schedule, instance).violations;
    const auto mismatches = check_declared_durations(file);
    violations.insert(violations.end(), mismatches.begin(), mismatches.end());
    if (violations.empty()) {
        out << "PASS makespan=" << makespan(file.schedule, instance.setup_delay()) << '\n';
        return kOk;
    }
    out << "FAIL violations=" << violations.size() << '\n';
    for (std::size_t k = 0; k < std::min<std::size_t>(10, violations.size()); ++k) {
        out << "  " << violations[k].describe() << '\n';
    }
    return kValidationFailed;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    if (args.dmin < 0 || args.dmin > args.dmax) {
        err << "bench needs 0 <= dmin <= dmax\n";
        return kInputError;
    }
    GenConfig config{args.senders, args.receivers, args.wmin, args.wmax, args.density, args.seed};
    std::vector<Weight> ds;
    for (auto d = args.dmin; d <= args.dmax; ++d) {
        ds.push_back(d);
    }
    std::vector<Algorithm> algorithms;
    try {
        algorithms = parse_algorithm_list(args.algorithms);
        generate(config);
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kInputError;
    }
    ExperimentResult result;
    try {
        result = run_experiment(config, ds, algorithms, args.instances);
    } catch (const ExperimentError& e) {
        err << "validation failure: " << e.what() << '\n';
        return kAlgorithmFailure;
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kInputError;
    }
    const fs::path records_path(args.out);
    const auto summary_path = aggregates_path(records_path);
    write_text_file(records_path, records_csv(result.records));
    write_text_file(summary_path, aggregates_csv(result.aggregates));
    out << "records=" << result.records.size() << " out=" << records_path.string()
        << " aggregates=" << summary_path.string() << '\n';
    return kOk;
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
    const auto instance = read_instance_file(args.input);
    OracleResult result;
    try {
        result = optimal_cost(instance);
    } catch (const OracleLimitError& e) {
        err << e.what() << '\n';
        return kOracleLimit;
    }
    write_text_file(sibling(args.input, ".opt.schedule"), format_schedule(result.schedule));
    out << "opt=" << result.cost << " lb=" << compute_stats(instance).lower_bound << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Preemptive TDMA packet-routing schedulers with setup delay", "tdmasched"};
    app.require_subcommand(1);

    ScheduleArgs schedule_args;
    auto* schedule = app.add_subcommand("schedule", "Schedule an instance with one algorithm");
    schedule->add_option("--alg", schedule_args.algorithm, "Algorithm")
        ->required()
        ->check(CLI::IsMember({"mga", "imga", "gwa", "apbs"}));
    schedule->add_option("--input", schedule_args.input, "Instance file")->required();
    schedule->add_option("--out", schedule_args.out, "Schedule file (default: <input>.<alg>.schedule)");

    ValidateArgs validate_args;
    auto* validate_cmd = app.add_subcommand("validate", "Check a schedule file against an instance");
    validate_cmd->add_option("--input", validate_args.input, "Instance file")->required();
    validate_cmd->add_option("--schedule", validate_args.schedule, "Schedule file")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run the ratio experiment on generated instances");
    bench->add_option("--senders", bench_args.senders)->capture_default_str();
    bench->add_option("--receivers", bench_args.receivers)->capture_default_str();
    bench->add_option("--wmin", bench_args.wmin)->capture_default_str();
    bench->add_option("--wmax", bench_args.wmax)->capture_default_str();
    bench->add_option("--density", bench_args.density)->capture_default_str();
    bench->add_option("--dmin", bench_args.dmin)->capture_default_str();
    bench->add_option("--dmax", bench_args.dmax)->capture_default_str();
    bench->add_option("--instances", bench_args.instances)->capture_default_str();
    bench->add_option("--algs", bench_args.algorithms, "Comma-separated list or 'all'")->capture_default_str();
    bench->add_option("--seed", bench_args.seed)->capture_default_str();
    bench->add_option("--out", bench_args.out, "Records CSV; aggregates go to <stem>.aggregates.csv")
        ->capture_default_str();

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Exact optimum for a tiny instance");
    oracle->add_option("--input", oracle_args.input, "Instance file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*schedule) {
            return cmd_schedule(schedule_args, out, err);
        }
        if (*validate_cmd) {
            return cmd_validate(validate_args, out);
        }
        if (*bench) {
            return cmd_bench(bench_args, out, err);
        }
        return cmd_oracle(oracle_args, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace tdma::cli
