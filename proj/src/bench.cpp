#include "tdma/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <tuple>

namespace tdma {

TrafficInstance generate(const GenConfig& config, Weight setup_delay) {
    if (config.senders == 0 || config.receivers == 0) {
        throw std::invalid_argument("generator needs at least one sender and one receiver");
    }
    if (config.weight_min < 1 || config.weight_min > config.weight_max) {
        throw std::invalid_argument("generator needs 1 <= weight_min <= weight_max");
    }
    if (!(config.density > 0.0 && config.density <= 1.0)) {
        throw std::invalid_argument("generator density must lie in (0, 1]");
    }
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<Weight> weight(config.weight_min, config.weight_max);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<Weight> cells(config.senders * config.receivers, 0);
    for (auto& cell : cells) {
        if (config.density >= 1.0 || coin(rng) < config.density) {
            cell = weight(rng);
        }
    }
    if (std::all_of(cells.begin(), cells.end(), [](Weight w) { return w == 0; })) {
        cells[0] = weight(rng);
    }
    return {config.senders, config.receivers, std::move(cells), setup_delay};
}

ExperimentError::ExperimentError(Algorithm algorithm, std::uint64_t seed, Weight d, const std::string& what)
    : std::runtime_error(std::string(algorithm_name(algorithm)) + " seed=" + std::to_string(seed) +
                         " d=" + std::to_string(d) + ": " + what),
      algorithm_(algorithm), seed_(seed), d_(d) {}

ExperimentResult run_experiment(const GenConfig& generator, std::span<const Weight> d_values,
                                std::span<const Algorithm> algorithms, std::size_t trials,
                                const ExperimentOptions& options) {
    if (trials == 0) {
        throw std::invalid_argument("experiment needs at least one trial");
    }
    if (d_values.empty() || algorithms.empty()) {
        throw std::invalid_argument("experiment needs at least one d value and one algorithm");
    }

    // Collected instance-major, reordered to (d, instance, algorithm) at the end.
    struct Keyed {
        std::size_t d_index;
        std::size_t instance;
        std::size_t algorithm_index;
        RatioRecord record;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(trials * d_values.size() * algorithms.size());

    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto config = generator;
        config.seed = generator.seed + trial;
        const auto base = generate(config, d_values.front());

        std::vector<std::optional<Schedule>> fixed(algorithms.size());
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            if (depends_on_setup_delay(algorithms[a])) {
                continue;
            }
            try {
                fixed[a] = run_algorithm(algorithms[a], base).schedule;
            } catch (const std::exception& e) {
                throw ExperimentError(algorithms[a], config.seed, d_values.front(), e.what());
            }
        }

        for (std::size_t di = 0; di < d_values.size(); ++di) {
            const auto d = d_values[di];
            const auto instance = base.with_setup_delay(d);
            const auto stats = compute_stats(instance);
            std::optional<Weight> optimum;
            if (options.with_oracle) {
                optimum = optimal_cost(instance, options.oracle_limits).cost;
            }
            for (std::size_t a = 0; a < algorithms.size(); ++a) {
                Schedule schedule;
                try {
                    schedule = fixed[a] ? *fixed[a] : run_algorithm(algorithms[a], instance).schedule;
                } catch (const std::exception& e) {
                    throw ExperimentError(algorithms[a], config.seed, d, e.what());
                }
                if (const auto report = validate(schedule, instance); !report.passed()) {
                    throw ExperimentError(algorithms[a], config.seed, d,
                                          "invalid schedule: " + report.violations.front().describe());
                }
                RatioRecord record{algorithms[a], trial, d, makespan(schedule, d), stats.lower_bound, optimum};
                if (record.cost < stats.lower_bound) {
                    throw ExperimentError(algorithms[a], config.seed, d, "cost below the lower bound");
                }
                if (optimum && (*optimum < stats.lower_bound || *optimum > record.cost)) {
                    throw ExperimentError(algorithms[a], config.seed, d, "oracle optimum outside [LB, cost]");
                }
                keyed.push_back({di, trial, a, record});
            }
        }
    }

    std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
        return std::tie(x.d_index, x.instance, x.algorithm_index) < std::tie(y.d_index, y.instance, y.algorithm_index);
    });
    ExperimentResult result;
    result.records.reserve(keyed.size());
    for (auto& k : keyed) {
        result.records.push_back(k.record);
    }
    result.aggregates = aggregate(result.records, algorithms);
    return result;
}

std::vector<AggregateRecord> aggregate(std::span<const RatioRecord> records, std::span<const Algorithm> algorithms) {
    std::vector<AggregateRecord> out;
    for (const auto algorithm : algorithms) {
        std::vector<Weight> ds;
        for (const auto& r : records) {
            if (r.algorithm == algorithm && std::find(ds.begin(), ds.end(), r.d) == ds.end()) {
                ds.push_back(r.d);
            }
        }
        std::sort(ds.begin(), ds.end());
        for (const auto d : ds) {
            AggregateRecord agg{algorithm, d};
            double sum = 0.0;
            std::size_t count = 0;
            bool first = true;
            for (const auto& r : records) {
                if (r.algorithm != algorithm || r.d != d) {
                    continue;
                }
                sum += r.ratio();
                ++count;
                // Exact comparison: cost/lb > max_cost/max_lb.
                if (first || r.cost * agg.max_lower_bound > agg.max_cost * r.lower_bound) {
                    agg.max_cost = r.cost;
                    agg.max_lower_bound = r.lower_bound;
                    first = false;
                }
            }
            agg.mean_ratio = sum / static_cast<double>(count);
            out.push_back(agg);
        }
    }
    return out;
}

TrafficInstance adversarial_family(std::size_t delta, Weight heavy, Weight light, Weight setup_delay) {
    if (delta < 2) {
        throw std::invalid_argument("adversarial family needs delta >= 2");
    }
    if (light < 1 || heavy <= light) {
        throw std::invalid_argument("adversarial family needs heavy > light >= 1");
    }
    const auto k = delta;
    const auto side = 2 * k - 1;
    std::vector<Weight> cells(side * side, 0);
    for (std::size_t j = 0; j < k; ++j) {
        cells[j * side + j] = heavy;
        for (std::size_t v = k; v < side; ++v) {
            cells[j * side + v] = light;
        }
    }
    for (std::size_t u = k; u < side; ++u) {
        for (std::size_t c = 0; c < k; ++c) {
            cells[u * side + c] = light;
        }
    }
    return {side, side, std::move(cells), setup_delay};
}

std::string format_ratio(Weight cost, Weight lower_bound) {
    constexpr Weight kScale = 1'000'000;
    const auto scaled = (2 * cost * kScale + lower_bound) / (2 * lower_bound);
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%lld.%06lld", static_cast<long long>(scaled / kScale),
                  static_cast<long long>(scaled % kScale));
    return buffer;
}

namespace {

std::string format_fixed6(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

}  // namespace

std::string records_csv(std::span<const RatioRecord> records) {
    std::ostringstream out;
    out << "algorithm,instance,d,cost,lower_bound,ratio\n";
    for (const auto& r : records) {
        out << algorithm_name(r.algorithm) << ',' << r.instance << ',' << r.d << ',' << r.cost << ','
            << r.lower_bound << ',' << format_ratio(r.cost, r.lower_bound) << '\n';
    }
    return out.str();
}

std::string aggregates_csv(std::span<const AggregateRecord> aggregates) {
    std::ostringstream out;
    out << "algorithm,d,mean_ratio,max_ratio\n";
    for (const auto& a : aggregates) {
        out << algorithm_name(a.algorithm) << ',' << a.d << ',' << format_fixed6(a.mean_ratio) << ','
            << format_ratio(a.max_cost, a.max_lower_bound) << '\n';
    }
    return out.str();
}

}  // namespace tdma
