#include "tdma/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "text_util.hpp"

namespace tdma {

TrafficInstance::TrafficInstance(std::size_t senders, std::size_t receivers, std::vector<Weight> weights,
                                 Weight setup_delay)
    : senders_(senders), receivers_(receivers), weights_(std::move(weights)), setup_delay_(setup_delay) {
    if (senders_ == 0 || receivers_ == 0) {
        throw std::invalid_argument("instance needs at least one sender and one receiver");
    }
    if (weights_.size() != senders_ * receivers_) {
        throw std::invalid_argument("weight matrix has " + std::to_string(weights_.size()) + " cells, expected " +
                                    std::to_string(senders_ * receivers_));
    }
    if (setup_delay_ < 0) {
        throw std::invalid_argument("setup delay must be nonnegative");
    }
    bool any_positive = false;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (weights_[k] < 0) {
            throw std::invalid_argument("negative weight at (" + std::to_string(k / receivers_) + "," +
                                        std::to_string(k % receivers_) + ")");
        }
        any_positive = any_positive || weights_[k] > 0;
    }
    if (!any_positive) {
        throw std::invalid_argument("traffic matrix is all zero");
    }
}

TrafficInstance TrafficInstance::from_rows(const std::vector<std::vector<Weight>>& rows, Weight setup_delay) {
    if (rows.empty()) {
        throw std::invalid_argument("traffic matrix has no rows");
    }
    const auto width = rows.front().size();
    std::vector<Weight> cells;
    cells.reserve(rows.size() * width);
    for (const auto& row : rows) {
        if (row.size() != width) {
            throw std::invalid_argument("ragged traffic matrix");
        }
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return {rows.size(), width, std::move(cells), setup_delay};
}

std::vector<std::vector<Weight>> TrafficInstance::rows() const {
    std::vector<std::vector<Weight>> out(senders_);
    for (std::size_t i = 0; i < senders_; ++i) {
        out[i].assign(weights_.begin() + static_cast<std::ptrdiff_t>(i * receivers_),
                      weights_.begin() + static_cast<std::ptrdiff_t>((i + 1) * receivers_));
    }
    return out;
}

std::size_t TrafficInstance::edge_count() const {
    return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](Weight w) { return w > 0; }));
}

TrafficInstance TrafficInstance::with_setup_delay(Weight setup_delay) const {
    return {senders_, receivers_, weights_, setup_delay};
}

namespace {

struct LineMaxima {
    std::int64_t delta = 0;
    Weight workload = 0;
};

LineMaxima line_maxima(std::span<const Weight> cells, std::size_t senders, std::size_t receivers) {
    std::vector<Weight> row_sum(senders, 0);
    std::vector<Weight> col_sum(receivers, 0);
    std::vector<std::int64_t> row_deg(senders, 0);
    std::vector<std::int64_t> col_deg(receivers, 0);
    for (std::size_t i = 0; i < senders; ++i) {
        for (std::size_t j = 0; j < receivers; ++j) {
            const auto w = cells[i * receivers + j];
            if (w > 0) {
                row_sum[i] += w;
                col_sum[j] += w;
                ++row_deg[i];
                ++col_deg[j];
            }
        }
    }
    return {std::max(*std::max_element(row_deg.begin(), row_deg.end()),
                     *std::max_element(col_deg.begin(), col_deg.end())),
            std::max(*std::max_element(row_sum.begin(), row_sum.end()),
                     *std::max_element(col_sum.begin(), col_sum.end()))};
}

}  // namespace

Weight residual_lower_bound(std::span<const Weight> cells, std::size_t senders, std::size_t receivers,
                            Weight setup_delay) {
    const auto maxima = line_maxima(cells, senders, receivers);
    return maxima.workload + setup_delay * maxima.delta;
}

InstanceStats compute_stats(const TrafficInstance& instance) {
    const auto maxima = line_maxima(instance.weights(), instance.senders(), instance.receivers());
    return {maxima.delta, maxima.workload, maxima.workload + instance.setup_delay() * maxima.delta};
}

TrafficInstance parse_instance(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) {
        throw ParseError("empty instance file");
    }
    const auto header = detail::split_tokens(lines[0]);
    if (header.size() != 3) {
        throw ParseError("line 1: header must be 'n m d'");
    }
    const auto n = detail::parse_integer(header[0], 1);
    const auto m = detail::parse_integer(header[1], 1);
    const auto d = detail::parse_integer(header[2], 1);
    if (n < 1 || m < 1) {
        throw ParseError("line 1: n and m must be positive");
    }
    if (d < 0) {
        throw ParseError("line 1: setup delay must be nonnegative");
    }
    if (lines.size() != static_cast<std::size_t>(n) + 1) {
        throw ParseError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size() - 1));
    }
    std::vector<Weight> cells;
    cells.reserve(static_cast<std::size_t>(n * m));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto tokens = detail::split_tokens(lines[r]);
        if (tokens.size() != static_cast<std::size_t>(m)) {
            throw ParseError("line " + std::to_string(r + 1) + ": expected " + std::to_string(m) + " values, found " +
                             std::to_string(tokens.size()));
        }
        for (const auto token : tokens) {
            const auto w = detail::parse_integer(token, r + 1);
            if (w < 0) {
                throw ParseError("line " + std::to_string(r + 1) + ": negative value " + std::to_string(w));
            }
            cells.push_back(w);
        }
    }
    try {
        return {static_cast<std::size_t>(n), static_cast<std::size_t>(m), std::move(cells), d};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string format_instance(const TrafficInstance& instance) {
    std::ostringstream out;
    out << instance.senders() << ' ' << instance.receivers() << ' ' << instance.setup_delay() << '\n';
    for (std::size_t i = 0; i < instance.senders(); ++i) {
        for (std::size_t j = 0; j < instance.receivers(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << instance.weight(i, j);
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

TrafficInstance read_instance_file(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

}  // namespace tdma
