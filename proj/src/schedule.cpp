#include "tdma/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "text_util.hpp"

namespace tdma {

Weight frame_duration(const Frame& frame) {
    if (frame.entries.empty()) {
        throw std::invalid_argument("frame has no entries");
    }
    return std::max_element(frame.entries.begin(), frame.entries.end(),
                            [](const Entry& a, const Entry& b) { return a.amount < b.amount; })
        ->amount;
}

Weight makespan(const Schedule& schedule, Weight setup_delay) {
    Weight total = 0;
    for (const auto& frame : schedule.frames) {
        total += frame_duration(frame);
    }
    return total + setup_delay * static_cast<Weight>(schedule.frame_count());
}

std::string_view violation_kind_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::EmptyFrame:
            return "empty-frame";
        case ViolationKind::IndexOutOfRange:
            return "index-out-of-range";
        case ViolationKind::SenderReused:
            return "sender-reused";
        case ViolationKind::ReceiverReused:
            return "receiver-reused";
        case ViolationKind::NonPositiveAmount:
            return "non-positive-amount";
        case ViolationKind::UnderDelivery:
            return "under-delivery";
        case ViolationKind::OverDelivery:
            return "over-delivery";
        case ViolationKind::DurationMismatch:
            return "duration-mismatch";
    }
    return "unknown";
}

std::string Violation::describe() const {
    std::ostringstream out;
    out << violation_kind_name(kind);
    if (frame) {
        out << " frame " << *frame;
    }
    switch (kind) {
        case ViolationKind::EmptyFrame:
            break;
        case ViolationKind::SenderReused:
            out << " sender " << sender;
            break;
        case ViolationKind::ReceiverReused:
            out << " receiver " << receiver;
            break;
        case ViolationKind::DurationMismatch:
            out << " declared " << actual << " computed " << expected;
            break;
        case ViolationKind::IndexOutOfRange:
        case ViolationKind::NonPositiveAmount:
            out << " pair (" << sender << "," << receiver << ") amount " << actual;
            break;
        case ViolationKind::UnderDelivery:
        case ViolationKind::OverDelivery:
            out << " pair (" << sender << "," << receiver << ") delivered " << actual << " expected " << expected;
            break;
    }
    return out.str();
}

ValidationReport validate(const Schedule& schedule, const TrafficInstance& instance) {
    const auto n = instance.senders();
    const auto m = instance.receivers();
    ValidationReport report;
    std::vector<Weight> delivered(n * m, 0);
    std::vector<std::size_t> sender_seen(n, 0);
    std::vector<std::size_t> receiver_seen(m, 0);

    for (std::size_t k = 0; k < schedule.frames.size(); ++k) {
        const auto& frame = schedule.frames[k];
        if (frame.entries.empty()) {
            report.violations.push_back({ViolationKind::EmptyFrame, k});
            continue;
        }
        // Stamp k + 1 marks "seen in frame k" without clearing between frames.
        const auto stamp = k + 1;
        for (const auto& e : frame.entries) {
            if (e.sender >= n || e.receiver >= m) {
                report.violations.push_back({ViolationKind::IndexOutOfRange, k, e.sender, e.receiver, 0, e.amount});
                continue;
            }
            if (e.amount <= 0) {
                report.violations.push_back({ViolationKind::NonPositiveAmount, k, e.sender, e.receiver, 0, e.amount});
            }
            if (sender_seen[e.sender] == stamp) {
                report.violations.push_back({ViolationKind::SenderReused, k, e.sender, e.receiver});
            }
            if (receiver_seen[e.receiver] == stamp) {
                report.violations.push_back({ViolationKind::ReceiverReused, k, e.sender, e.receiver});
            }
            sender_seen[e.sender] = stamp;
            receiver_seen[e.receiver] = stamp;
            delivered[e.sender * m + e.receiver] += e.amount;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto expected = instance.weight(i, j);
            const auto actual = delivered[i * m + j];
            if (actual < expected) {
                report.violations.push_back({ViolationKind::UnderDelivery, std::nullopt, i, j, expected, actual});
            } else if (actual > expected) {
                report.violations.push_back({ViolationKind::OverDelivery, std::nullopt, i, j, expected, actual});
            }
        }
    }
    return report;
}

std::string format_schedule(const Schedule& schedule) {
    std::ostringstream out;
    out << "frames " << schedule.frame_count() << '\n';
    for (std::size_t k = 0; k < schedule.frames.size(); ++k) {
        const auto& frame = schedule.frames[k];
        out << "frame " << k << " duration " << (frame.entries.empty() ? 0 : frame_duration(frame)) << '\n';
        for (const auto& e : frame.entries) {
            out << e.sender << ' ' << e.receiver << ' ' << e.amount << '\n';
        }
    }
    return out.str();
}

namespace {

std::size_t parse_index(std::string_view token, std::size_t line_no) {
    const auto value = detail::parse_integer(token, line_no);
    if (value < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": negative index");
    }
    return static_cast<std::size_t>(value);
}

}  // namespace

ScheduleFile parse_schedule(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) {
        throw ParseError("empty schedule file");
    }
    const auto header = detail::split_tokens(lines[0]);
    if (header.size() != 2 || header[0] != "frames") {
        throw ParseError("line 1: header must be 'frames N'");
    }
    const auto declared_count = parse_index(header[1], 1);

    ScheduleFile file;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto line_no = r + 1;
        const auto tokens = detail::split_tokens(lines[r]);
        if (tokens.size() == 4 && tokens[0] == "frame" && tokens[2] == "duration") {
            const auto index = parse_index(tokens[1], line_no);
            if (index != file.schedule.frames.size()) {
                throw ParseError("line " + std::to_string(line_no) + ": frame " + std::to_string(index) +
                                 " out of sequence");
            }
            file.schedule.frames.emplace_back();
            file.declared_durations.push_back(detail::parse_integer(tokens[3], line_no));
        } else if (tokens.size() == 3) {
            if (file.schedule.frames.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": entry before first frame");
            }
            file.schedule.frames.back().entries.push_back({parse_index(tokens[0], line_no),
                                                           parse_index(tokens[1], line_no),
                                                           detail::parse_integer(tokens[2], line_no)});
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unrecognised line");
        }
    }
    if (file.schedule.frames.size() != declared_count) {
        throw ParseError("header declares " + std::to_string(declared_count) + " frames, found " +
                         std::to_string(file.schedule.frames.size()));
    }
    return file;
}

std::vector<Violation> check_declared_durations(const ScheduleFile& file) {
    std::vector<Violation> out;
    for (std::size_t k = 0; k < file.schedule.frames.size(); ++k) {
        const auto& frame = file.schedule.frames[k];
        const auto computed = frame.entries.empty() ? 0 : frame_duration(frame);
        if (computed != file.declared_durations[k]) {
            out.push_back({ViolationKind::DurationMismatch, k, 0, 0, computed, file.declared_durations[k]});
        }
    }
    return out;
}

}  // namespace tdma
