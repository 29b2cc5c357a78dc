#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdma/instance.hpp"

namespace tdma {

/// One sender-receiver transmission inside a frame.
struct Entry {
    std::size_t sender = 0;
    std::size_t receiver = 0;
    Weight amount = 0;

    friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// One switching-board state. Must be a matching with positive amounts to be feasible.
struct Frame {
    std::vector<Entry> entries;

    friend bool operator==(const Frame&, const Frame&) = default;
};

struct Schedule {
    std::vector<Frame> frames;

    [[nodiscard]] std::size_t frame_count() const { return frames.size(); }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Longest amount in the frame. Throws std::invalid_argument on an empty frame.
Weight frame_duration(const Frame& frame);

/// Sum of frame durations plus d per frame.
Weight makespan(const Schedule& schedule, Weight setup_delay);

enum class ViolationKind {
    EmptyFrame,
    IndexOutOfRange,
    SenderReused,
    ReceiverReused,
    NonPositiveAmount,
    UnderDelivery,
    OverDelivery,
    DurationMismatch,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    /// Absent for conservation violations, which concern the whole schedule.
    std::optional<std::size_t> frame;
    std::size_t sender = 0;
    std::size_t receiver = 0;
    Weight expected = 0;
    Weight actual = 0;

    [[nodiscard]] std::string describe() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool passed() const { return violations.empty(); }
};

/**
 * Checks that every frame is a non-empty matching with positive, in-range entries
 * and that per-pair delivered totals equal the instance weights exactly.
 * Every violation is reported, in frame order, followed by conservation breaches
 * in row-major pair order.
 */
ValidationReport validate(const Schedule& schedule, const TrafficInstance& instance);

/// Schedule text: `frames N`, then per frame `frame k duration t` and one `i j amount` line per entry.
std::string format_schedule(const Schedule& schedule);

/// A parsed schedule file keeps the durations it declared so they can be cross-checked.
struct ScheduleFile {
    Schedule schedule;
    std::vector<Weight> declared_durations;
};

/// Throws ParseError on structural problems. Negative amounts are accepted and left to the validator.
ScheduleFile parse_schedule(std::string_view text);

/// One DurationMismatch per frame whose declared duration differs from its entries.
std::vector<Violation> check_declared_durations(const ScheduleFile& file);

}  // namespace tdma
