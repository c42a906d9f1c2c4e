#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace tracegraph {

enum class Condition { ThinkAloud, Control };

std::string_view to_string(Condition c);
std::optional<Condition> condition_from_string(std::string_view text);

inline constexpr double kTrialTimeLimitSeconds = 180.0;

// One attempt by one participant at one problem.
struct Trial {
    std::string trial_id;
    std::string participant_id;
    std::array<int, 4> problem{};
    std::string transcript;
    std::optional<std::string> response;
    double response_time_s = 0.0;
    bool correct = false;
    Condition condition = Condition::ThinkAloud;
    // Participants see problems in stimulus groups; used by split-half sampling.
    std::string stimulus_group;

    friend bool operator==(const Trial&, const Trial&) = default;
};

// Sorted, space separated problem numbers, e.g. "3 3 8 8".
std::string problem_key(const std::array<int, 4>& numbers);

}  // namespace tracegraph
