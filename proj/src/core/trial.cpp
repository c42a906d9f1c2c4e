#include "tracegraph/core/trial.hpp"

#include <algorithm>

namespace tracegraph {

std::string_view to_string(Condition c) {
    return c == Condition::ThinkAloud ? "think_aloud" : "control";
}

std::optional<Condition> condition_from_string(std::string_view text) {
    if (text == "think_aloud") return Condition::ThinkAloud;
    if (text == "control") return Condition::Control;
    return std::nullopt;
}

std::string problem_key(const std::array<int, 4>& numbers) {
    auto sorted = numbers;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(sorted[i]);
    }
    return out;
}

}  // namespace tracegraph
