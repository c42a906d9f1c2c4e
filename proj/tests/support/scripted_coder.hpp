#pragma once

#include <string>
#include <vector>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/validator/validator.hpp"

namespace tracegraph::testing {

// Replays a fixed list of traces, one per attempt (the last one repeats), and
// records every request it saw. An entry equal to kUnavailable throws
// CoderUnavailable.
class ScriptedCoder : public validator::CoderBackend {
public:
    static inline const std::string kUnavailable = "<unavailable>";

    explicit ScriptedCoder(std::vector<std::string> script) : script_(std::move(script)) {}

    std::string name() const override { return "scripted"; }

    std::string code(const validator::CodingRequest& request) override {
        temperatures.push_back(request.temperature);
        had_previous.push_back(request.previous.has_value());
        if (request.previous) previous_error_counts.push_back(request.previous->report.error_count());
        const std::string& next = script_[std::min(calls++, script_.size() - 1)];
        if (next == kUnavailable) throw CoderUnavailable("scripted outage");
        return next;
    }

    std::size_t calls = 0;
    std::vector<double> temperatures;
    std::vector<bool> had_previous;
    std::vector<std::size_t> previous_error_counts;

private:
    std::vector<std::string> script_;
};

}  // namespace tracegraph::testing
