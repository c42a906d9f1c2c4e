#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracegraph/core/search_graph.hpp"
#include "tracegraph/core/trial.hpp"
#include "tracegraph/trace/parser.hpp"
#include "tracegraph/validator/report.hpp"

namespace tracegraph::validator {

struct Validation {
    std::optional<SearchGraph> graph;  // absent when the trace does not parse
    ValidationReport report;
    std::vector<trace::Diagnostic> diagnostics;
};

// Parses and executes `source`. A parse failure yields no graph and a single
// NonRunnable error whose detail lists the diagnostics.
Validation validate(std::string_view source);

struct RepairPolicy {
    int max_iterations = 5;
    double initial_temperature = 0.0;
    double temperature_step = 0.1;

    // Throws std::invalid_argument when max_iterations < 1 or the step is negative.
    void check() const;
};

struct PreviousAttempt {
    std::string source;
    ValidationReport report;
};

struct CodingRequest {
    const Trial& trial;
    int attempt = 1;  // 1-based
    double temperature = 0.0;
    // Set from the second attempt on: the trace just produced and its report.
    std::optional<PreviousAttempt> previous;
};

// Anything that turns a transcript into trace source: an LLM client, a
// scripted mock, a human-annotation replay. Implementations signal a dead
// backend by throwing CoderUnavailable.
class CoderBackend {
public:
    virtual ~CoderBackend() = default;
    virtual std::string name() const = 0;
    virtual std::string code(const CodingRequest& request) = 0;
};

struct Attempt {
    int number = 1;
    double temperature = 0.0;
    std::string source;
    Validation validation;

    std::size_t error_count() const { return validation.report.error_count(); }
};

struct CodingResult {
    std::string trial_id;
    std::string coder;
    std::vector<Attempt> attempts;
    std::size_t kept = 0;
    // Set when the backend became unavailable after at least one attempt.
    std::optional<std::string> interrupted;

    const Attempt& best() const { return attempts.at(kept); }
    std::vector<double> temperatures() const;
};

// Codes one trial, re-prompting with the validation report until the trace is
// clean or policy.max_iterations attempts were made. Keeps the attempt with
// the fewest errors (earliest on ties). After an attempt that does not beat
// the best error count so far the next temperature is raised by one step.
// Throws CoderUnavailable when the backend fails before any attempt succeeds.
CodingResult repair_loop(const Trial& trial, CoderBackend& coder, const RepairPolicy& policy = {});

}  // namespace tracegraph::validator
