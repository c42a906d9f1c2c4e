#include "tracegraph/validator/validator.hpp"

#include <limits>
#include <stdexcept>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/trace/execute.hpp"

namespace tracegraph::validator {

Validation validate(std::string_view source) {
    Validation out;
    auto parsed = trace::parse(source);
    if (auto* diagnostics = std::get_if<std::vector<trace::Diagnostic>>(&parsed)) {
        std::string detail;
        for (const auto& d : *diagnostics) {
            if (!detail.empty()) detail += "; ";
            detail += d.to_string();
        }
        out.report.errors.push_back(ValidationError{ErrorKind::NonRunnable, std::nullopt, std::nullopt, detail});
        out.diagnostics = std::move(*diagnostics);
        return out;
    }
    auto execution = trace::execute(std::get<trace::TraceProgram>(parsed));
    out.graph = std::move(execution.graph);
    out.report = std::move(execution.report);
    return out;
}

void RepairPolicy::check() const {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (!(temperature_step >= 0.0)) throw std::invalid_argument("temperature_step must be non-negative");
}

std::vector<double> CodingResult::temperatures() const {
    std::vector<double> out;
    out.reserve(attempts.size());
    for (const auto& a : attempts) out.push_back(a.temperature);
    return out;
}

CodingResult repair_loop(const Trial& trial, CoderBackend& coder, const RepairPolicy& policy) {
    policy.check();
    CodingResult result;
    result.trial_id = trial.trial_id;
    result.coder = coder.name();

    std::size_t best_errors = std::numeric_limits<std::size_t>::max();
    int raises = 0;
    for (int attempt = 1; attempt <= policy.max_iterations; ++attempt) {
        // initial + k * step rather than repeated addition, so each raise is exactly one step
        CodingRequest request{trial, attempt, policy.initial_temperature + raises * policy.temperature_step, {}};
        if (!result.attempts.empty()) {
            const Attempt& last = result.attempts.back();
            request.previous = PreviousAttempt{last.source, last.validation.report};
        }
        std::string source;
        try {
            source = coder.code(request);
        } catch (const CoderUnavailable& ex) {
            if (result.attempts.empty()) throw;
            result.interrupted = ex.what();
            break;
        }
        Attempt current{attempt, request.temperature, source, validate(source)};
        std::size_t errors = current.error_count();
        result.attempts.push_back(std::move(current));
        if (errors < best_errors) {
            best_errors = errors;
            result.kept = result.attempts.size() - 1;
        } else {
            ++raises;
        }
        if (errors == 0) break;
    }
    return result;
}

}  // namespace tracegraph::validator
