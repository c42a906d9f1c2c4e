#include <algorithm>
#include <set>
#include <stdexcept>

#include "tracegraph/analytics/analytics.hpp"

namespace tracegraph::analytics {

std::string_view to_string(EdgeCategory c) {
    switch (c) {
        case EdgeCategory::Add: return "add";
        case EdgeCategory::Sub: return "sub";
        case EdgeCategory::Mul: return "mul";
        case EdgeCategory::Div: return "div";
        case EdgeCategory::Subgoal: return "subgoal";
    }
    return "?";
}

std::size_t OperationUsage::total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

OperationUsage operation_usage(const SearchGraph& graph, bool correct) {
    OperationUsage usage;
    usage.correct = correct;
    for (const auto& e : graph.op_edges()) ++usage.counts[static_cast<std::size_t>(e.op)];
    usage.counts[static_cast<std::size_t>(EdgeCategory::Subgoal)] = graph.subgoal_edges().size();
    return usage;
}

const UsageRow* UsageTable::find(bool correct) const {
    for (const auto& row : rows) {
        if (row.correct == correct) return &row;
    }
    return nullptr;
}

UsageTable operation_usage_summary(std::span<const CodedTrial> coded) {
    std::array<UsageRow, 2> acc{UsageRow{true, 0, {}}, UsageRow{false, 0, {}}};
    for (const auto& c : coded) {
        UsageRow& row = acc[c.trial.correct ? 0 : 1];
        auto usage = operation_usage(c.graph, c.trial.correct);
        ++row.trials;
        for (std::size_t i = 0; i < usage.counts.size(); ++i) row.mean[i] += static_cast<double>(usage.counts[i]);
    }
    UsageTable table;
    for (auto& row : acc) {
        if (row.trials == 0) continue;
        for (auto& m : row.mean) m /= static_cast<double>(row.trials);
        table.rows.push_back(row);
    }
    return table;
}

SubgoalSummary subgoal_summary(std::span<const CodedTrial> coded) {
    SubgoalSummary summary;
    std::array<SubgoalSuccessRow, 3> buckets{SubgoalSuccessRow{"0"}, SubgoalSuccessRow{"1"}, SubgoalSuccessRow{">1"}};
    for (const auto& c : coded) {
        std::set<GameState> distinct;
        for (const auto& e : c.graph.subgoal_edges()) distinct.insert(e.to);
        for (const auto& state : distinct) ++summary.counts[game24::classify_subgoal(state)];
        summary.total_subgoals += distinct.size();
        if (!distinct.empty()) ++summary.trials_with_subgoals;
        auto& bucket = buckets[std::min<std::size_t>(distinct.size(), 2)];
        ++bucket.trials;
        bucket.correct += c.trial.correct ? 1 : 0;
    }
    for (const auto& [type, n] : summary.counts) {
        summary.proportions[type] = static_cast<double>(n) / static_cast<double>(summary.total_subgoals);
    }
    for (auto& b : buckets) {
        if (b.trials == 0) continue;
        b.success_rate = static_cast<double>(b.correct) / static_cast<double>(b.trials);
        summary.success_by_count.push_back(b);
    }
    return summary;
}

ErrorCounts error_type_counts(const ValidationReport& report) {
    ErrorCounts counts;
    for (const auto& e : report.errors) {
        switch (e.kind) {
            case ErrorKind::WrongResult: ++counts.wrong_result; break;
            case ErrorKind::MissingOperand: ++counts.missing_operand; break;
            case ErrorKind::NonRunnable:
            case ErrorKind::MissingNode:
            case ErrorKind::DivisionByZero: ++counts.non_runnable; break;
        }
    }
    return counts;
}

std::map<std::string, ErrorCounts> error_type_counts(
    const std::map<std::string, std::vector<validator::CodingResult>>& results_by_backend) {
    std::map<std::string, ErrorCounts> out;
    for (const auto& [backend, results] : results_by_backend) {
        ErrorCounts& total = out[backend];
        for (const auto& r : results) {
            if (r.attempts.empty()) continue;
            auto c = error_type_counts(r.best().validation.report);
            total.non_runnable += c.non_runnable;
            total.wrong_result += c.wrong_result;
            total.missing_operand += c.missing_operand;
        }
    }
    return out;
}

DivisionReport division_failure_analysis(std::span<const CodedTrial> coded,
                                         const std::map<std::string, game24::ProblemClassification>& classifications,
                                         std::size_t n_permutations, std::uint64_t seed) {
    DivisionReport report;
    std::vector<double> required_outcomes;
    std::vector<double> other_outcomes;
    for (const auto& c : coded) {
        std::string key = problem_key(c.trial.problem);
        auto it = classifications.find(key);
        if (it == classifications.end()) throw std::invalid_argument("no classification for problem " + key);
        const auto& cls = it->second;
        if (!cls.solvable) {
            ++report.unsolvable_trials;
            continue;
        }
        double outcome = c.trial.correct ? 1.0 : 0.0;
        if (cls.division_required()) {
            ++report.division_required_trials;
            required_outcomes.push_back(outcome);
            if (c.trial.correct) {
                ++report.division_required_correct;
            } else {
                ++report.failed_division_required;
                bool tried = std::any_of(c.graph.op_edges().begin(), c.graph.op_edges().end(),
                                         [](const OperationEdge& e) { return e.op == Operator::Div; });
                if (!tried) ++report.never_tried_division;
            }
        } else {
            ++report.other_trials;
            other_outcomes.push_back(outcome);
            report.other_correct += c.trial.correct ? 1 : 0;
        }
    }
    auto rate = [](std::size_t k, std::size_t n) {
        return n == 0 ? std::nullopt : std::optional<double>(static_cast<double>(k) / static_cast<double>(n));
    };
    report.division_required_rate = rate(report.division_required_correct, report.division_required_trials);
    report.other_rate = rate(report.other_correct, report.other_trials);
    report.never_tried_fraction = rate(report.never_tried_division, report.failed_division_required);
    if (report.division_required_rate && report.other_rate) {
        report.gap = *report.other_rate - *report.division_required_rate;
        report.test = metrics::permutation_test(other_outcomes, required_outcomes, metrics::Statistic::MeanDiff,
                                                n_permutations, seed);
    }
    return report;
}

}  // namespace tracegraph::analytics
