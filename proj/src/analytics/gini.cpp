#include <algorithm>
#include <stdexcept>

#include "tracegraph/analytics/analytics.hpp"
#include "tracegraph/core/errors.hpp"

namespace tracegraph::analytics {

namespace {

// Sorted-rank form of the mean absolute difference formula; counts may be 0.
double gini_of(std::vector<std::uint64_t> counts) {
    std::sort(counts.begin(), counts.end());
    const double n = static_cast<double>(counts.size());
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double c = static_cast<double>(counts[i]);
        sum += c;
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * c;
    }
    if (sum == 0.0) return 0.0;
    return weighted / (n * sum);
}

std::string step_label(const EdgeRef& ref) {
    if (const auto* const* op = std::get_if<const OperationEdge*>(&ref)) return (*op)->label();
    return "subgoal " + std::get<const SubgoalEdge*>(ref)->to.to_string();
}

}  // namespace

double gini_index(std::span<const std::uint64_t> counts) {
    if (counts.empty()) throw std::invalid_argument("gini_index of an empty count list");
    if (std::any_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 0; })) {
        throw std::invalid_argument("gini_index counts must be at least 1");
    }
    return gini_of({counts.begin(), counts.end()});
}

std::map<std::vector<std::string>, std::uint64_t> subsequence_counts(std::span<const SearchGraph> graphs,
                                                                    std::size_t length, bool include_subgoals) {
    std::map<std::vector<std::string>, std::uint64_t> counts;
    if (length == 0) return counts;
    for (const auto& g : graphs) {
        std::vector<std::string> sequence;
        for (const auto& ref : g.edges_in_order()) {
            if (!include_subgoals && std::holds_alternative<const SubgoalEdge*>(ref)) continue;
            sequence.push_back(step_label(ref));
        }
        for (std::size_t i = 0; i + length <= sequence.size(); ++i) {
            ++counts[std::vector<std::string>(sequence.begin() + static_cast<std::ptrdiff_t>(i),
                                              sequence.begin() + static_cast<std::ptrdiff_t>(i + length))];
        }
    }
    return counts;
}

GiniResult subsequence_gini(std::span<const SearchGraph> graphs, std::size_t length, const GiniOptions& options) {
    GiniResult result;
    result.subsequence_length = length;
    if (!graphs.empty()) {
        for (const auto& g : graphs) {
            if (g.root() != graphs.front().root()) throw RootMismatch("subsequence_gini over different problems");
        }
        std::string key;
        for (const auto& v : graphs.front().root().values()) key += (key.empty() ? "" : " ") + v.to_string();
        result.problem_id = key;
    }
    auto counts = subsequence_counts(graphs, length, options.include_subgoals);
    std::vector<std::uint64_t> values;
    values.reserve(counts.size() + options.unobserved_categories);
    for (const auto& [seq, n] : counts) {
        values.push_back(n);
        result.n_total += n;
    }
    result.n_unique = counts.size();
    if (values.empty()) return result;
    values.insert(values.end(), options.unobserved_categories, 0);
    result.gini = gini_of(std::move(values));
    return result;
}

}  // namespace tracegraph::analytics
