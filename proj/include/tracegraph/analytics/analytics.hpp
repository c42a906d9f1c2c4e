#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tracegraph/core/search_graph.hpp"
#include "tracegraph/core/trial.hpp"
#include "tracegraph/game24/game24.hpp"
#include "tracegraph/metrics/stats.hpp"
#include "tracegraph/validator/validator.hpp"

namespace tracegraph::analytics {

struct CodedTrial {
    Trial trial;
    SearchGraph graph;
};

// ---- operation usage -------------------------------------------------------

enum class EdgeCategory { Add, Sub, Mul, Div, Subgoal };
inline constexpr std::array<EdgeCategory, 5> kEdgeCategories{EdgeCategory::Add, EdgeCategory::Sub, EdgeCategory::Mul,
                                                             EdgeCategory::Div, EdgeCategory::Subgoal};
std::string_view to_string(EdgeCategory c);

struct OperationUsage {
    std::array<std::size_t, 5> counts{};  // indexed by EdgeCategory
    bool correct = false;

    std::size_t operator[](EdgeCategory c) const { return counts[static_cast<std::size_t>(c)]; }
    std::size_t total() const;
};

OperationUsage operation_usage(const SearchGraph& graph, bool correct);

struct UsageRow {
    bool correct = false;
    std::size_t trials = 0;
    std::array<double, 5> mean{};  // indexed by EdgeCategory
};

// Rows for correct and/or incorrect trials, correct first; a row exists only
// when it has at least one trial.
struct UsageTable {
    std::vector<UsageRow> rows;
    const UsageRow* find(bool correct) const;
};

UsageTable operation_usage_summary(std::span<const CodedTrial> coded);

// ---- subgoals ------------------------------------------------------------

struct SubgoalSuccessRow {
    std::string bucket;  // "0", "1" or ">1"
    std::size_t trials = 0;
    std::size_t correct = 0;
    double success_rate = 0.0;
};

struct SubgoalSummary {
    std::size_t total_subgoals = 0;
    std::size_t trials_with_subgoals = 0;
    std::map<game24::SubgoalType, std::size_t> counts;
    std::map<game24::SubgoalType, double> proportions;  // only types that occur
    std::vector<SubgoalSuccessRow> success_by_count;    // only buckets that occur
};

// Subgoals are counted as distinct subgoal states per trial.
SubgoalSummary subgoal_summary(std::span<const CodedTrial> coded);

// ---- Gini consistency --------------------------------------------------------

// Gini coefficient sum_i sum_j |c_i - c_j| / (2 n^2 mean) over observed
// categories. Requires a non-empty list of counts >= 1.
double gini_index(std::span<const std::uint64_t> counts);

struct GiniOptions {
    bool include_subgoals = false;
    // Extra never-observed categories entering the index with count 0.
    std::size_t unobserved_categories = 0;
};

struct GiniResult {
    std::string problem_id;
    std::size_t subsequence_length = 0;
    std::optional<double> gini;  // absent when no subsequence of this length exists
    std::size_t n_unique = 0;
    std::size_t n_total = 0;
};

// Contiguous runs of `length` operation labels within each graph's
// exploration sequence, pooled across graphs.
std::map<std::vector<std::string>, std::uint64_t> subsequence_counts(std::span<const SearchGraph> graphs,
                                                                    std::size_t length, bool include_subgoals = false);

// Throws RootMismatch when the graphs do not share a root.
GiniResult subsequence_gini(std::span<const SearchGraph> graphs, std::size_t length, const GiniOptions& options = {});

// ---- division --------------------------------------------------------------

struct DivisionReport {
    std::size_t division_required_trials = 0;
    std::size_t division_required_correct = 0;
    std::optional<double> division_required_rate;
    std::size_t other_trials = 0;  // solvable without division
    std::size_t other_correct = 0;
    std::optional<double> other_rate;
    std::size_t unsolvable_trials = 0;  // excluded from both groups
    std::size_t failed_division_required = 0;
    std::size_t never_tried_division = 0;
    std::optional<double> never_tried_fraction;
    std::optional<double> gap;  // other_rate - division_required_rate
    std::optional<metrics::PermutationTestResult> test;
};

// `classifications` is keyed by problem_key. Throws std::invalid_argument if a
// trial's problem has no classification.
DivisionReport division_failure_analysis(std::span<const CodedTrial> coded,
                                         const std::map<std::string, game24::ProblemClassification>& classifications,
                                         std::size_t n_permutations = 10000, std::uint64_t seed = 0);

// ---- coder errors --------------------------------------------------------------

// The three reported classes. MissingNode and DivisionByZero are counted as
// NonRunnable: a trace runtime would have failed on them.
struct ErrorCounts {
    std::size_t non_runnable = 0;
    std::size_t wrong_result = 0;
    std::size_t missing_operand = 0;

    friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

std::map<std::string, ErrorCounts> error_type_counts(
    const std::map<std::string, std::vector<validator::CodingResult>>& results_by_backend);
ErrorCounts error_type_counts(const ValidationReport& report);

// ---- aggregate graph ---------------------------------------------------------

struct AggregateEdge {
    GameState from;
    GameState to;
    std::string label;  // canonical operation label or "subgoal"
    std::size_t weight = 0;
};

struct AggregateGraph {
    GameState root;
    std::set<GameState> nodes;
    std::vector<AggregateEdge> edges;
    std::size_t total_weight_before_filter = 0;

    // Edge pen width is proportional to weight; subgoal edges are dashed.
    std::string to_dot(const std::string& name = "aggregate") const;
};

// Merges graphs by state. An edge's weight is the number of graphs that
// explored it (repeats inside one graph count once); edges below min_count
// are dropped together with nodes left without edges (the root stays).
AggregateGraph aggregate_graph(std::span<const SearchGraph> graphs, std::size_t min_count = 2);

}  // namespace tracegraph::analytics
