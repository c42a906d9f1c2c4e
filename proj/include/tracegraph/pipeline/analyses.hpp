#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "tracegraph/analytics/analytics.hpp"
#include "tracegraph/pipeline/store.hpp"

namespace tracegraph::pipeline {

inline constexpr const char* kAnalysisNames[] = {"usage", "subgoals", "gini", "division", "errors", "aggregate"};

struct AnalysisOptions {
    std::string coder = "heuristic";
    std::uint64_t seed = 0;
    std::size_t n_permutations = 10000;
    std::size_t max_subsequence_length = 3;
    std::size_t min_edge_count = 2;
    // DOT files of the aggregate analysis go to <out_dir>/aggregate/.
    std::filesystem::path out_dir;
};

// Included trials that the coder turned into a runnable graph rooted at the
// trial's numbers, in store order.
std::vector<analytics::CodedTrial> coded_trials(const Store& store, const std::string& coder);

// One JSON document per analysis. Throws std::invalid_argument on an unknown name.
nlohmann::json run_analysis(const std::string& name, const Store& store, const AnalysisOptions& options);

// A random-agent graph per coded trial, matched in the number of distinct
// operations explored. Returns how many were stored.
std::size_t generate_agents(Store& store, const std::string& coder, std::uint64_t seed);

}  // namespace tracegraph::pipeline
