#include "tracegraph/pipeline/analyses.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <map>
#include <stdexcept>

namespace tracegraph::pipeline {

using nlohmann::json;
namespace an = tracegraph::analytics;

namespace {

GameState root_of(const Trial& t) { return GameState({t.problem[0], t.problem[1], t.problem[2], t.problem[3]}); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::map<std::string, std::vector<SearchGraph>> by_problem(const std::vector<an::CodedTrial>& coded) {
    std::map<std::string, std::vector<SearchGraph>> out;
    for (const auto& c : coded) out[problem_key(c.trial.problem)].push_back(c.graph);
    return out;
}

json usage(const std::vector<an::CodedTrial>& coded) {
    json rows = json::array();
    for (const auto& row : an::operation_usage_summary(coded).rows) {
        json mean;
        for (auto c : an::kEdgeCategories) mean[std::string(an::to_string(c))] = row.mean[static_cast<std::size_t>(c)];
        rows.push_back({{"correct", row.correct}, {"trials", row.trials}, {"mean", mean}});
    }
    return {{"rows", rows}};
}

json subgoals(const std::vector<an::CodedTrial>& coded) {
    auto s = an::subgoal_summary(coded);
    json counts = json::object(), props = json::object(), success = json::array();
    for (const auto& [type, n] : s.counts) counts[std::string(game24::to_string(type))] = n;
    for (const auto& [type, p] : s.proportions) props[std::string(game24::to_string(type))] = p;
    for (const auto& r : s.success_by_count) {
        success.push_back(
            {{"subgoals", r.bucket}, {"trials", r.trials}, {"correct", r.correct}, {"success_rate", r.success_rate}});
    }
    return {{"trials", coded.size()},
            {"trials_with_subgoals", s.trials_with_subgoals},
            {"total_subgoals", s.total_subgoals},
            {"counts", counts},
            {"proportions", props},
            {"success_by_count", success}};
}

json gini_json(const an::GiniResult& r) {
    return {{"gini", opt(r.gini)}, {"n_unique", r.n_unique}, {"n_total", r.n_total}};
}

json gini(const std::vector<an::CodedTrial>& coded, const Store& store, const AnalysisOptions& o) {
    auto agents = store.agent_graphs();
    json rows = json::array();
    for (const auto& [key, graphs] : by_problem(coded)) {
        std::vector<SearchGraph> random;
        for (const auto& c : coded) {
            if (problem_key(c.trial.problem) != key) continue;
            if (auto it = agents.find(c.trial.trial_id); it != agents.end()) random.push_back(it->second);
        }
        for (std::size_t len = 1; len <= o.max_subsequence_length; ++len) {
            json row{{"problem", key}, {"length", len}, {"coded", gini_json(an::subsequence_gini(graphs, len))}};
            row["random_agent"] = random.empty() ? json(nullptr) : gini_json(an::subsequence_gini(random, len));
            rows.push_back(std::move(row));
        }
    }
    return {{"rows", rows}};
}

json division(const std::vector<an::CodedTrial>& coded, const AnalysisOptions& o) {
    std::map<std::string, game24::ProblemClassification> cls;
    for (const auto& c : coded) {
        auto key = problem_key(c.trial.problem);
        if (!cls.count(key)) cls.emplace(key, game24::classify(game24::Problem(c.trial.problem)));
    }
    auto r = an::division_failure_analysis(coded, cls, o.n_permutations, o.seed);
    json test = nullptr;
    if (r.test) {
        test = {{"observed_statistic", r.test->observed_statistic},
                {"p_value", r.test->p_value},
                {"n_permutations", r.test->n_permutations},
                {"seed", r.test->seed}};
    }
    return {{"division_required", {{"trials", r.division_required_trials},
                                   {"correct", r.division_required_correct},
                                   {"rate", opt(r.division_required_rate)}}},
            {"other", {{"trials", r.other_trials}, {"correct", r.other_correct}, {"rate", opt(r.other_rate)}}},
            {"unsolvable_trials", r.unsolvable_trials},
            {"failed_division_required", r.failed_division_required},
            {"never_tried_division", r.never_tried_division},
            {"never_tried_fraction", opt(r.never_tried_fraction)},
            {"gap", opt(r.gap)},
            {"permutation_test", test}};
}

json errors(const Store& store) {
    std::map<std::string, an::ErrorCounts> totals;
    std::map<std::string, std::size_t> coded, uncoded;
    for (const auto& r : store.results()) {
        if (!r.coded) {
            ++uncoded[r.coder];
            continue;
        }
        ++coded[r.coder];
        auto c = an::error_type_counts(r.report);
        auto& t = totals[r.coder];
        t.non_runnable += c.non_runnable;
        t.wrong_result += c.wrong_result;
        t.missing_operand += c.missing_operand;
    }
    json out = json::object();
    for (const auto& [coder, t] : totals) {
        out[coder] = {{"coded", coded[coder]},
                      {"uncoded", uncoded[coder]},
                      {"non_runnable", t.non_runnable},
                      {"wrong_result", t.wrong_result},
                      {"missing_operand", t.missing_operand}};
    }
    for (const auto& [coder, n] : uncoded) {
        if (!out.contains(coder)) {
            out[coder] = {{"coded", 0}, {"uncoded", n}, {"non_runnable", 0}, {"wrong_result", 0}, {"missing_operand", 0}};
        }
    }
    return {{"coders", out}};
}

json aggregate(const std::vector<an::CodedTrial>& coded, const AnalysisOptions& o) {
    json rows = json::array();
    std::filesystem::path dir = o.out_dir.empty() ? std::filesystem::path() : o.out_dir / "aggregate";
    if (!dir.empty()) std::filesystem::create_directories(dir);
    for (const auto& [key, graphs] : by_problem(coded)) {
        auto agg = an::aggregate_graph(graphs, o.min_edge_count);
        std::string stem = key;
        std::replace(stem.begin(), stem.end(), ' ', '_');
        json row{{"problem", key},
                 {"trials", graphs.size()},
                 {"edges", agg.edges.size()},
                 {"total_weight_before_filter", agg.total_weight_before_filter}};
        if (!dir.empty()) {
            std::ofstream(dir / (stem + ".dot"), std::ios::binary) << agg.to_dot("p_" + stem);
            row["file"] = "aggregate/" + stem + ".dot";
        }
        rows.push_back(std::move(row));
    }
    return {{"min_count", o.min_edge_count}, {"problems", rows}};
}

}  // namespace

std::vector<an::CodedTrial> coded_trials(const Store& store, const std::string& coder) {
    std::vector<an::CodedTrial> out;
    for (const auto& t : store.included_trials()) {
        auto g = store.graph_for(t.trial_id, coder);
        if (!g || !*g || (*g)->root() != root_of(t)) continue;
        out.push_back({t, **g});
    }
    return out;
}

json run_analysis(const std::string& name, const Store& store, const AnalysisOptions& o) {
    json out{{"schema", 1}, {"analysis", name}, {"coder", o.coder}};
    if (name == "errors") {
        out["result"] = errors(store);
        return out;
    }
    auto coded = coded_trials(store, o.coder);
    if (name == "usage") out["result"] = usage(coded);
    else if (name == "subgoals") out["result"] = subgoals(coded);
    else if (name == "gini") out["result"] = gini(coded, store, o);
    else if (name == "division") out["result"] = division(coded, o);
    else if (name == "aggregate") out["result"] = aggregate(coded, o);
    else throw std::invalid_argument("unknown analysis '" + name + "'");
    return out;
}

std::size_t generate_agents(Store& store, const std::string& coder, std::uint64_t seed) {
    std::size_t n = 0;
    for (const auto& c : coded_trials(store, coder)) {
        std::set<std::pair<GameState, std::string>> distinct;
        for (const auto& e : c.graph.op_edges()) distinct.emplace(e.from, e.label());
        std::uint64_t s = seed + n;
        store.add_agent_graph(c.trial.trial_id, s,
                              game24::random_agent(game24::Problem(c.trial.problem), distinct.size(), s));
        ++n;
    }
    return n;
}

}  // namespace tracegraph::pipeline
