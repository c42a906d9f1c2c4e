#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tracegraph/core/search_graph.hpp"
#include "tracegraph/pipeline/relevance.hpp"
#include "tracegraph/validator/validator.hpp"

namespace tracegraph::pipeline {

// Files under the data directory, one JSON record per line:
//   trials.jsonl       trial records (first record per trial_id wins)
//   provenance.jsonl   {"path", "sha256", "records"} per ingested file
//   verdicts.jsonl     {"trial_id", "status": kept|excluded|pending,
//                       "relevant", "reason", "exclusion"}
//   attempts.jsonl     {"trial_id", "coder", "attempt", "temperature", "source", "report"}
//   results.jsonl      {"trial_id", "coder", "status": coded|uncoded, "kept_attempt",
//                       "error_count", "source", "graph", "report", "interrupted", "error"}
//   annotations.jsonl  {"trial_id", "coder", "version", "source", "graph", "report",
//                       "coding_time_s"}
//   agents.jsonl       {"trial_id", "seed", "graph"}
// Nothing is rewritten; for keyed records the latest line wins.
inline constexpr const char* kArtifactKinds[] = {"trials",   "provenance",  "verdicts", "attempts",
                                                 "results",  "annotations", "agents"};

struct VerdictRecord {
    std::string trial_id;
    std::string status;  // kept | excluded | pending
    std::optional<RelevanceVerdict> verdict;
    std::optional<Exclusion> exclusion;
};

struct StoredResult {
    std::string trial_id;
    std::string coder;
    bool coded = false;
    std::size_t kept_attempt = 0;  // 1-based; 0 when uncoded
    std::size_t error_count = 0;
    std::string source;
    std::optional<SearchGraph> graph;
    ValidationReport report;
    std::optional<std::string> interrupted;
    std::optional<std::string> error;  // why an uncoded trial failed

    bool clean() const { return coded && error_count == 0 && !interrupted; }
};

struct Annotation {
    std::string trial_id;
    std::string coder;
    std::uint64_t version = 0;
    std::string source;
    std::optional<SearchGraph> graph;
    ValidationReport report;
    std::optional<double> coding_time_s;
};

class VersionConflict : public std::runtime_error {
public:
    VersionConflict(Annotation current);
    const Annotation& current() const { return current_; }

private:
    Annotation current_;
};

// Thread safe. Keeps an in-memory index of the directory, loaded on open.
class Store {
public:
    explicit Store(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    // Returns how many were new.
    std::size_t add_trials(const std::vector<Trial>& trials);
    void add_provenance(const std::vector<SourceDigest>& digests);
    std::vector<Trial> trials() const;
    std::optional<Trial> trial(const std::string& id) const;

    void add_verdicts(const Dataset& dataset, const FilterResult& result);
    std::map<std::string, VerdictRecord> verdicts() const;
    // Trials whose latest verdict is "kept"; all trials when nothing was filtered.
    std::vector<Trial> included_trials() const;

    void add_result(const validator::CodingResult& result);
    void add_uncoded(const std::string& trial_id, const std::string& coder, const std::string& error);
    std::optional<StoredResult> result(const std::string& trial_id, const std::string& coder) const;
    std::vector<StoredResult> results() const;  // ordered by (trial_id, coder)

    // expected_version is the version the writer last saw (0 for none).
    // Throws VersionConflict when someone else saved in between.
    Annotation put_annotation(const std::string& trial_id, const std::string& coder, const std::string& source,
                              std::uint64_t expected_version, std::optional<double> coding_time_s = {});
    std::optional<Annotation> annotation(const std::string& trial_id, const std::string& coder) const;
    std::vector<Annotation> annotations(const std::string& trial_id) const;

    void add_agent_graph(const std::string& trial_id, std::uint64_t seed, const SearchGraph& graph);
    // trial_id -> graph, latest wins.
    std::map<std::string, SearchGraph> agent_graphs() const;

    // A coder's graph for a trial: the human annotation when one exists,
    // otherwise the stored coding result. nullopt inside means non-runnable.
    std::optional<std::optional<SearchGraph>> graph_for(const std::string& trial_id, const std::string& coder) const;

private:
    void append(const char* kind, const nlohmann::json& record);
    std::vector<nlohmann::json> read(const char* kind) const;
    void load();

    std::filesystem::path dir_;
    mutable std::mutex mu_;
    std::vector<Trial> trials_;
    std::map<std::string, std::size_t> trial_index_;
    std::map<std::string, VerdictRecord> verdicts_;
    std::map<std::pair<std::string, std::string>, StoredResult> results_;
    std::map<std::pair<std::string, std::string>, Annotation> annotations_;
    std::map<std::string, SearchGraph> agents_;
};

}  // namespace tracegraph::pipeline
