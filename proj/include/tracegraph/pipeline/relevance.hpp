#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tracegraph/pipeline/dataset.hpp"

namespace tracegraph::pipeline {

enum class RelevanceReason { ExactSilenceMatch, ClassifierIrrelevant, ClassifierRelevant };

std::string_view to_string(RelevanceReason r);
std::optional<RelevanceReason> relevance_reason_from_string(std::string_view text);

struct RelevanceVerdict {
    std::string trial_id;
    bool relevant = false;
    RelevanceReason reason = RelevanceReason::ClassifierIrrelevant;

    friend bool operator==(const RelevanceVerdict&, const RelevanceVerdict&) = default;
};

// Decides whether a transcript talks about the puzzle at all. Throws
// ClassifierUnavailable when it cannot answer.
class RelevanceClassifier {
public:
    virtual ~RelevanceClassifier() = default;
    virtual std::string name() const = 0;
    virtual bool relevant(const Trial& trial) = 0;
};

// Offline rule: a digit, a number word or an arithmetic word must appear.
class HeuristicClassifier : public RelevanceClassifier {
public:
    std::string name() const override { return "heuristic"; }
    bool relevant(const Trial& trial) override;
};

enum class Exclusion { Irrelevant, ParticipantRule };

std::string_view to_string(Exclusion e);

struct FilterResult {
    std::vector<RelevanceVerdict> verdicts;        // dataset order; pending trials have none
    std::map<std::string, Exclusion> excluded;     // trial_id -> why
    std::vector<std::string> pending;              // classifier was unavailable
    Dataset kept;                                  // neither excluded nor pending
};

// One silence string per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> load_silence_strings(const std::filesystem::path& path);

// Exact match against the trimmed transcript first, then the classifier.
// Afterwards every participant with at least half of their trials excluded
// loses the rest as well. The outcome does not depend on trial order.
FilterResult filter_relevance(const Dataset& dataset, const std::vector<std::string>& silence_strings,
                              RelevanceClassifier& classifier);

}  // namespace tracegraph::pipeline
