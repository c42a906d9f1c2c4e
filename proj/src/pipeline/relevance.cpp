#include "tracegraph/pipeline/relevance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::pipeline {

std::string_view to_string(RelevanceReason r) {
    switch (r) {
        case RelevanceReason::ExactSilenceMatch: return "exact_silence_match";
        case RelevanceReason::ClassifierIrrelevant: return "classifier_irrelevant";
        case RelevanceReason::ClassifierRelevant: return "classifier_relevant";
    }
    return "?";
}

std::optional<RelevanceReason> relevance_reason_from_string(std::string_view text) {
    for (auto r : {RelevanceReason::ExactSilenceMatch, RelevanceReason::ClassifierIrrelevant,
                   RelevanceReason::ClassifierRelevant}) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

std::string_view to_string(Exclusion e) {
    return e == Exclusion::Irrelevant ? "irrelevant" : "participant_rule";
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

bool HeuristicClassifier::relevant(const Trial& trial) {
    static const std::regex words(
        R"(\b(zero|one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve|thirteen|fourteen|fifteen|)"
        R"(sixteen|seventeen|eighteen|nineteen|twenty|thirty|forty|fifty|sixty|seventy|eighty|ninety|hundred|)"
        R"(half|third|quarter|plus|add|adding|added|minus|subtract|subtracting|take away|times|multiply|)"
        R"(multiplied|divide|divided|dividing|over|equals|sum|product|difference)\b)",
        std::regex::icase | std::regex::optimize);
    const auto& t = trial.transcript;
    if (std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) return true;
    return std::regex_search(t, words);
}

std::vector<std::string> load_silence_strings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        out.push_back(s);
    }
    return out;
}

FilterResult filter_relevance(const Dataset& dataset, const std::vector<std::string>& silence_strings,
                              RelevanceClassifier& classifier) {
    FilterResult out;
    std::set<std::string> silence;
    for (const auto& s : silence_strings) silence.insert(trim(s));

    for (const auto& t : dataset.trials) {
        if (silence.count(trim(t.transcript))) {
            out.verdicts.push_back({t.trial_id, false, RelevanceReason::ExactSilenceMatch});
            out.excluded[t.trial_id] = Exclusion::Irrelevant;
            continue;
        }
        try {
            bool rel = classifier.relevant(t);
            out.verdicts.push_back(
                {t.trial_id, rel, rel ? RelevanceReason::ClassifierRelevant : RelevanceReason::ClassifierIrrelevant});
            if (!rel) out.excluded[t.trial_id] = Exclusion::Irrelevant;
        } catch (const ClassifierUnavailable&) {
            out.pending.push_back(t.trial_id);
        }
    }

    // Pending trials count toward the participant's total but not as excluded.
    for (const auto& [participant, ids] : dataset.participants()) {
        std::size_t excluded = 0;
        for (const auto& id : ids) excluded += out.excluded.count(id);
        if (2 * excluded < ids.size()) continue;
        for (const auto& id : ids) out.excluded.emplace(id, Exclusion::ParticipantRule);
    }
    std::erase_if(out.pending, [&](const std::string& id) { return out.excluded.count(id) > 0; });

    std::set<std::string> pending(out.pending.begin(), out.pending.end());
    out.kept.provenance = dataset.provenance;
    for (const auto& t : dataset.trials) {
        if (!out.excluded.count(t.trial_id) && !pending.count(t.trial_id)) out.kept.trials.push_back(t);
    }
    return out;
}

}  // namespace tracegraph::pipeline
