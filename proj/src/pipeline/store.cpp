#include "tracegraph/pipeline/store.hpp"

#include <fstream>
#include <set>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/graph_io.hpp"
#include "tracegraph/pipeline/records.hpp"

namespace tracegraph::pipeline {

using nlohmann::json;

namespace {

json optional_graph(const std::optional<SearchGraph>& g) { return g ? graph_to_json(*g) : json(nullptr); }

std::optional<SearchGraph> graph_or_null(const json& j) {
    if (j.is_null()) return std::nullopt;
    return graph_from_json(j);
}

std::optional<std::string> optional_string(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
}

StoredResult result_from_json(const json& j) {
    StoredResult r;
    r.trial_id = j.at("trial_id");
    r.coder = j.at("coder");
    r.coded = j.at("status") == "coded";
    r.kept_attempt = j.value("kept_attempt", 0);
    r.error_count = j.value("error_count", 0);
    r.source = j.value("source", "");
    r.graph = graph_or_null(j.value("graph", json()));
    r.report = report_from_json(j.value("report", json::array()));
    r.interrupted = optional_string(j, "interrupted");
    r.error = optional_string(j, "error");
    return r;
}

Annotation annotation_from_json(const json& j) {
    Annotation a;
    a.trial_id = j.at("trial_id");
    a.coder = j.at("coder");
    a.version = j.at("version");
    a.source = j.at("source");
    a.graph = graph_or_null(j.value("graph", json()));
    a.report = report_from_json(j.value("report", json::array()));
    if (auto it = j.find("coding_time_s"); it != j.end() && !it->is_null()) a.coding_time_s = it->get<double>();
    return a;
}

json annotation_to_json(const Annotation& a) {
    return json{{"schema", kRecordSchemaVersion},
                {"trial_id", a.trial_id},
                {"coder", a.coder},
                {"version", a.version},
                {"source", a.source},
                {"graph", optional_graph(a.graph)},
                {"report", report_to_json(a.report)},
                {"coding_time_s", a.coding_time_s ? json(*a.coding_time_s) : json(nullptr)}};
}

}  // namespace

VersionConflict::VersionConflict(Annotation current)
    : std::runtime_error("annotation was saved by someone else (now version " + std::to_string(current.version) +
                         ")"),
      current_(std::move(current)) {}

Store::Store(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    load();
}

void Store::append(const char* kind, const json& record) {
    std::ofstream out(dir_ / (std::string(kind) + ".jsonl"), std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot append to " + std::string(kind) + ".jsonl");
    out << record.dump() << '\n';
}

std::vector<json> Store::read(const char* kind) const {
    std::vector<json> out;
    std::ifstream in(dir_ / (std::string(kind) + ".jsonl"), std::ios::binary);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error&) {
            throw SchemaError(std::string(kind) + ".jsonl line " + std::to_string(n) + " is not JSON");
        }
    }
    return out;
}

void Store::load() {
    for (const auto& j : read("trials")) {
        Trial t = trial_from_json(j);
        if (trial_index_.emplace(t.trial_id, trials_.size()).second) trials_.push_back(std::move(t));
    }
    for (const auto& j : read("verdicts")) {
        VerdictRecord v;
        v.trial_id = j.at("trial_id");
        v.status = j.at("status");
        if (auto reason = optional_string(j, "reason")) {
            v.verdict = RelevanceVerdict{v.trial_id, j.at("relevant").get<bool>(),
                                         relevance_reason_from_string(*reason).value()};
        }
        if (auto ex = optional_string(j, "exclusion")) {
            v.exclusion = *ex == "irrelevant" ? Exclusion::Irrelevant : Exclusion::ParticipantRule;
        }
        verdicts_[v.trial_id] = std::move(v);
    }
    for (const auto& j : read("results")) {
        auto r = result_from_json(j);
        results_[{r.trial_id, r.coder}] = std::move(r);
    }
    for (const auto& j : read("annotations")) {
        auto a = annotation_from_json(j);
        annotations_[{a.trial_id, a.coder}] = std::move(a);
    }
    for (const auto& j : read("agents")) agents_.insert_or_assign(j.at("trial_id"), graph_from_json(j.at("graph")));
}

std::size_t Store::add_trials(const std::vector<Trial>& trials) {
    std::lock_guard lock(mu_);
    std::size_t added = 0;
    for (const auto& t : trials) {
        if (!trial_index_.emplace(t.trial_id, trials_.size()).second) continue;
        auto j = trial_to_json(t);
        j["schema"] = kRecordSchemaVersion;
        append("trials", j);
        trials_.push_back(t);
        ++added;
    }
    return added;
}

void Store::add_provenance(const std::vector<SourceDigest>& digests) {
    std::lock_guard lock(mu_);
    for (const auto& d : digests) {
        append("provenance",
               {{"schema", kRecordSchemaVersion}, {"path", d.path}, {"sha256", d.sha256}, {"records", d.records}});
    }
}

std::vector<Trial> Store::trials() const {
    std::lock_guard lock(mu_);
    return trials_;
}

std::optional<Trial> Store::trial(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = trial_index_.find(id);
    if (it == trial_index_.end()) return std::nullopt;
    return trials_[it->second];
}

void Store::add_verdicts(const Dataset& dataset, const FilterResult& result) {
    std::lock_guard lock(mu_);
    std::map<std::string, const RelevanceVerdict*> by_id;
    for (const auto& v : result.verdicts) by_id[v.trial_id] = &v;
    std::set<std::string> pending(result.pending.begin(), result.pending.end());
    for (const auto& t : dataset.trials) {
        VerdictRecord rec;
        rec.trial_id = t.trial_id;
        if (auto it = by_id.find(t.trial_id); it != by_id.end()) rec.verdict = *it->second;
        if (auto it = result.excluded.find(t.trial_id); it != result.excluded.end()) rec.exclusion = it->second;
        rec.status = rec.exclusion ? "excluded" : pending.count(t.trial_id) ? "pending" : "kept";
        append("verdicts",
               {{"schema", kRecordSchemaVersion},
                {"trial_id", rec.trial_id},
                {"status", rec.status},
                {"relevant", rec.verdict ? json(rec.verdict->relevant) : json(nullptr)},
                {"reason", rec.verdict ? json(std::string(to_string(rec.verdict->reason))) : json(nullptr)},
                {"exclusion", rec.exclusion ? json(std::string(to_string(*rec.exclusion))) : json(nullptr)}});
        verdicts_[rec.trial_id] = std::move(rec);
    }
}

std::map<std::string, VerdictRecord> Store::verdicts() const {
    std::lock_guard lock(mu_);
    return verdicts_;
}

std::vector<Trial> Store::included_trials() const {
    std::lock_guard lock(mu_);
    if (verdicts_.empty()) return trials_;
    std::vector<Trial> out;
    for (const auto& t : trials_) {
        auto it = verdicts_.find(t.trial_id);
        if (it != verdicts_.end() && it->second.status == "kept") out.push_back(t);
    }
    return out;
}

void Store::add_result(const validator::CodingResult& r) {
    std::lock_guard lock(mu_);
    for (const auto& a : r.attempts) {
        append("attempts", {{"schema", kRecordSchemaVersion},
                            {"trial_id", r.trial_id},
                            {"coder", r.coder},
                            {"attempt", a.number},
                            {"temperature", a.temperature},
                            {"source", a.source},
                            {"report", report_to_json(a.validation.report)}});
    }
    const auto& best = r.best();
    StoredResult s;
    s.trial_id = r.trial_id;
    s.coder = r.coder;
    s.coded = true;
    s.kept_attempt = static_cast<std::size_t>(best.number);
    s.error_count = best.error_count();
    s.source = best.source;
    s.graph = best.validation.graph;
    s.report = best.validation.report;
    s.interrupted = r.interrupted;
    append("results", {{"schema", kRecordSchemaVersion},
                       {"trial_id", s.trial_id},
                       {"coder", s.coder},
                       {"status", "coded"},
                       {"kept_attempt", s.kept_attempt},
                       {"error_count", s.error_count},
                       {"source", s.source},
                       {"graph", optional_graph(s.graph)},
                       {"report", report_to_json(s.report)},
                       {"interrupted", s.interrupted ? json(*s.interrupted) : json(nullptr)},
                       {"error", nullptr}});
    results_[{s.trial_id, s.coder}] = std::move(s);
}

void Store::add_uncoded(const std::string& trial_id, const std::string& coder, const std::string& error) {
    std::lock_guard lock(mu_);
    StoredResult s;
    s.trial_id = trial_id;
    s.coder = coder;
    s.error = error;
    append("results", {{"schema", kRecordSchemaVersion},
                       {"trial_id", trial_id},
                       {"coder", coder},
                       {"status", "uncoded"},
                       {"kept_attempt", 0},
                       {"error_count", 0},
                       {"source", ""},
                       {"graph", nullptr},
                       {"report", json::array()},
                       {"interrupted", nullptr},
                       {"error", error}});
    results_[{trial_id, coder}] = std::move(s);
}

std::optional<StoredResult> Store::result(const std::string& trial_id, const std::string& coder) const {
    std::lock_guard lock(mu_);
    auto it = results_.find({trial_id, coder});
    if (it == results_.end()) return std::nullopt;
    return it->second;
}

std::vector<StoredResult> Store::results() const {
    std::lock_guard lock(mu_);
    std::vector<StoredResult> out;
    for (const auto& [key, r] : results_) out.push_back(r);
    return out;
}

Annotation Store::put_annotation(const std::string& trial_id, const std::string& coder, const std::string& source,
                                 std::uint64_t expected_version, std::optional<double> coding_time_s) {
    auto validation = validator::validate(source);
    std::lock_guard lock(mu_);
    auto key = std::make_pair(trial_id, coder);
    std::uint64_t current = 0;
    if (auto it = annotations_.find(key); it != annotations_.end()) current = it->second.version;
    if (current != expected_version) throw VersionConflict(annotations_.at(key));
    Annotation a{trial_id, coder, current + 1, source, validation.graph, validation.report, coding_time_s};
    append("annotations", annotation_to_json(a));
    annotations_[key] = a;
    return a;
}

std::optional<Annotation> Store::annotation(const std::string& trial_id, const std::string& coder) const {
    std::lock_guard lock(mu_);
    auto it = annotations_.find({trial_id, coder});
    if (it == annotations_.end()) return std::nullopt;
    return it->second;
}

std::vector<Annotation> Store::annotations(const std::string& trial_id) const {
    std::lock_guard lock(mu_);
    std::vector<Annotation> out;
    for (const auto& [key, a] : annotations_) {
        if (key.first == trial_id) out.push_back(a);
    }
    return out;
}

void Store::add_agent_graph(const std::string& trial_id, std::uint64_t seed, const SearchGraph& graph) {
    std::lock_guard lock(mu_);
    append("agents", {{"schema", kRecordSchemaVersion},
                      {"trial_id", trial_id},
                      {"seed", seed},
                      {"graph", graph_to_json(graph)}});
    agents_.insert_or_assign(trial_id, graph);
}

std::map<std::string, SearchGraph> Store::agent_graphs() const {
    std::lock_guard lock(mu_);
    return agents_;
}

std::optional<std::optional<SearchGraph>> Store::graph_for(const std::string& trial_id,
                                                           const std::string& coder) const {
    std::lock_guard lock(mu_);
    if (auto it = annotations_.find({trial_id, coder}); it != annotations_.end()) return it->second.graph;
    if (auto it = results_.find({trial_id, coder}); it != results_.end() && it->second.coded) return it->second.graph;
    return std::nullopt;
}

}  // namespace tracegraph::pipeline
