#include "tracegraph/pipeline/records.hpp"

#include <sstream>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::pipeline {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) throw SchemaError(std::string("missing field '") + name + "'");
    return *it;
}

std::array<int, 4> parse_problem(const json& j) {
    std::vector<long long> numbers;
    if (j.is_string()) {
        std::istringstream in(j.get<std::string>());
        long long v = 0;
        while (in >> v) numbers.push_back(v);
        if (!in.eof()) throw SchemaError("field 'problem' must hold four integers");
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (!x.is_number_integer()) throw SchemaError("field 'problem' must hold four integers");
            numbers.push_back(x.get<long long>());
        }
    } else {
        throw SchemaError("field 'problem' must be an array or a string");
    }
    if (numbers.size() != 4) throw SchemaError("field 'problem' must hold exactly 4 numbers");
    std::array<int, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (numbers[i] < 1 || numbers[i] > 13) throw SchemaError("problem numbers must lie in 1..13");
        out[i] = static_cast<int>(numbers[i]);
    }
    return out;
}

}  // namespace

json trial_to_json(const Trial& t) {
    json j;
    j["trial_id"] = t.trial_id;
    j["participant_id"] = t.participant_id;
    j["problem"] = t.problem;
    j["transcript"] = t.transcript;
    j["response"] = t.response ? json(*t.response) : json(nullptr);
    j["response_time_s"] = t.response_time_s;
    j["correct"] = t.correct;
    j["condition"] = std::string(to_string(t.condition));
    j["stimulus_group"] = t.stimulus_group;
    return j;
}

Trial trial_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("record is not a JSON object");
    Trial t;
    try {
        t.trial_id = field(j, "trial_id").get<std::string>();
        if (t.trial_id.empty()) throw SchemaError("field 'trial_id' is empty");
        t.participant_id = field(j, "participant_id").get<std::string>();
        t.problem = parse_problem(field(j, "problem"));
        t.transcript = field(j, "transcript").get<std::string>();
        if (auto it = j.find("response"); it != j.end() && !it->is_null()) t.response = it->get<std::string>();
        const auto& rt = field(j, "response_time_s");
        if (!rt.is_number()) throw SchemaError("field 'response_time_s' must be a number");
        t.response_time_s = rt.get<double>();
        if (t.response_time_s < 0) throw SchemaError("field 'response_time_s' is negative");
        const auto& correct = field(j, "correct");
        if (!correct.is_boolean()) throw SchemaError("field 'correct' must be a boolean");
        t.correct = correct.get<bool>();
        if (auto it = j.find("condition"); it != j.end() && !it->is_null()) {
            auto c = condition_from_string(it->get<std::string>());
            if (!c) throw SchemaError("field 'condition' must be think_aloud or control");
            t.condition = *c;
        }
        if (auto it = j.find("stimulus_group"); it != j.end() && !it->is_null()) {
            t.stimulus_group = it->get<std::string>();
        }
    } catch (const json::type_error& e) {
        throw SchemaError(std::string("wrong field type: ") + e.what());
    }
    return t;
}

json report_to_json(const ValidationReport& report) {
    json out = json::array();
    for (const auto& e : report.errors) {
        json j;
        j["kind"] = std::string(to_string(e.kind));
        j["statement"] = e.statement_index ? json(*e.statement_index) : json(nullptr);
        j["line"] = e.line ? json(*e.line) : json(nullptr);
        j["detail"] = e.detail;
        out.push_back(std::move(j));
    }
    return out;
}

ValidationReport report_from_json(const json& j) {
    ValidationReport report;
    if (!j.is_array()) throw SchemaError("report must be an array");
    for (const auto& e : j) {
        ValidationError err;
        auto kind = error_kind_from_string(field(e, "kind").get<std::string>());
        if (!kind) throw SchemaError("unknown error kind");
        err.kind = *kind;
        if (!e.value("statement", json()).is_null()) err.statement_index = e["statement"].get<std::size_t>();
        if (!e.value("line", json()).is_null()) err.line = e["line"].get<std::size_t>();
        err.detail = e.value("detail", "");
        report.errors.push_back(std::move(err));
    }
    return report;
}

}  // namespace tracegraph::pipeline
