#include "tracegraph/pipeline/dataset.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/expression.hpp"
#include "tracegraph/pipeline/records.hpp"

namespace tracegraph::pipeline {

using nlohmann::json;

std::map<std::string, std::vector<std::string>> Dataset::participants() const {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& t : trials) out[t.participant_id].push_back(t.trial_id);
    return out;
}

const Trial* Dataset::find(std::string_view trial_id) const {
    for (const auto& t : trials) {
        if (t.trial_id == trial_id) return &t;
    }
    return nullptr;
}

std::string IngestDiagnostic::to_string() const {
    return "line " + std::to_string(line) + (fatal ? ": " : ": warning: ") + message;
}

bool apply_truncation(Trial& trial) {
    if (trial.response_time_s <= kTruncationThresholdSeconds) return false;
    trial.response_time_s = kTrialTimeLimitSeconds;
    trial.correct = false;
    return true;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

namespace {

struct RawRecord {
    std::size_t line;
    json value;
};

std::vector<RawRecord> split_jsonl(std::string_view text, std::vector<IngestDiagnostic>& diags) {
    std::vector<RawRecord> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            out.push_back({line_no, json::parse(line)});
        } catch (const json::parse_error& e) {
            diags.push_back({line_no, std::string("invalid JSON: ") + e.what()});
        }
    }
    return out;
}

// RFC 4180 style: quoted fields may hold commas, doubled quotes and newlines.
std::vector<std::pair<std::size_t, std::vector<std::string>>> split_csv(std::string_view text,
                                                                        std::vector<IngestDiagnostic>& diags) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool row_has_content = false;
    std::size_t line = 1;
    std::size_t row_start = 1;
    auto end_row = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        if (row_has_content) rows.emplace_back(row_start, std::move(row));
        row.clear();
        row_has_content = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            row_has_content = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            row_has_content = true;
        } else if (c == '\n') {
            end_row();
            ++line;
            row_start = line;
        } else if (c != '\r') {
            cell += c;
            row_has_content = true;
        }
    }
    if (quoted) diags.push_back({row_start, "unterminated quoted field"});
    else end_row();
    return rows;
}

std::vector<RawRecord> csv_records(std::string_view text, std::vector<IngestDiagnostic>& diags) {
    auto rows = split_csv(text, diags);
    std::vector<RawRecord> out;
    if (rows.empty()) return out;
    const auto header = rows.front().second;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [line, cells] = rows[r];
        if (cells.size() != header.size()) {
            diags.push_back({line, "expected " + std::to_string(header.size()) + " columns, found " +
                                       std::to_string(cells.size())});
            continue;
        }
        json j = json::object();
        bool ok = true;
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto& name = header[c];
            const auto& v = cells[c];
            if (v.empty() && (name == "response" || name == "stimulus_group" || name == "condition")) continue;
            if (name == "response_time_s") {
                try {
                    std::size_t used = 0;
                    double d = std::stod(v, &used);
                    if (used != v.size()) throw std::invalid_argument(v);
                    j[name] = d;
                } catch (const std::exception&) {
                    diags.push_back({line, "field 'response_time_s' must be a number"});
                    ok = false;
                }
            } else if (name == "correct") {
                if (v == "true" || v == "1") j[name] = true;
                else if (v == "false" || v == "0") j[name] = false;
                else {
                    diags.push_back({line, "field 'correct' must be true or false"});
                    ok = false;
                }
            } else if (!v.empty()) {
                j[name] = v;
            }
        }
        if (ok) out.push_back({line, std::move(j)});
    }
    return out;
}

}  // namespace

IngestResult ingest_text(std::string_view text, InputFormat format, const std::string& source_name) {
    IngestResult result;
    auto records = format == InputFormat::Jsonl ? split_jsonl(text, result.diagnostics)
                                                : csv_records(text, result.diagnostics);
    std::set<std::string> seen;
    for (auto& rec : records) {
        Trial t;
        try {
            t = trial_from_json(rec.value);
        } catch (const SchemaError& e) {
            result.diagnostics.push_back({rec.line, e.what()});
            continue;
        }
        if (!seen.insert(t.trial_id).second) {
            result.diagnostics.push_back({rec.line, "duplicate trial_id '" + t.trial_id + "'"});
            continue;
        }
        if (apply_truncation(t)) ++result.truncated;
        if (t.correct && t.response && !is_solution(*t.response, t.problem)) {
            result.diagnostics.push_back({rec.line, "marked correct but response does not reach 24", false});
        }
        result.dataset.trials.push_back(std::move(t));
    }
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const IngestDiagnostic& a, const IngestDiagnostic& b) { return a.line < b.line; });
    result.dataset.provenance.push_back({source_name, sha256_hex(text), result.dataset.trials.size()});
    return result;
}

IngestResult ingest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto format = path.extension() == ".csv" ? InputFormat::Csv : InputFormat::Jsonl;
    return ingest_text(buf.str(), format, path.filename().string());
}

}  // namespace tracegraph::pipeline
