#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tracegraph/core/trial.hpp"

namespace tracegraph::pipeline {

// Responses later than this were cut off by the recorder; one second of lag
// past the 180 s limit is tolerated.
inline constexpr double kTruncationThresholdSeconds = 181.0;

struct SourceDigest {
    std::string path;
    std::string sha256;  // lowercase hex
    std::size_t records = 0;

    friend bool operator==(const SourceDigest&, const SourceDigest&) = default;
};

struct Dataset {
    std::vector<Trial> trials;
    std::vector<SourceDigest> provenance;

    // participant_id -> trial_ids, in dataset order.
    std::map<std::string, std::vector<std::string>> participants() const;
    const Trial* find(std::string_view trial_id) const;
};

struct IngestDiagnostic {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::string message;
    bool fatal = true;     // false for warnings on kept records

    std::string to_string() const;
};

struct IngestResult {
    Dataset dataset;
    std::vector<IngestDiagnostic> diagnostics;
    std::size_t truncated = 0;
};

enum class InputFormat { Jsonl, Csv };

// Applies the time-limit rule in place. Returns true when the trial was cut.
bool apply_truncation(Trial& trial);

// Parses records, applies truncation and drops invalid or duplicate lines
// with a diagnostic. The CSV form has a header row with the trial field names;
// "problem" holds "a b c d".
IngestResult ingest_text(std::string_view text, InputFormat format, const std::string& source_name = "<memory>");

// Format is chosen by extension (.csv, else JSONL). Throws std::runtime_error
// when the file cannot be read.
IngestResult ingest(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

}  // namespace tracegraph::pipeline
