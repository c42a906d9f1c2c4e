#pragma once

#include <cstddef>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracegraph {

enum class ErrorKind { NonRunnable, WrongResult, MissingOperand, MissingNode, DivisionByZero };

inline constexpr std::string_view kErrorKindNames[] = {"NonRunnable", "WrongResult", "MissingOperand", "MissingNode",
                                                      "DivisionByZero"};

inline std::string_view to_string(ErrorKind kind) {
    return kErrorKindNames[static_cast<std::size_t>(kind)];
}

inline std::optional<ErrorKind> error_kind_from_string(std::string_view text) {
    for (std::size_t i = 0; i < std::size(kErrorKindNames); ++i) {
        if (kErrorKindNames[i] == text) return static_cast<ErrorKind>(i);
    }
    return std::nullopt;
}

// One semantic problem in a coded trace. NonRunnable covers the whole trace
// and carries no statement index; every other kind points at a statement
// (1-based position in the program, comments included).
struct ValidationError {
    ErrorKind kind = ErrorKind::NonRunnable;
    std::optional<std::size_t> statement_index;
    std::optional<std::size_t> line;
    std::string detail;

    friend bool operator==(const ValidationError&, const ValidationError&) = default;
};

struct ValidationReport {
    std::vector<ValidationError> errors;

    bool clean() const { return errors.empty(); }
    std::size_t error_count() const { return errors.size(); }
    std::size_t count(ErrorKind kind) const {
        std::size_t n = 0;
        for (const auto& e : errors) n += e.kind == kind ? 1 : 0;
        return n;
    }
    bool has(ErrorKind kind) const { return count(kind) > 0; }

    // One error per line, e.g. "WrongResult at statement 2 (line 2): 8*3 is 24, not 25".
    std::string render() const {
        std::string out;
        for (const auto& e : errors) {
            out += to_string(e.kind);
            if (e.statement_index) out += " at statement " + std::to_string(*e.statement_index);
            if (e.line) out += " (line " + std::to_string(*e.line) + ")";
            if (!e.detail.empty()) out += ": " + e.detail;
            out += '\n';
        }
        return out;
    }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

}  // namespace tracegraph
