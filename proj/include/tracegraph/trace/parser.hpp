#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tracegraph/trace/program.hpp"

namespace tracegraph::trace {

enum class DiagnosticKind { Syntax, Semantic };

struct Diagnostic {
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;
    DiagnosticKind kind = DiagnosticKind::Syntax;

    // "3:9: error: unknown operator '&'"
    std::string to_string() const;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using ParseResult = std::variant<TraceProgram, std::vector<Diagnostic>>;

// Parses trace source. Grammar, one statement per line:
//
//   start N N N N
//   explore A <+|-|*|/> B = R
//   goto {N,...}
//   reset
//   subgoal {N,...}
//   answer <text>
//   # comment
//
// Numbers are integers or p/q fractions written without spaces ("8/3",
// "-5"); operators must be separated from operands by whitespace when they
// would otherwise read as a fraction. Blank lines are ignored. Never throws
// on malformed input; every problem becomes a positioned diagnostic.
ParseResult parse(std::string_view source);

// One statement per line, LF terminated. parse(serialize(p)) == p.
std::string serialize(const TraceProgram& program);
std::string serialize(const Statement& statement);

}  // namespace tracegraph::trace
