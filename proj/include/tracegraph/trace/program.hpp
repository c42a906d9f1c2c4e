#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tracegraph/core/game_state.hpp"

namespace tracegraph::trace {

struct Start {
    std::array<std::int64_t, 4> numbers{};
    friend bool operator==(const Start&, const Start&) = default;
};

struct Explore {
    Rational a;
    Operator op = Operator::Add;
    Rational b;
    Rational result;
    friend bool operator==(const Explore&, const Explore&) = default;
};

struct Goto {
    GameState state{Rational(0)};
    friend bool operator==(const Goto&, const Goto&) = default;
};

struct Reset {
    friend bool operator==(const Reset&, const Reset&) = default;
};

struct Subgoal {
    GameState state{Rational(0)};
    friend bool operator==(const Subgoal&, const Subgoal&) = default;
};

struct Answer {
    std::string text;
    friend bool operator==(const Answer&, const Answer&) = default;
};

// Text after '#', verbatim.
struct Comment {
    std::string text;
    friend bool operator==(const Comment&, const Comment&) = default;
};

using Statement = std::variant<Start, Explore, Goto, Reset, Subgoal, Answer, Comment>;

// A parsed trace. `lines` maps each statement to its 1-based source line
// when the program came from text; it is empty for programs built in code
// and does not take part in equality.
struct TraceProgram {
    std::vector<Statement> statements;
    std::vector<std::size_t> lines;

    friend bool operator==(const TraceProgram& a, const TraceProgram& b) { return a.statements == b.statements; }
};

}  // namespace tracegraph::trace
