#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracegraph/core/operator.hpp"
#include "tracegraph/core/search_graph.hpp"

namespace tracegraph::game24 {

inline constexpr int kMinNumber = 1;
inline constexpr int kMaxNumber = 13;

// Four starting numbers in 1..13, stored sorted.
class Problem {
public:
    // Throws std::invalid_argument when a number is outside 1..13.
    explicit Problem(std::array<int, 4> numbers);

    const std::array<int, 4>& numbers() const { return numbers_; }
    GameState state() const;
    std::string key() const;  // "3 3 8 8"

    friend bool operator==(const Problem&, const Problem&) = default;
    friend auto operator<=>(const Problem&, const Problem&) = default;

private:
    std::array<int, 4> numbers_;
};

// All 1820 multisets of four numbers in 1..13, in lexicographic order.
std::vector<Problem> all_problems();

struct SolveResult {
    bool solvable = false;
    std::optional<std::string> witness;  // infix expression evaluating to the goal
};

// Exhaustive pairwise reduction over exact rationals: at each step pick two of
// the remaining numbers and one permitted operator (both orders for - and /),
// skipping division by zero. Deterministic; the first solution found is the
// witness.
SolveResult solve(const Problem& problem, OperatorSet operators, const Rational& goal = kGoalValue);

struct ProblemClassification {
    bool solvable = false;
    bool solvable_without_division = false;
    std::optional<std::string> witness;

    bool division_required() const { return solvable && !solvable_without_division; }
};

ProblemClassification classify(const Problem& problem, const Rational& goal = kGoalValue);

enum class SubgoalType { Product, Sum, Difference, Quotient, SingleNumber, Other };

inline constexpr std::array<SubgoalType, 6> kAllSubgoalTypes{SubgoalType::Product,  SubgoalType::Sum,
                                                             SubgoalType::Difference, SubgoalType::Quotient,
                                                             SubgoalType::SingleNumber, SubgoalType::Other};

std::string_view to_string(SubgoalType type);

// How the goal can be reached from `state` in one step. Precedence for
// two-number states: Product, Sum, Difference (either order), Quotient
// (either order). Singletons are SingleNumber; larger states are Other.
SubgoalType classify_subgoal(const GameState& state, const Rational& goal = kGoalValue);

// Unordered natural pairs {a, b} that reach the goal with `op`. For - and /
// the pair is read as a ⊛ b with a > b, and the smaller member is bounded by
// `bound` since the families are infinite.
std::vector<GameState> enumerate_goal_pairs(Operator op, std::int64_t bound = 13, std::int64_t goal = 24);

// Legal operations from a state: every pair of positions with every operator,
// + and * once per unordered pair, - and / in both orders, no division by
// zero, duplicates (equal values) collapsed. Sorted by canonical label.
struct Action {
    Rational a;
    Operator op;
    Rational b;

    std::string label() const { return canonical_op_label(a, op, b); }
};
std::vector<Action> legal_actions(const GameState& state);

// Explores random legal, not yet explored operations from the cursor state,
// moving the cursor to each result and returning to the root at dead ends.
// Stops after `op_budget` edges or when nothing reachable is left unexplored.
// Same (problem, budget, seed) gives the same graph.
SearchGraph random_agent(const Problem& problem, std::size_t op_budget, std::uint64_t seed);

}  // namespace tracegraph::game24
