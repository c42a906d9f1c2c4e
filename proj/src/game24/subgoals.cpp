#include "tracegraph/game24/game24.hpp"

namespace tracegraph::game24 {

std::string_view to_string(SubgoalType type) {
    switch (type) {
        case SubgoalType::Product: return "product";
        case SubgoalType::Sum: return "sum";
        case SubgoalType::Difference: return "difference";
        case SubgoalType::Quotient: return "quotient";
        case SubgoalType::SingleNumber: return "single_number";
        case SubgoalType::Other: return "other";
    }
    return "other";
}

SubgoalType classify_subgoal(const GameState& state, const Rational& goal) {
    if (state.size() == 1) return SubgoalType::SingleNumber;
    if (state.size() != 2) return SubgoalType::Other;
    const Rational& a = state.values()[0];
    const Rational& b = state.values()[1];
    if (a * b == goal) return SubgoalType::Product;
    if (a + b == goal) return SubgoalType::Sum;
    if (abs(a - b) == goal) return SubgoalType::Difference;
    if ((!b.is_zero() && a / b == goal) || (!a.is_zero() && b / a == goal)) return SubgoalType::Quotient;
    return SubgoalType::Other;
}

std::vector<GameState> enumerate_goal_pairs(Operator op, std::int64_t bound, std::int64_t goal) {
    std::vector<GameState> out;
    switch (op) {
        case Operator::Mul:
            for (std::int64_t a = 1; a * a <= goal; ++a) {
                if (goal % a == 0) out.push_back(GameState{Rational(a), Rational(goal / a)});
            }
            break;
        case Operator::Add:
            for (std::int64_t a = 1; 2 * a <= goal; ++a) out.push_back(GameState{Rational(a), Rational(goal - a)});
            break;
        case Operator::Sub:
            for (std::int64_t b = 1; b <= bound; ++b) out.push_back(GameState{Rational(goal + b), Rational(b)});
            break;
        case Operator::Div:
            for (std::int64_t b = 1; b <= bound; ++b) out.push_back(GameState{Rational(goal * b), Rational(b)});
            break;
    }
    return out;
}

}  // namespace tracegraph::game24
