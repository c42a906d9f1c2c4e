#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/rational.hpp"

namespace tracegraph {

class ExpressionError : public Error {
public:
    using Error::Error;
};

struct EvaluatedExpression {
    Rational value;
    // Literal numbers in the order they appear.
    std::vector<Rational> leaves;
};

// Evaluates an infix arithmetic expression over integer literals with
// + - * / (also x, ×, ÷, −) and parentheses, exactly. Throws ExpressionError
// on malformed input and DivisionByZero when a divisor evaluates to zero.
EvaluatedExpression evaluate_expression(std::string_view text);

// True when `expression` evaluates to exactly `goal` and uses every number of
// `numbers` exactly once. Malformed expressions are simply not solutions.
bool is_solution(std::string_view expression, const std::array<int, 4>& numbers, const Rational& goal = Rational(24));

}  // namespace tracegraph
