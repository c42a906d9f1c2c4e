#include "tracegraph/core/operator.hpp"

#include "tracegraph/core/errors.hpp"

namespace tracegraph {

char symbol(Operator op) {
    switch (op) {
        case Operator::Add: return '+';
        case Operator::Sub: return '-';
        case Operator::Mul: return '*';
        case Operator::Div: return '/';
    }
    return '?';
}

std::optional<Operator> operator_from_symbol(char c) {
    switch (c) {
        case '+': return Operator::Add;
        case '-': return Operator::Sub;
        case '*': return Operator::Mul;
        case '/': return Operator::Div;
        default: return std::nullopt;
    }
}

std::string_view name(Operator op) {
    switch (op) {
        case Operator::Add: return "add";
        case Operator::Sub: return "sub";
        case Operator::Mul: return "mul";
        case Operator::Div: return "div";
    }
    return "?";
}

Rational apply(Rational a, Operator op, Rational b) {
    switch (op) {
        case Operator::Add: return a + b;
        case Operator::Sub: return a - b;
        case Operator::Mul: return a * b;
        case Operator::Div:
            if (b.is_zero()) {
                throw DivisionByZero(a.to_string() + " / 0");
            }
            return a / b;
    }
    return {};
}

}  // namespace tracegraph
