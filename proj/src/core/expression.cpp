#include "tracegraph/core/expression.hpp"

#include <algorithm>
#include <cctype>

namespace tracegraph {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    EvaluatedExpression run() {
        EvaluatedExpression out;
        leaves_ = &out.leaves;
        out.value = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ExpressionError(what + " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    // Returns '+', '-', '*', '/' or 0.
    char peek_operator(bool multiplicative) {
        skip_space();
        std::size_t save = pos_;
        char found = 0;
        if (multiplicative) {
            if (consume("*") || consume("x") || consume("X") || consume("×")) found = '*';
            else if (consume("/") || consume("÷")) found = '/';
        } else {
            if (consume("+")) found = '+';
            else if (consume("-") || consume("−")) found = '-';
        }
        pos_ = save;
        return found;
    }

    void take_operator() {
        if (consume("×") || consume("÷") || consume("−")) return;
        ++pos_;
    }

    Rational parse_sum() {
        Rational acc = parse_product();
        while (char op = peek_operator(false)) {
            take_operator();
            Rational rhs = parse_product();
            acc = op == '+' ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    Rational parse_product() {
        Rational acc = parse_atom();
        while (char op = peek_operator(true)) {
            take_operator();
            Rational rhs = parse_atom();
            if (op == '*') {
                acc = acc * rhs;
            } else {
                if (rhs.is_zero()) throw DivisionByZero("division by zero in expression");
                acc = acc / rhs;
            }
        }
        return acc;
    }

    Rational parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(' || c == '[') {
            char close = c == '(' ? ')' : ']';
            ++pos_;
            Rational inner = parse_sum();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != close) fail(std::string("expected '") + close + "'");
            ++pos_;
            return inner;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            fail("expected a number");
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        auto value = Rational::parse(text_.substr(start, pos_ - start));
        if (!value) fail("number out of range");
        leaves_->push_back(*value);
        return *value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Rational>* leaves_ = nullptr;
};

}  // namespace

EvaluatedExpression evaluate_expression(std::string_view text) {
    return Parser(text).run();
}

bool is_solution(std::string_view expression, const std::array<int, 4>& numbers, const Rational& goal) {
    EvaluatedExpression eval;
    try {
        eval = evaluate_expression(expression);
    } catch (const Error&) {
        return false;
    }
    if (eval.value != goal) return false;
    std::vector<Rational> expected(numbers.begin(), numbers.end());
    std::sort(expected.begin(), expected.end());
    std::sort(eval.leaves.begin(), eval.leaves.end());
    return eval.leaves == expected;
}

}  // namespace tracegraph
