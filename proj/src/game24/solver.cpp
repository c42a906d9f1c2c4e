#include "tracegraph/game24/game24.hpp"

#include <algorithm>
#include <stdexcept>

#include "tracegraph/core/trial.hpp"

namespace tracegraph::game24 {

Problem::Problem(std::array<int, 4> numbers) : numbers_(numbers) {
    for (int n : numbers_) {
        if (n < kMinNumber || n > kMaxNumber) {
            throw std::invalid_argument("problem number " + std::to_string(n) + " outside 1..13");
        }
    }
    std::sort(numbers_.begin(), numbers_.end());
}

GameState Problem::state() const {
    return GameState({Rational(numbers_[0]), Rational(numbers_[1]), Rational(numbers_[2]), Rational(numbers_[3])});
}

std::string Problem::key() const {
    return problem_key(numbers_);
}

std::vector<Problem> all_problems() {
    std::vector<Problem> out;
    out.reserve(1820);
    for (int a = kMinNumber; a <= kMaxNumber; ++a)
        for (int b = a; b <= kMaxNumber; ++b)
            for (int c = b; c <= kMaxNumber; ++c)
                for (int d = c; d <= kMaxNumber; ++d) out.emplace_back(std::array<int, 4>{a, b, c, d});
    return out;
}

namespace {

struct Term {
    Rational value;
    std::string text;
    bool atomic = true;
};

std::string wrap(const Term& t) {
    return t.atomic ? t.text : "(" + t.text + ")";
}

Term combine(const Term& l, Operator op, const Term& r, const Rational& value) {
    return Term{value, wrap(l) + " " + symbol(op) + " " + wrap(r), false};
}

bool search(std::vector<Term>& terms, OperatorSet ops, const Rational& goal, std::string& witness) {
    if (terms.size() == 1) {
        if (terms[0].value == goal) {
            witness = terms[0].text;
            return true;
        }
        return false;
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            std::vector<Term> rest;
            rest.reserve(terms.size() - 1);
            for (std::size_t k = 0; k < terms.size(); ++k) {
                if (k != i && k != j) rest.push_back(terms[k]);
            }
            const Term& x = terms[i];
            const Term& y = terms[j];
            auto attempt = [&](const Term& l, Operator op, const Term& r) {
                if (!ops.contains(op)) return false;
                if (op == Operator::Div && r.value.is_zero()) return false;
                rest.push_back(combine(l, op, r, apply(l.value, op, r.value)));
                bool found = search(rest, ops, goal, witness);
                rest.pop_back();
                return found;
            };
            if (attempt(x, Operator::Add, y) || attempt(x, Operator::Sub, y) || attempt(y, Operator::Sub, x) ||
                attempt(x, Operator::Mul, y) || attempt(x, Operator::Div, y) || attempt(y, Operator::Div, x)) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

SolveResult solve(const Problem& problem, OperatorSet operators, const Rational& goal) {
    if (operators.empty()) throw std::invalid_argument("solve needs at least one operator");
    std::vector<Term> terms;
    for (int n : problem.numbers()) terms.push_back(Term{Rational(n), std::to_string(n), true});
    std::string witness;
    if (search(terms, operators, goal, witness)) return {true, witness};
    return {false, std::nullopt};
}

ProblemClassification classify(const Problem& problem, const Rational& goal) {
    ProblemClassification out;
    auto without = solve(problem, OperatorSet::without_division(), goal);
    if (without.solvable) {
        out.solvable = true;
        out.solvable_without_division = true;
        out.witness = without.witness;
        return out;
    }
    auto full = solve(problem, OperatorSet::all(), goal);
    out.solvable = full.solvable;
    out.witness = full.witness;
    return out;
}

}  // namespace tracegraph::game24
