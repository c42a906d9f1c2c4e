#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tracegraph/core/operator.hpp"
#include "tracegraph/core/rational.hpp"

namespace tracegraph {

// Multiset of available numbers, kept sorted ascending so that equal
// multisets compare (and hash) identically. Never empty.
class GameState {
public:
    GameState(std::initializer_list<Rational> values);
    explicit GameState(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    std::size_t count(const Rational& value) const;

    // True when `a` and `b` can both be drawn from the state, respecting
    // multiplicity (a == b needs two copies).
    bool has_operands(const Rational& a, const Rational& b) const;

    // "{3,3,8,8}"
    std::string to_string() const;

    friend bool operator==(const GameState&, const GameState&) = default;
    friend std::strong_ordering operator<=>(const GameState& a, const GameState& b);

private:
    std::vector<Rational> values_;
};

struct GameStateHash {
    std::size_t operator()(const GameState& s) const noexcept;
};

struct OperationOutcome {
    Rational value;
    GameState next;
};

// Removes a and b from `state` and inserts a ⊛ b.
// Throws MissingOperand when the state lacks the operands and DivisionByZero
// for a division by zero.
OperationOutcome apply_operation(const GameState& state, const Rational& a, Operator op, const Rational& b);

// Removes whichever of a, b are present (each at most once) and inserts
// `result`. Used to record what a coder asserted even when the step is
// invalid.
GameState replace_operands(const GameState& state, const Rational& a, const Rational& b, const Rational& result);

// "a⊛b=r" with operands of commutative operators in ascending order.
std::string canonical_op_label(const Rational& a, Operator op, const Rational& b, const Rational& result);
std::string canonical_op_label(const Rational& a, Operator op, const Rational& b);

}  // namespace tracegraph
