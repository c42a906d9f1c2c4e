#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tracegraph/core/rational.hpp"

namespace tracegraph {

enum class Operator : std::uint8_t { Add, Sub, Mul, Div };

inline constexpr std::array<Operator, 4> kAllOperators{Operator::Add, Operator::Sub, Operator::Mul,
                                                       Operator::Div};

char symbol(Operator op);
std::optional<Operator> operator_from_symbol(char c);
std::string_view name(Operator op);

inline bool is_commutative(Operator op) {
    return op == Operator::Add || op == Operator::Mul;
}

// a ⊛ b. Throws DivisionByZero for Div with b == 0.
Rational apply(Rational a, Operator op, Rational b);

// Small value set of operators used to restrict the solver.
class OperatorSet {
public:
    constexpr OperatorSet() = default;
    OperatorSet(std::initializer_list<Operator> ops) {
        for (Operator op : ops) insert(op);
    }

    static OperatorSet all() { return {Operator::Add, Operator::Sub, Operator::Mul, Operator::Div}; }
    static OperatorSet without_division() { return {Operator::Add, Operator::Sub, Operator::Mul}; }

    void insert(Operator op) { bits_ |= bit(op); }
    bool contains(Operator op) const { return (bits_ & bit(op)) != 0; }
    bool empty() const { return bits_ == 0; }
    bool is_subset_of(OperatorSet other) const { return (bits_ & ~other.bits_) == 0; }

    friend bool operator==(OperatorSet, OperatorSet) = default;

private:
    static constexpr std::uint8_t bit(Operator op) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(op)); }
    std::uint8_t bits_ = 0;
};

}  // namespace tracegraph
