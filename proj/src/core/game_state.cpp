#include "tracegraph/core/game_state.hpp"

#include <algorithm>

#include "tracegraph/core/errors.hpp"

namespace tracegraph {

GameState::GameState(std::initializer_list<Rational> values) : GameState(std::vector<Rational>(values)) {}

GameState::GameState(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("game state must hold at least one number");
    }
    std::sort(values_.begin(), values_.end());
}

std::size_t GameState::count(const Rational& value) const {
    auto [lo, hi] = std::equal_range(values_.begin(), values_.end(), value);
    return static_cast<std::size_t>(hi - lo);
}

bool GameState::has_operands(const Rational& a, const Rational& b) const {
    if (a == b) return count(a) >= 2;
    return count(a) >= 1 && count(b) >= 1;
}

std::string GameState::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) out += ',';
        out += values_[i].to_string();
    }
    out += '}';
    return out;
}

std::strong_ordering operator<=>(const GameState& a, const GameState& b) {
    return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(), b.values_.begin(),
                                                  b.values_.end());
}

std::size_t GameStateHash::operator()(const GameState& s) const noexcept {
    std::size_t h = s.size();
    RationalHash rh;
    for (const auto& v : s.values()) {
        h ^= rh(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

void erase_one(std::vector<Rational>& values, const Rational& v) {
    auto it = std::find(values.begin(), values.end(), v);
    if (it != values.end()) values.erase(it);
}

}  // namespace

OperationOutcome apply_operation(const GameState& state, const Rational& a, Operator op, const Rational& b) {
    if (!state.has_operands(a, b)) {
        throw MissingOperand("operands " + a.to_string() + " and " + b.to_string() + " not available in " +
                             state.to_string());
    }
    Rational value = apply(a, op, b);
    std::vector<Rational> rest = state.values();
    erase_one(rest, a);
    erase_one(rest, b);
    rest.push_back(value);
    return {value, GameState(std::move(rest))};
}

GameState replace_operands(const GameState& state, const Rational& a, const Rational& b, const Rational& result) {
    std::vector<Rational> rest = state.values();
    erase_one(rest, a);
    erase_one(rest, b);
    rest.push_back(result);
    return GameState(std::move(rest));
}

std::string canonical_op_label(const Rational& a, Operator op, const Rational& b, const Rational& result) {
    const Rational* lhs = &a;
    const Rational* rhs = &b;
    if (is_commutative(op) && b < a) std::swap(lhs, rhs);
    return lhs->to_string() + symbol(op) + rhs->to_string() + "=" + result.to_string();
}

std::string canonical_op_label(const Rational& a, Operator op, const Rational& b) {
    if (op == Operator::Div && b.is_zero()) {
        return a.to_string() + "/0=undefined";
    }
    return canonical_op_label(a, op, b, apply(a, op, b));
}

}  // namespace tracegraph
