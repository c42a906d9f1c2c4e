#include <algorithm>
#include <map>
#include <random>

#include "tracegraph/game24/game24.hpp"

namespace tracegraph::game24 {

std::vector<Action> legal_actions(const GameState& state) {
    std::map<std::string, Action> unique;
    const auto& v = state.values();
    auto add = [&](const Rational& a, Operator op, const Rational& b) {
        if (op == Operator::Div && b.is_zero()) return;
        Action act{a, op, b};
        if (is_commutative(op) && b < a) act = Action{b, op, a};
        unique.emplace(act.label(), act);
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            for (Operator op : kAllOperators) {
                add(v[i], op, v[j]);
                if (!is_commutative(op)) add(v[j], op, v[i]);
            }
        }
    }
    std::vector<Action> out;
    out.reserve(unique.size());
    for (auto& [label, act] : unique) out.push_back(act);
    return out;
}

namespace {

class Explorer {
public:
    explicit Explorer(const GameState& root) : root_(root) {}

    std::vector<Action> unexplored(const GameState& state) {
        std::vector<Action> out;
        if (state.size() < 2) return out;
        const auto& done = explored_[state];
        for (auto& act : legal_actions(state)) {
            if (!done.count(act.label())) out.push_back(act);
        }
        return out;
    }

    void mark(const GameState& from, const Action& act, const GameState& to) {
        explored_[from].emplace(act.label(), to);
    }

    // True when something is still unexplored at or below `state`.
    bool has_work(const GameState& state) {
        if (state.size() < 2) return false;
        if (!unexplored(state).empty()) return true;
        for (const auto& [label, child] : explored_[state]) {
            if (has_work(child)) return true;
        }
        return false;
    }

    std::vector<GameState> children_with_work(const GameState& state) {
        std::vector<GameState> out;
        for (const auto& [label, child] : explored_[state]) {
            if (has_work(child)) out.push_back(child);
        }
        return out;
    }

private:
    GameState root_;
    std::map<GameState, std::map<std::string, GameState>> explored_;
};

template <typename T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
    return items[dist(rng)];
}

}  // namespace

SearchGraph random_agent(const Problem& problem, std::size_t op_budget, std::uint64_t seed) {
    const GameState root = problem.state();
    SearchGraph graph(root);
    Explorer explorer(root);
    std::mt19937_64 rng(seed);
    GameState cursor = root;

    while (graph.op_edges().size() < op_budget) {
        std::vector<Action> actions = explorer.unexplored(cursor);
        if (actions.empty()) {
            cursor = root;
            actions = explorer.unexplored(cursor);
            // Root exhausted: walk down already explored edges towards
            // whatever is still open.
            while (actions.empty()) {
                auto open = explorer.children_with_work(cursor);
                if (open.empty()) return graph;
                cursor = pick(open, rng);
                actions = explorer.unexplored(cursor);
            }
        }
        const Action& act = pick(actions, rng);
        auto outcome = apply_operation(cursor, act.a, act.op, act.b);
        graph.add_operation(cursor, act.a, act.op, act.b, outcome.value, outcome.next);
        explorer.mark(cursor, act, outcome.next);
        cursor = outcome.next;
    }
    return graph;
}

}  // namespace tracegraph::game24
