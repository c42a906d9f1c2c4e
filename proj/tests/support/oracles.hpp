#pragma once

// Independent reference implementations used only by tests. They share no
// code path with the library routines they check.

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/operator.hpp"
#include "tracegraph/core/search_graph.hpp"

namespace tracegraph::testing {

// Expression-tree enumeration: every ordering of the four numbers, every
// operator triple and all five binary tree shapes.
inline bool oracle_solvable(std::array<int, 4> numbers, OperatorSet ops, std::int64_t goal = 24) {
    std::sort(numbers.begin(), numbers.end());
    std::vector<Operator> allowed;
    for (Operator op : kAllOperators)
        if (ops.contains(op)) allowed.push_back(op);
    struct Val {
        bool ok = false;  // false once a division by zero happened below
        Rational v;
    };
    auto f = [](Val x, Operator op, Val y) -> Val {
        if (!x.ok || !y.ok) return {};
        if (op == Operator::Div && y.v.is_zero()) return {};
        return {true, apply(x.v, op, y.v)};
    };
    do {
        Val a{true, numbers[0]}, b{true, numbers[1]}, c{true, numbers[2]}, d{true, numbers[3]};
        for (Operator p : allowed)
            for (Operator q : allowed)
                for (Operator r : allowed) {
                    const Val shapes[] = {
                        f(f(f(a, p, b), q, c), r, d),  // ((a b) c) d
                        f(f(a, p, f(b, q, c)), r, d),  // (a (b c)) d
                        f(f(a, p, b), q, f(c, r, d)),  // (a b) (c d)
                        f(a, p, f(f(b, q, c), r, d)),  // a ((b c) d)
                        f(a, p, f(b, q, f(c, r, d))),  // a (b (c d))
                    };
                    for (const auto& s : shapes)
                        if (s.ok && s.v == Rational(goal)) return true;
                }
    } while (std::next_permutation(numbers.begin(), numbers.end()));
    return false;
}

struct OracleEdge {
    GameState from;
    GameState to;
    std::string label;
};

inline std::vector<OracleEdge> oracle_edges(const SearchGraph& g) {
    std::vector<OracleEdge> out;
    for (const auto& e : g.op_edges()) out.push_back({e.from, e.to, e.label()});
    for (const auto& e : g.subgoal_edges()) out.push_back({e.from, e.to, "subgoal"});
    return out;
}

// Minimum over all edit scripts that keep nodes locked to equal states: try
// every partial matching of g1 edges onto g2 edges with equal endpoints.
inline double oracle_ged(const SearchGraph& g1, const SearchGraph& g2, double node_cost = 1, double edge_cost = 1,
                         double relabel_cost = 1) {
    double cost = 0;
    for (const auto& n : g1.nodes())
        if (!g2.contains(n)) cost += node_cost;
    for (const auto& n : g2.nodes())
        if (!g1.contains(n)) cost += node_cost;
    auto e1 = oracle_edges(g1);
    auto e2 = oracle_edges(g2);
    std::vector<bool> used(e2.size(), false);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double, std::size_t)> go = [&](std::size_t i, double acc, std::size_t matched) {
        if (acc >= best) return;
        if (i == e1.size()) {
            best = std::min(best, acc + edge_cost * static_cast<double>(e2.size() - matched));
            return;
        }
        go(i + 1, acc + edge_cost, matched);
        for (std::size_t j = 0; j < e2.size(); ++j) {
            if (used[j] || !(e1[i].from == e2[j].from) || !(e1[i].to == e2[j].to)) continue;
            used[j] = true;
            go(i + 1, acc + (e1[i].label == e2[j].label ? 0.0 : relabel_cost), matched + 1);
            used[j] = false;
        }
    };
    go(0, 0.0, 0);
    return cost + best;
}

// Gini by the double-sum definition.
inline double oracle_gini(const std::vector<double>& c) {
    double n = static_cast<double>(c.size());
    double sum = 0;
    for (double x : c) sum += x;
    double acc = 0;
    for (double x : c)
        for (double y : c) acc += std::abs(x - y);
    return acc / (2 * n * n * (sum / n));
}

}  // namespace tracegraph::testing
