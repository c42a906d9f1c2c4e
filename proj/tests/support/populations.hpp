#pragma once

// Seeded synthetic search populations for consistency analyses.

#include <random>
#include <vector>

#include "tracegraph/game24/game24.hpp"

namespace tracegraph::testing {

// A population that opens most trials with the same three-step chain (the
// first legal action at each step), then explores randomly from the cursor,
// resetting at dead ends.
inline SearchGraph biased_agent(const game24::Problem& problem, std::size_t budget, double p_opening,
                                std::mt19937_64& rng) {
    const GameState root = problem.state();
    SearchGraph g(root);
    GameState cursor = root;
    std::bernoulli_distribution use_opening(p_opening);
    if (use_opening(rng)) {
        for (int step = 0; step < 3 && g.op_edges().size() < budget; ++step) {
            auto acts = game24::legal_actions(cursor);
            auto out = apply_operation(cursor, acts.front().a, acts.front().op, acts.front().b);
            g.add_operation(cursor, acts.front().a, acts.front().op, acts.front().b, out.value, out.next);
            cursor = out.next;
        }
    }
    while (g.op_edges().size() < budget) {
        auto acts = game24::legal_actions(cursor);
        if (acts.empty()) {
            cursor = root;
            continue;
        }
        const auto& act = acts[std::uniform_int_distribution<std::size_t>(0, acts.size() - 1)(rng)];
        auto out = apply_operation(cursor, act.a, act.op, act.b);
        g.add_operation(cursor, act.a, act.op, act.b, out.value, out.next);
        cursor = out.next;
    }
    return g;
}

struct Populations {
    std::vector<SearchGraph> biased;
    std::vector<SearchGraph> random;  // random_agent with matched budgets
};

inline Populations biased_vs_random(const game24::Problem& problem, std::size_t trials, std::uint64_t seed,
                                    double p_opening = 0.6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> budget(4, 10);
    Populations out;
    for (std::size_t i = 0; i < trials; ++i) {
        std::size_t b = budget(rng);
        out.biased.push_back(biased_agent(problem, b, p_opening, rng));
        out.random.push_back(game24::random_agent(problem, out.biased.back().op_edges().size(), rng()));
    }
    return out;
}

}  // namespace tracegraph::testing
