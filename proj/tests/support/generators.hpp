#pragma once

// Seeded random generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "tracegraph/game24/game24.hpp"
#include "tracegraph/trace/execute.hpp"
#include "tracegraph/trace/program.hpp"

namespace tracegraph::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))]; }
    std::mt19937_64& rng() { return rng_; }

    Rational rational() {
        std::int64_t den = chance(0.6) ? 1 : integer(1, 12);
        return Rational(integer(-60, 60), den);
    }

    GameState state() {
        std::vector<Rational> values;
        auto n = integer(1, 4);
        for (std::int64_t i = 0; i < n; ++i) values.push_back(rational());
        return GameState(std::move(values));
    }

    std::string text(bool allow_edge_space) {
        static const std::string alphabet =
            "abcdefghijklmnopqrstuvwxyzABC0123456789 +-*/=(){}#,.;:'\"!?&^%$@~_|<>[]\t";
        std::string out;
        auto len = integer(0, 30);
        for (std::int64_t i = 0; i < len; ++i) out += alphabet[static_cast<std::size_t>(integer(0, alphabet.size() - 1))];
        if (!allow_edge_space) {
            while (!out.empty() && (out.front() == ' ' || out.front() == '\t')) out.erase(out.begin());
            while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
            if (out.empty()) out = "x";
        }
        return out;
    }

    trace::Statement statement() {
        switch (integer(0, 6)) {
            case 0:
            case 1:
                return trace::Explore{rational(), kAllOperators[static_cast<std::size_t>(integer(0, 3))], rational(),
                                      rational()};
            case 2: return trace::Goto{state()};
            case 3: return trace::Reset{};
            case 4: return trace::Subgoal{state()};
            case 5: return trace::Answer{text(false)};
            default: return trace::Comment{text(true)};
        }
    }

    // Syntactically valid program: optional leading comments, one start,
    // then arbitrary statements.
    trace::TraceProgram program() {
        trace::TraceProgram p;
        while (chance(0.2)) p.statements.push_back(trace::Comment{text(true)});
        p.statements.push_back(
            trace::Start{{integer(-20, 20), integer(-20, 20), integer(-20, 20), integer(-20, 20)}});
        auto n = integer(0, 25);
        for (std::int64_t i = 0; i < n; ++i) p.statements.push_back(statement());
        return p;
    }

    // Validator-clean graph from `problem` with at most `max_nodes` nodes:
    // random legal explores from the cursor, resets, repeats and subgoals.
    SearchGraph clean_graph(const game24::Problem& problem, std::size_t max_nodes) {
        for (;;) {
            trace::TraceProgram p;
            const auto& nums = problem.numbers();
            p.statements.push_back(trace::Start{{nums[0], nums[1], nums[2], nums[3]}});
            GameState cursor = problem.state();
            std::vector<trace::Explore> done;
            auto steps = integer(0, 5);
            for (std::int64_t i = 0; i < steps; ++i) {
                auto roll = integer(0, 9);
                if (roll == 0) {
                    p.statements.push_back(trace::Reset{});
                    cursor = problem.state();
                } else if (roll == 1) {
                    p.statements.push_back(trace::Subgoal{pick(game24::enumerate_goal_pairs(Operator::Mul))});
                } else if (roll == 2 && !done.empty()) {
                    p.statements.push_back(trace::Reset{});
                    p.statements.push_back(done.front());
                    cursor = apply_operation(problem.state(), done.front().a, done.front().op, done.front().b).next;
                } else {
                    auto actions = game24::legal_actions(cursor);
                    if (actions.empty()) {
                        p.statements.push_back(trace::Reset{});
                        cursor = problem.state();
                        continue;
                    }
                    const auto& act = pick(actions);
                    auto outcome = apply_operation(cursor, act.a, act.op, act.b);
                    trace::Explore e{act.a, act.op, act.b, outcome.value};
                    if (cursor == problem.state()) done.push_back(e);
                    p.statements.push_back(e);
                    cursor = outcome.next;
                }
            }
            auto run = trace::execute(p);
            if (run.report.clean() && run.graph.node_count() <= max_nodes) return run.graph;
        }
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace tracegraph::testing
