#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tracegraph/core/game_state.hpp"

namespace tracegraph {

inline const Rational kGoalValue{24};

struct OperationEdge {
    GameState from;
    Rational a;
    Operator op = Operator::Add;
    Rational b;
    Rational stated_result;
    GameState to;
    std::size_t order = 0;

    // canonical_op_label with the coder's stated result.
    std::string label() const { return canonical_op_label(a, op, b, stated_result); }

    friend bool operator==(const OperationEdge&, const OperationEdge&) = default;
};

// Backward edge from the goal state to a stated subgoal.
struct SubgoalEdge {
    GameState from;
    GameState to;
    std::size_t order = 0;

    friend bool operator==(const SubgoalEdge&, const SubgoalEdge&) = default;
};

using EdgeRef = std::variant<const OperationEdge*, const SubgoalEdge*>;

// The coded search of one trial: states as nodes, operations and subgoals as
// edges, each edge stamped with its position in the exploration sequence.
class SearchGraph {
public:
    explicit SearchGraph(GameState root);

    const GameState& root() const { return root_; }
    const std::set<GameState>& nodes() const { return nodes_; }
    const std::vector<OperationEdge>& op_edges() const { return op_edges_; }
    const std::vector<SubgoalEdge>& subgoal_edges() const { return subgoal_edges_; }
    const std::optional<std::string>& answer() const { return answer_; }

    bool contains(const GameState& state) const { return nodes_.count(state) > 0; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return op_edges_.size() + subgoal_edges_.size(); }
    std::size_t next_order() const { return next_order_; }

    void add_node(const GameState& state) { nodes_.insert(state); }
    void set_answer(std::string answer) { answer_ = std::move(answer); }

    // Appends an operation edge at the next exploration index.
    const OperationEdge& add_operation(const GameState& from, const Rational& a, Operator op, const Rational& b,
                                       const Rational& stated_result, const GameState& to);
    // Appends a backward edge {goal} -> subgoal at the next exploration index.
    const SubgoalEdge& add_subgoal(const GameState& subgoal, const Rational& goal = kGoalValue);

    // Inserts an edge carrying an explicit order. Throws std::invalid_argument
    // when the order is already taken.
    void insert(OperationEdge edge);
    void insert(SubgoalEdge edge);

    // All edges sorted by exploration order.
    std::vector<EdgeRef> edges_in_order() const;
    // Operation edges only, sorted by exploration order.
    std::vector<const OperationEdge*> operations_in_order() const;

    friend bool operator==(const SearchGraph&, const SearchGraph&) = default;

private:
    void claim_order(std::size_t order);

    GameState root_;
    std::set<GameState> nodes_;
    std::vector<OperationEdge> op_edges_;
    std::vector<SubgoalEdge> subgoal_edges_;
    std::optional<std::string> answer_;
    std::set<std::size_t> used_orders_;
    std::size_t next_order_ = 0;
};

std::size_t edge_order(const EdgeRef& edge);

}  // namespace tracegraph
