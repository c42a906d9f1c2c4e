#include "tracegraph/core/search_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracegraph {

SearchGraph::SearchGraph(GameState root) : root_(std::move(root)) {
    nodes_.insert(root_);
}

void SearchGraph::claim_order(std::size_t order) {
    if (!used_orders_.insert(order).second) {
        throw std::invalid_argument("duplicate edge order " + std::to_string(order));
    }
    next_order_ = std::max(next_order_, order + 1);
}

const OperationEdge& SearchGraph::add_operation(const GameState& from, const Rational& a, Operator op,
                                                const Rational& b, const Rational& stated_result,
                                                const GameState& to) {
    insert(OperationEdge{from, a, op, b, stated_result, to, next_order_});
    return op_edges_.back();
}

const SubgoalEdge& SearchGraph::add_subgoal(const GameState& subgoal, const Rational& goal) {
    insert(SubgoalEdge{GameState{goal}, subgoal, next_order_});
    return subgoal_edges_.back();
}

void SearchGraph::insert(OperationEdge edge) {
    claim_order(edge.order);
    nodes_.insert(edge.from);
    nodes_.insert(edge.to);
    op_edges_.push_back(std::move(edge));
}

void SearchGraph::insert(SubgoalEdge edge) {
    if (edge.from.size() != 1) {
        throw std::invalid_argument("subgoal edge must start at a singleton goal state");
    }
    claim_order(edge.order);
    nodes_.insert(edge.from);
    nodes_.insert(edge.to);
    subgoal_edges_.push_back(std::move(edge));
}

std::size_t edge_order(const EdgeRef& edge) {
    return std::visit([](const auto* e) { return e->order; }, edge);
}

std::vector<EdgeRef> SearchGraph::edges_in_order() const {
    std::vector<EdgeRef> out;
    out.reserve(edge_count());
    for (const auto& e : op_edges_) out.emplace_back(&e);
    for (const auto& e : subgoal_edges_) out.emplace_back(&e);
    std::sort(out.begin(), out.end(), [](const EdgeRef& l, const EdgeRef& r) { return edge_order(l) < edge_order(r); });
    return out;
}

std::vector<const OperationEdge*> SearchGraph::operations_in_order() const {
    std::vector<const OperationEdge*> out;
    out.reserve(op_edges_.size());
    for (const auto& e : op_edges_) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](const auto* l, const auto* r) { return l->order < r->order; });
    return out;
}

}  // namespace tracegraph
