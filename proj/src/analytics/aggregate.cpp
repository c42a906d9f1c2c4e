#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tracegraph/analytics/analytics.hpp"
#include "tracegraph/core/errors.hpp"

namespace tracegraph::analytics {

AggregateGraph aggregate_graph(std::span<const SearchGraph> graphs, std::size_t min_count) {
    if (graphs.empty()) throw std::invalid_argument("aggregate_graph needs at least one graph");
    const GameState& root = graphs.front().root();
    using Key = std::tuple<GameState, GameState, std::string>;
    std::map<Key, std::size_t> weights;
    for (const auto& g : graphs) {
        if (g.root() != root) throw RootMismatch("aggregate_graph over different problems");
        std::set<Key> seen;
        for (const auto& e : g.op_edges()) seen.emplace(e.from, e.to, e.label());
        for (const auto& e : g.subgoal_edges()) seen.emplace(e.from, e.to, "subgoal");
        for (const auto& key : seen) ++weights[key];
    }
    AggregateGraph out{root, {root}, {}, 0};
    for (const auto& [key, weight] : weights) {
        out.total_weight_before_filter += weight;
        if (weight < min_count) continue;
        const auto& [from, to, label] = key;
        out.nodes.insert(from);
        out.nodes.insert(to);
        out.edges.push_back(AggregateEdge{from, to, label, weight});
    }
    return out;
}

std::string AggregateGraph::to_dot(const std::string& name) const {
    std::map<GameState, std::size_t> ids;
    for (const auto& n : nodes) ids.emplace(n, ids.size());
    std::size_t max_weight = 1;
    for (const auto& e : edges) max_weight = std::max(max_weight, e.weight);

    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    for (const auto& [state, id] : ids) {
        out << "  n" << id << " [label=\"" << state.to_string() << "\"";
        if (state == root) out << ", shape=box";
        out << "];\n";
    }
    for (const auto& e : edges) {
        double width = 8.0 * static_cast<double>(e.weight) / static_cast<double>(max_weight);
        out << "  n" << ids.at(e.from) << " -> n" << ids.at(e.to) << " [label=\"" << e.label << " (" << e.weight
            << ")\", penwidth=" << width;
        if (e.label == "subgoal") out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace tracegraph::analytics
