#include "tracegraph/metrics/ged.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::metrics {

void GedConfig::check() const {
    if (node_insert_delete_cost < 0 || edge_insert_delete_cost < 0 || edge_relabel_cost < 0) {
        throw std::invalid_argument("edit costs must be non-negative");
    }
}

namespace {

using Endpoints = std::pair<GameState, GameState>;
using LabelCounts = std::map<std::string, long>;

std::map<Endpoints, LabelCounts> edge_labels(const SearchGraph& g) {
    std::map<Endpoints, LabelCounts> out;
    for (const auto& e : g.op_edges()) ++out[{e.from, e.to}][e.label()];
    for (const auto& e : g.subgoal_edges()) ++out[{e.from, e.to}]["subgoal"];
    return out;
}

long total(const LabelCounts& counts) {
    long n = 0;
    for (const auto& [label, c] : counts) n += c;
    return n;
}

}  // namespace

double graph_edit_distance(const SearchGraph& g1, const SearchGraph& g2, const GedConfig& cfg) {
    cfg.check();
    if (g1.root() != g2.root()) {
        throw RootMismatch("roots differ: " + g1.root().to_string() + " vs " + g2.root().to_string());
    }
    double cost = 0.0;

    std::size_t shared_nodes = 0;
    for (const auto& n : g1.nodes()) shared_nodes += g2.contains(n) ? 1 : 0;
    cost += cfg.node_insert_delete_cost *
            static_cast<double>(g1.node_count() - shared_nodes + g2.node_count() - shared_nodes);

    // A relabel never costs more than deleting and re-inserting.
    const double substitution = std::min(cfg.edge_relabel_cost, 2.0 * cfg.edge_insert_delete_cost);
    auto labels1 = edge_labels(g1);
    auto labels2 = edge_labels(g2);
    auto matched = [&](const Endpoints& ends) {
        return g1.contains(ends.first) && g2.contains(ends.first) && g1.contains(ends.second) &&
               g2.contains(ends.second);
    };

    for (const auto& [ends, counts1] : labels1) {
        auto it = labels2.find(ends);
        if (!matched(ends) || it == labels2.end()) {
            cost += cfg.edge_insert_delete_cost * static_cast<double>(total(counts1));
            continue;
        }
        const LabelCounts& counts2 = it->second;
        long only1 = 0;
        for (const auto& [label, c] : counts1) {
            auto other = counts2.find(label);
            only1 += std::max(0L, c - (other == counts2.end() ? 0L : other->second));
        }
        long only2 = 0;
        for (const auto& [label, c] : counts2) {
            auto other = counts1.find(label);
            only2 += std::max(0L, c - (other == counts1.end() ? 0L : other->second));
        }
        long relabels = std::min(only1, only2);
        cost += substitution * static_cast<double>(relabels) +
                cfg.edge_insert_delete_cost * static_cast<double>(std::max(only1, only2) - relabels);
    }
    for (const auto& [ends, counts2] : labels2) {
        if (!matched(ends) || !labels1.count(ends)) {
            cost += cfg.edge_insert_delete_cost * static_cast<double>(total(counts2));
        }
    }
    return cost;
}

NormalizedGed normalized_ged_scores(const std::optional<SearchGraph>& g1, const std::optional<SearchGraph>& g2,
                                    const GedConfig& cfg) {
    if (!g1 || !g2) {
        cfg.check();
        return NormalizedGed{0.0, 1.0, 1.0};
    }
    NormalizedGed out;
    out.raw = graph_edit_distance(*g1, *g2, cfg);
    double scale = static_cast<double>(std::max(g1->node_count(), g2->node_count()) +
                                       std::max(g1->edge_count(), g2->edge_count()));
    out.normalized = out.raw / scale;
    out.clamped = std::min(out.normalized, 1.0);
    return out;
}

double normalized_ged(const std::optional<SearchGraph>& g1, const std::optional<SearchGraph>& g2,
                      const GedConfig& cfg) {
    return normalized_ged_scores(g1, g2, cfg).value(cfg);
}

}  // namespace tracegraph::metrics
