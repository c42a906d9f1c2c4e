#pragma once

#include <optional>

#include "tracegraph/core/search_graph.hpp"

namespace tracegraph::metrics {

struct GedConfig {
    double node_insert_delete_cost = 1.0;
    double edge_insert_delete_cost = 1.0;
    double edge_relabel_cost = 1.0;
    bool clamp_to_unit = true;

    // Throws std::invalid_argument on negative costs.
    void check() const;
};

// Edit distance with node matching locked to equal states. Nodes present in
// only one graph cost one insertion/deletion each. Between a node pair present
// in both graphs, parallel edges are compared as label multisets (canonical
// operation labels, "subgoal" for subgoal edges): unmatched labels on both
// sides pair up as relabels, the surplus is inserted or deleted. Edges
// touching an unmatched node are inserted or deleted. Exact, no search.
// Throws RootMismatch when the roots differ.
double graph_edit_distance(const SearchGraph& g1, const SearchGraph& g2, const GedConfig& cfg = {});

struct NormalizedGed {
    double raw = 0.0;         // edit distance; 0 when either side is absent
    double normalized = 0.0;  // raw / (max |V| + max |E|), unclamped
    double clamped = 0.0;     // min(normalized, 1)

    // The value selected by cfg.clamp_to_unit.
    double value(const GedConfig& cfg) const { return cfg.clamp_to_unit ? clamped : normalized; }
};

// Normalizes by max(|V1|,|V2|) + max(|E1|,|E2|). An absent graph (a coding
// that does not run) scores exactly 1 against anything.
NormalizedGed normalized_ged_scores(const std::optional<SearchGraph>& g1, const std::optional<SearchGraph>& g2,
                                    const GedConfig& cfg = {});

double normalized_ged(const std::optional<SearchGraph>& g1, const std::optional<SearchGraph>& g2,
                      const GedConfig& cfg = {});

}  // namespace tracegraph::metrics
