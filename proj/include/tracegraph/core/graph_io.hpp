#pragma once

#include <string>

#include "json.hpp"

#include "tracegraph/core/search_graph.hpp"

namespace tracegraph {

inline constexpr int kGraphSchemaVersion = 1;

// Graph JSON, schema_version 1:
//   {"schema_version": 1,
//    "root":  ["3","3","8","8"],
//    "nodes": [["3","3","8","8"], ...],
//    "edges": [{"kind":"op", "from":[...], "a":"8", "op":"/", "b":"3",
//               "result":"8/3", "to":[...], "order":0},
//              {"kind":"subgoal", "from":["24"], "to":["4","6"], "order":1}],
//    "answer": null | "expression"}
// Numbers are "num" or "num/den" strings; edges are listed in exploration order.
nlohmann::json state_to_json(const GameState& state);
GameState state_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const SearchGraph& graph);
// Throws SchemaError on any structural problem.
SearchGraph graph_from_json(const nlohmann::json& j);

// Graphviz rendering of one graph. Subgoal edges are dashed; edge labels carry
// the exploration index and the canonical operation label.
std::string graph_to_dot(const SearchGraph& graph, const std::string& name = "search");

}  // namespace tracegraph
