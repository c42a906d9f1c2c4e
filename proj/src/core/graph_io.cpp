#include "tracegraph/core/graph_io.hpp"

#include <map>
#include <sstream>

#include "tracegraph/core/errors.hpp"

namespace tracegraph {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw SchemaError("expected a rational string, got " + j.dump());
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw SchemaError("malformed rational '" + j.get<std::string>() + "'");
    return *r;
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t order_from_json(const json& j) {
    const json& o = require(j, "order");
    if (!o.is_number_integer() || o.get<long long>() < 0) throw SchemaError("order must be a non-negative integer");
    return o.get<std::size_t>();
}

}  // namespace

json state_to_json(const GameState& state) {
    json arr = json::array();
    for (const auto& v : state.values()) arr.push_back(v.to_string());
    return arr;
}

GameState state_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("state must be a non-empty array");
    std::vector<Rational> values;
    for (const auto& v : j) values.push_back(rational_from_json(v));
    return GameState(std::move(values));
}

json graph_to_json(const SearchGraph& graph) {
    json out;
    out["schema_version"] = kGraphSchemaVersion;
    out["root"] = state_to_json(graph.root());
    json nodes = json::array();
    for (const auto& n : graph.nodes()) nodes.push_back(state_to_json(n));
    out["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& ref : graph.edges_in_order()) {
        if (const auto* const* op = std::get_if<const OperationEdge*>(&ref)) {
            const OperationEdge& e = **op;
            edges.push_back({{"kind", "op"},
                             {"from", state_to_json(e.from)},
                             {"a", e.a.to_string()},
                             {"op", std::string(1, symbol(e.op))},
                             {"b", e.b.to_string()},
                             {"result", e.stated_result.to_string()},
                             {"to", state_to_json(e.to)},
                             {"order", e.order}});
        } else {
            const SubgoalEdge& e = *std::get<const SubgoalEdge*>(ref);
            edges.push_back(
                {{"kind", "subgoal"}, {"from", state_to_json(e.from)}, {"to", state_to_json(e.to)}, {"order", e.order}});
        }
    }
    out["edges"] = std::move(edges);
    out["answer"] = graph.answer() ? json(*graph.answer()) : json(nullptr);
    return out;
}

SearchGraph graph_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("graph must be a JSON object");
    const json& version = require(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kGraphSchemaVersion) {
        throw SchemaError("unsupported graph schema_version " + version.dump());
    }
    SearchGraph graph(state_from_json(require(j, "root")));
    const json& nodes = require(j, "nodes");
    if (!nodes.is_array()) throw SchemaError("nodes must be an array");
    for (const auto& n : nodes) graph.add_node(state_from_json(n));
    const json& edges = require(j, "edges");
    if (!edges.is_array()) throw SchemaError("edges must be an array");
    try {
        for (const auto& e : edges) {
            std::string kind = require(e, "kind").get<std::string>();
            if (kind == "op") {
                std::string op_text = require(e, "op").get<std::string>();
                auto op = op_text.size() == 1 ? operator_from_symbol(op_text[0]) : std::nullopt;
                if (!op) throw SchemaError("unknown operator '" + op_text + "'");
                graph.insert(OperationEdge{state_from_json(require(e, "from")), rational_from_json(require(e, "a")), *op,
                                           rational_from_json(require(e, "b")),
                                           rational_from_json(require(e, "result")),
                                           state_from_json(require(e, "to")), order_from_json(e)});
            } else if (kind == "subgoal") {
                graph.insert(
                    SubgoalEdge{state_from_json(require(e, "from")), state_from_json(require(e, "to")), order_from_json(e)});
            } else {
                throw SchemaError("unknown edge kind '" + kind + "'");
            }
        }
    } catch (const json::exception& ex) {
        throw SchemaError(std::string("malformed edge: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(ex.what());
    }
    if (auto it = j.find("answer"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw SchemaError("answer must be a string or null");
        graph.set_answer(it->get<std::string>());
    }
    return graph;
}

std::string graph_to_dot(const SearchGraph& graph, const std::string& name) {
    std::map<GameState, std::size_t> ids;
    for (const auto& n : graph.nodes()) ids.emplace(n, ids.size());
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    for (const auto& [state, id] : ids) {
        out << "  n" << id << " [label=\"" << state.to_string() << "\"";
        if (state == graph.root()) out << ", shape=box";
        out << "];\n";
    }
    for (const auto& ref : graph.edges_in_order()) {
        if (const auto* const* op = std::get_if<const OperationEdge*>(&ref)) {
            const OperationEdge& e = **op;
            out << "  n" << ids.at(e.from) << " -> n" << ids.at(e.to) << " [label=\"" << e.order << ": " << e.label()
                << "\"];\n";
        } else {
            const SubgoalEdge& e = *std::get<const SubgoalEdge*>(ref);
            out << "  n" << ids.at(e.from) << " -> n" << ids.at(e.to) << " [label=\"" << e.order
                << ": subgoal\", style=dashed];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace tracegraph
