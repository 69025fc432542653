#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "noisyci/graph.hpp"

namespace noisyci {

// {"n": 4, "edges": [[0,1],[1,2]]} for undirected graphs,
// {"n": 4, "arcs": [[0,2],[1,2]]} for DAGs. Vertices are 0-based.

nlohmann::json to_json(const UndirectedGraph& g);
nlohmann::json to_json(const Dag& d);

/// Rejects out-of-range vertices, duplicates, self-loops and (for DAGs) cycles.
UndirectedGraph undirected_from_json(const nlohmann::json& j);
Dag dag_from_json(const nlohmann::json& j);
/// Dispatches on whether the object has "edges" or "arcs".
std::variant<Dag, UndirectedGraph> graph_from_json(const nlohmann::json& j);

std::variant<Dag, UndirectedGraph> load_graph(const std::filesystem::path& path);

}  // namespace noisyci
