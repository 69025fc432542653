#include "noisyci/graph_io.hpp"

#include <fstream>
#include <stdexcept>

namespace noisyci {

namespace {

int read_n(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("graph JSON needs an integer \"n\"");
    const int n = j["n"].get<int>();
    check_vertex_count(n);
    return n;
}

template <typename Pair>
std::vector<Pair> read_pairs(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw std::invalid_argument(std::string("graph JSON needs an array \"") + field + "\"");
    std::vector<Pair> out;
    for (const auto& p : j[field]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw std::invalid_argument(std::string("each entry of \"") + field + "\" must be [a, b]");
        out.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const UndirectedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.n()}, {"edges", edges}};
}

nlohmann::json to_json(const Dag& d) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& a : d.arcs()) arcs.push_back({a.from, a.to});
    return {{"n", d.n()}, {"arcs", arcs}};
}

UndirectedGraph undirected_from_json(const nlohmann::json& j) {
    const int n = read_n(j);
    auto edges = read_pairs<Edge>(j, "edges");
    for (Edge& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    return UndirectedGraph(n, edges);
}

Dag dag_from_json(const nlohmann::json& j) {
    const int n = read_n(j);
    return Dag::from_arcs(n, read_pairs<Arc>(j, "arcs"));
}

std::variant<Dag, UndirectedGraph> graph_from_json(const nlohmann::json& j) {
    const bool has_edges = j.is_object() && j.contains("edges");
    const bool has_arcs = j.is_object() && j.contains("arcs");
    if (has_edges == has_arcs) throw std::invalid_argument("graph JSON needs exactly one of \"edges\" or \"arcs\"");
    if (has_arcs) return dag_from_json(j);
    return undirected_from_json(j);
}

std::variant<Dag, UndirectedGraph> load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return graph_from_json(j);
}

}  // namespace noisyci
