#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "noisyci/vertex_set.hpp"

namespace noisyci {

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    auto operator<=>(const Edge&) const = default;
};

struct Arc {
    Vertex from = 0;
    Vertex to = 0;
    auto operator<=>(const Arc&) const = default;
};

/// Number of unordered vertex pairs, C(n, 2).
constexpr std::size_t pair_count(int n) { return n < 2 ? 0 : std::size_t(n) * (n - 1) / 2; }

/// Lexicographic rank of the pair u < v among all pairs of {0..n-1}.
constexpr std::size_t pair_rank(int n, Vertex u, Vertex v) {
    // pairs (0,1..n-1), (1,2..n-1), ...
    return std::size_t(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

/// Simple undirected graph on {0..n-1}.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(int n);
    UndirectedGraph(int n, std::span<const Edge> edges);

    int n() const { return n_; }
    bool has_edge(Vertex u, Vertex v) const { return (adj_[u] >> v) & 1U; }
    VertexSet neighbors(Vertex v) const { return VertexSet(adj_[v]); }
    int degree(Vertex v) const { return neighbors(v).size(); }
    std::size_t edge_count() const;
    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    void add_edge(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);
    UndirectedGraph toggled(Vertex u, Vertex v) const;

    /// Upper-triangular edge indicator packed by pair_rank; only valid for n <= 11.
    std::uint64_t edge_mask() const;
    static UndirectedGraph from_edge_mask(int n, std::uint64_t mask);

    bool operator==(const UndirectedGraph&) const = default;
    auto operator<=>(const UndirectedGraph&) const = default;

private:
    void check_pair(Vertex u, Vertex v) const;

    int n_ = 0;
    std::vector<std::uint64_t> adj_;
};

/// Directed acyclic graph on {0..n-1}. Acyclicity is checked whenever one is built.
class Dag {
public:
    Dag() = default;
    explicit Dag(int n);

    /// Throws std::invalid_argument on self-loops, duplicate arcs, 2-cycles or cycles.
    static Dag from_arcs(int n, std::span<const Arc> arcs);
    /// Returns nullopt when `children` (row u = out-neighbours of u) contains a cycle.
    static std::optional<Dag> from_children(int n, std::vector<std::uint64_t> children);

    int n() const { return n_; }
    bool has_arc(Vertex u, Vertex v) const { return (children_[u] >> v) & 1U; }
    bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }
    VertexSet children(Vertex v) const { return VertexSet(children_[v]); }
    VertexSet parents(Vertex v) const { return VertexSet(parents_[v]); }
    std::size_t arc_count() const;
    /// Arcs sorted by (from, to).
    std::vector<Arc> arcs() const;
    const std::vector<std::uint64_t>& children_rows() const { return children_; }

    /// Single-arc edits; nullopt if the result would be cyclic or the edit is not applicable.
    std::optional<Dag> with_arc(Vertex u, Vertex v) const;
    std::optional<Dag> without_arc(Vertex u, Vertex v) const;
    std::optional<Dag> reversed_arc(Vertex u, Vertex v) const;

    bool operator==(const Dag&) const = default;
    auto operator<=>(const Dag&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> children_;
    std::vector<std::uint64_t> parents_;
};

/// Unshielded collider u -> center <- w with u < w.
struct VStructure {
    Vertex u = 0;
    Vertex center = 0;
    Vertex w = 0;
    auto operator<=>(const VStructure&) const = default;
};

/// Identifies a Markov equivalence class: skeleton plus sorted v-structures.
struct MecKey {
    UndirectedGraph skeleton;
    std::vector<VStructure> vstructs;
    bool operator==(const MecKey&) const = default;
    auto operator<=>(const MecKey&) const = default;
};

struct MecKeyHash {
    std::size_t operator()(const MecKey& key) const noexcept;
};

// -- constructors ----------------------------------------------------------

UndirectedGraph make_chain_undirected(int n);
UndirectedGraph make_complete_undirected(int n);

/// Chain DAG over `order`; dirs[i] true means order[i] -> order[i+1].
Dag make_chain_dag(std::span<const Vertex> order, const std::vector<bool>& dirs);

Dag make_empty_dag(int n);
/// v0 -> v2 <- v1 followed by v2 -> v3 -> ... -> v_{n-1}.
Dag make_fork_chain_dag(int n);
/// make_fork_chain_dag plus the arc v0 -> v1; differs from it in exactly one query.
Dag make_fork_chain_shortcut_dag(int n);
/// r disjoint complete DAGs on consecutive blocks of n/r vertices, arcs low -> high.
Dag make_cliques_dag(int n, int r);
Dag make_complete_dag(int n);
/// Vertices 0 and 1 joined to every other vertex; `join_hubs` adds the edge {0, 1}.
UndirectedGraph make_hub_graph(int n, bool join_hubs);

enum class NamedGraph { EmptyDag, ForkChain, ForkChainShortcut, Cliques, CompleteDag, HubG1, HubG2 };

std::variant<Dag, UndirectedGraph> named_graph(NamedGraph kind, int n, int r = 0);
std::optional<NamedGraph> parse_named_graph(std::string_view name);

// -- structure -------------------------------------------------------------

UndirectedGraph skeleton(const Dag& d);
UndirectedGraph moral_graph(const Dag& d);
std::vector<VStructure> v_structures(const Dag& d);
MecKey mec_key(const Dag& d);
bool markov_equivalent(const Dag& a, const Dag& b);

/// True when the graph is a simple path through all n >= 1 vertices.
bool is_chain(const UndirectedGraph& g);
/// Vertex sequence of a chain, starting from its lowest-numbered leaf.
std::vector<Vertex> chain_order(const UndirectedGraph& g);
/// Colliders of a DAG: vertices with at least two parents.
VertexSet colliders(const Dag& d);

/// Maximum number of internally vertex-disjoint u-v paths with at least one
/// internal vertex (the direct edge does not count).
int pair_connectivity(const UndirectedGraph& g, Vertex u, Vertex v);
/// Maximum of pair_connectivity over all pairs; 0 for n < 3.
int max_pairwise_connectivity(const UndirectedGraph& g);

}  // namespace noisyci
