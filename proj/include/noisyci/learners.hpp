#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "noisyci/ci_table.hpp"
#include "noisyci/graph.hpp"
#include "noisyci/identifiability.hpp"

namespace noisyci {

enum class LearnStatus { Unique, NoneWithin, NotUnique };

inline constexpr std::size_t kDefaultWitnessCap = 16;

/// Outcome of undirected structure learning. `graph` is set for Unique; for
/// NotUnique `witnesses` holds up to the cap of the graphs within distance k,
/// sorted, and `candidates_within` counts all of them.
struct LearnResultMn {
    LearnStatus status = LearnStatus::NoneWithin;
    std::optional<UndirectedGraph> graph;
    std::size_t distance = 0;  // distance of `graph` to the input table
    std::vector<UndirectedGraph> witnesses;
    std::size_t candidates_within = 0;
};

/// Outcome of DAG structure learning. `dag` is a member of the unique class for
/// Unique; `witnesses` lists class keys (sorted, capped) for NotUnique.
struct LearnResultBn {
    LearnStatus status = LearnStatus::NoneWithin;
    std::optional<Dag> dag;
    std::size_t distance = 0;
    std::vector<MecKey> witnesses;
    std::size_t candidates_within = 0;
};

/// Partially directed graph produced by the PC orientation phase.
class Cpdag {
public:
    Cpdag() = default;
    explicit Cpdag(const UndirectedGraph& skeleton);

    int n() const { return n_; }
    bool directed(Vertex u, Vertex v) const { return (arcs_[u] >> v) & 1U; }
    bool undirected(Vertex u, Vertex v) const { return (undirected_[u] >> v) & 1U; }
    bool adjacent(Vertex u, Vertex v) const { return directed(u, v) || directed(v, u) || undirected(u, v); }
    /// Turns the undirected edge u - v into u -> v.
    void orient(Vertex u, Vertex v);

    std::vector<Arc> arcs() const;
    std::vector<Edge> undirected_edges() const;
    UndirectedGraph skeleton() const;

    bool operator==(const Cpdag&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> arcs_;
    std::vector<std::uint64_t> undirected_;
};

/// Raised when a table cannot come from any DAG (conflicting orientations,
/// non-extendable pattern).
class UnfaithfulTable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Separating set found for each removed pair, keyed (u, v) with u < v.
using SepsetMap = std::map<std::pair<Vertex, Vertex>, VertexSet>;

// -- Markov networks -------------------------------------------------------

/// Edge {u, v} iff the table says u, v are dependent given all other vertices.
UndirectedGraph initial_graph(const AnswerTable& t);

/// Candidates are the graphs within edge-Hamming distance k of initial_graph(t);
/// each is kept if its table is within distance k of t.
LearnResultMn solve_mnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap = kDefaultWitnessCap);

/// Reference: sweeps every undirected graph (n <= 6).
LearnResultMn brute_force_mnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap = kDefaultWitnessCap);
LearnResultMn brute_force_mnsl(const AnswerTable& t, std::size_t k, const MarkovAtlas& atlas,
                               std::size_t witness_cap = kDefaultWitnessCap);

// -- Bayesian networks -----------------------------------------------------

/// PC adjacency search. Pairs are visited lexicographically; conditioning sets of
/// size l are drawn from the neighbours of u (then of v) as they stood at the
/// start of level l.
std::pair<UndirectedGraph, SepsetMap> pc_skeleton(const AnswerTable& t);

/// Orients unshielded colliders, then applies Meek rules R1-R4 to a fixpoint.
/// Throws UnfaithfulTable on conflicting orientations.
Cpdag pc_orient(const UndirectedGraph& skel, const SepsetMap& sepsets);
std::optional<Cpdag> try_pc_orient(const UndirectedGraph& skel, const SepsetMap& sepsets);

/// Consistent DAG extension (same skeleton, same v-structures).
/// Throws UnfaithfulTable if none exists.
Dag cpdag_to_dag(const Cpdag& c);
std::optional<Dag> try_cpdag_to_dag(const Cpdag& c);

/// PC end to end; nullopt unless the recovered DAG reproduces `t` exactly.
std::optional<Dag> pc_faithful_dag(const AnswerTable& t);

/// Tries every set of at most k flipped answers, runs PC on each corrected table
/// and keeps the classes whose table matches it exactly.
LearnResultBn solve_bnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap = kDefaultWitnessCap);

/// Reference: sweeps every Markov equivalence class (n <= 5).
LearnResultBn brute_force_bnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap = kDefaultWitnessCap);
LearnResultBn brute_force_bnsl(const AnswerTable& t, std::size_t k, const MecAtlas& atlas,
                               std::size_t witness_cap = kDefaultWitnessCap);

}  // namespace noisyci
