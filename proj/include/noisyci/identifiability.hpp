#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "noisyci/ci_table.hpp"
#include "noisyci/graph.hpp"
#include "noisyci/kernels.hpp"

namespace noisyci {

/// Exhaustive enumeration is limited to this many vertices.
inline constexpr int kMaxEnumerationVertices = 6;
/// Whole-class sweeps (all MECs, all pairs) are limited to this many vertices.
inline constexpr int kMaxSweepVertices = 5;

/// Closest other graph or class and its table distance (always >= 1).
template <typename Witness>
struct NearestResult {
    std::size_t distance = 0;
    Witness witness;
};

using NearestGraph = NearestResult<UndirectedGraph>;
using NearestDag = NearestResult<Dag>;

// -- enumeration -----------------------------------------------------------

/// All 2^C(n,2) graphs, ordered by UndirectedGraph::edge_mask.
std::vector<UndirectedGraph> enumerate_undirected(int n);

/// Every labelled DAG once: for each skeleton in edge-mask order, every acyclic
/// orientation in orientation-mask order.
void for_each_dag(int n, const std::function<void(const Dag&)>& visit);
std::vector<Dag> enumerate_dags(int n);

struct MecEntry {
    MecKey key;
    Dag representative;  // first member met by for_each_dag
};

/// One entry per Markov equivalence class, in order of first appearance.
std::vector<MecEntry> enumerate_mecs(int n);

/// Every DAG whose skeleton is a chain (all vertex orders and orientations), deduplicated.
std::vector<Dag> enumerate_chain_dags(int n);

// -- atlases: all graphs/classes of one size with their tables --------------

class MarkovAtlas {
public:
    explicit MarkovAtlas(int n);
    int n() const { return n_; }
    std::size_t size() const { return graphs_.size(); }
    const UndirectedGraph& graph(std::size_t i) const { return graphs_[i]; }
    const kernels::TablePack& tables() const { return tables_; }
    std::size_t index_of(const UndirectedGraph& g) const;

private:
    int n_;
    std::vector<UndirectedGraph> graphs_;
    kernels::TablePack tables_;
};

class MecAtlas {
public:
    explicit MecAtlas(int n);
    int n() const { return n_; }
    std::size_t size() const { return mecs_.size(); }
    const MecEntry& mec(std::size_t i) const { return mecs_[i]; }
    const kernels::TablePack& tables() const { return tables_; }
    std::optional<std::size_t> find(const MecKey& key) const;
    std::size_t index_of(const Dag& d) const;

private:
    int n_;
    std::vector<MecEntry> mecs_;
    kernels::TablePack tables_;
    std::unordered_map<MecKey, std::size_t, MecKeyHash> index_;
};

// -- nearest neighbours ------------------------------------------------------

NearestGraph nearest_mn(const UndirectedGraph& g);
NearestGraph nearest_mn(const UndirectedGraph& g, const MarkovAtlas& atlas);
/// Every graph at the nearest distance, in enumeration order.
std::vector<UndirectedGraph> nearest_mn_ties(const UndirectedGraph& g, const MarkovAtlas& atlas);

NearestDag nearest_bn(const Dag& d);
NearestDag nearest_bn(const Dag& d, const MecAtlas& atlas);
/// Representatives of every class at the nearest distance, in enumeration order.
std::vector<Dag> nearest_bn_ties(const Dag& d, const MecAtlas& atlas);

/// Largest k with 2k + 1 <= distance.
std::size_t max_identifiable_k(std::size_t nearest_distance);

/// 2^(n - kappa - 3) - 1, or 0 when the exponent is negative.
std::size_t kappa_identifiability_bound(const UndirectedGraph& g);

// -- chains ------------------------------------------------------------------

/// Nearest neighbour of the n-vertex chain: distance 2^(n-2) - 1, reached by
/// joining leaf 0 to vertex 2.
NearestGraph chain_mn_nearest_closed_form(int n);

/// Swap the first two vertices of the chain order: the old second vertex becomes
/// a leaf fed by the old first vertex, which inherits the second vertex's
/// orientation towards the third.
Dag chain_swap_neighbor(const Dag& d);

/// Closest chain-skeleton DAG outside the class of `d`: distance 2^(n-1) - 2,
/// witnessed by chain_swap_neighbor(d).
NearestDag chain_bn_nearest_in_family(const Dag& d);

/// A fixed set of DAGs with their class keys and tables, reusable across queries.
struct DagFamily {
    explicit DagFamily(std::span<const Dag> dags);
    std::vector<Dag> members;
    std::vector<MecKey> keys;
    kernels::TablePack tables;
};

/// Closest member of `family` not Markov equivalent to `d`; nullopt when every
/// member is equivalent. Ties resolve to the earliest member.
std::optional<NearestDag> closest_in_family(const Dag& d, const DagFamily& family);
std::optional<NearestDag> closest_in_family(const Dag& d, std::span<const Dag> family);

// -- statistics and experiments --------------------------------------------

struct MecStatsRow {
    std::size_t edges = 0;
    std::size_t mec_count = 0;
    std::size_t min = 0;
    std::size_t max = 0;
    std::size_t distance_sum = 0;
    double mean() const { return mec_count == 0 ? 0.0 : double(distance_sum) / double(mec_count); }
};

/// Nearest-class distance statistics grouped by skeleton edge count.
std::vector<MecStatsRow> mec_distance_stats(int n, bool parallel = true);
std::vector<MecStatsRow> mec_distance_stats(const MecAtlas& atlas, bool parallel = true);

enum class NetworkKind { Markov, Bayes };

struct ConjectureCounterexample {
    std::variant<UndirectedGraph, Dag> graph;  // for Bayes: the class representative
    std::size_t nearest_distance = 0;
    /// Closest distance reachable with one edge operation (0 if none is valid).
    std::size_t best_single_edit = 0;
};

struct ConjectureReport {
    NetworkKind kind = NetworkKind::Markov;
    int n = 0;
    std::size_t checked = 0;    // graphs (Markov) or classes (Bayes)
    std::size_t satisfied = 0;  // Bayes: some member DAG reaches a nearest class by one edit
    /// Bayes only: classes with at least one member DAG that cannot.
    std::size_t failed_for_some_member = 0;
    /// Bayes only: classes whose enumeration representative cannot.
    std::size_t failed_for_representative = 0;
    std::vector<ConjectureCounterexample> counterexamples;
};

/// Checks whether a nearest neighbour is always one edge edit away: add/remove
/// for Markov networks; add/remove/reverse an arc of some member DAG for
/// Bayesian networks.
ConjectureReport single_edge_neighbor_report(int n, NetworkKind kind);

}  // namespace noisyci
