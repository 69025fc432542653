#include "noisyci/identifiability.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace noisyci {

namespace {

void check_enumeration_n(int n, int max_n, const char* what) {
    if (n < 1 || n > max_n)
        throw std::invalid_argument(std::string(what) + " supports 1 <= n <= " + std::to_string(max_n) +
                                    ", got " + std::to_string(n));
}

std::size_t pow2(int e) { return std::size_t{1} << e; }

}  // namespace

// -- enumeration -----------------------------------------------------------

std::vector<UndirectedGraph> enumerate_undirected(int n) {
    check_enumeration_n(n, kMaxEnumerationVertices, "enumerate_undirected");
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    std::vector<UndirectedGraph> out;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) out.push_back(UndirectedGraph::from_edge_mask(n, mask));
    return out;
}

void for_each_dag(int n, const std::function<void(const Dag&)>& visit) {
    check_enumeration_n(n, kMaxEnumerationVertices, "for_each_dag");
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto edges = UndirectedGraph::from_edge_mask(n, mask).edges();
        const std::uint64_t orientations = std::uint64_t{1} << edges.size();
        for (std::uint64_t o = 0; o < orientations; ++o) {
            std::vector<std::uint64_t> rows(n, 0);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                // bit clear: low -> high
                const auto [u, v] = edges[e];
                if ((o >> e) & 1U)
                    rows[v] |= std::uint64_t{1} << u;
                else
                    rows[u] |= std::uint64_t{1} << v;
            }
            if (auto d = Dag::from_children(n, std::move(rows))) visit(*d);
        }
    }
}

std::vector<Dag> enumerate_dags(int n) {
    std::vector<Dag> out;
    for_each_dag(n, [&out](const Dag& d) { out.push_back(d); });
    return out;
}

std::vector<MecEntry> enumerate_mecs(int n) {
    std::vector<MecEntry> out;
    std::unordered_map<MecKey, std::size_t, MecKeyHash> seen;
    for_each_dag(n, [&](const Dag& d) {
        MecKey key = mec_key(d);
        if (seen.emplace(key, out.size()).second) out.push_back({std::move(key), d});
    });
    return out;
}

std::vector<Dag> enumerate_chain_dags(int n) {
    check_enumeration_n(n, kMaxEnumerationVertices, "enumerate_chain_dags");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::set<Dag> found;
    do {
        for (std::uint64_t dirs = 0; dirs < (std::uint64_t{1} << (n - 1)); ++dirs) {
            std::vector<bool> bits(n - 1);
            for (int i = 0; i + 1 < n; ++i) bits[i] = (dirs >> i) & 1U;
            found.insert(make_chain_dag(order, bits));
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return {found.begin(), found.end()};
}

// -- atlases ---------------------------------------------------------------

MarkovAtlas::MarkovAtlas(int n) : n_(n), graphs_(enumerate_undirected(n)), tables_(n) {
    if (n < 2) throw std::invalid_argument("MarkovAtlas needs n >= 2");
    tables_.reserve(graphs_.size());
    std::vector<AnswerTable> built(graphs_.size());
    const auto count = static_cast<long long>(graphs_.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < count; ++i) built[i] = table_of_markov(graphs_[i]);
    for (const auto& t : built) tables_.push_back(t);
}

std::size_t MarkovAtlas::index_of(const UndirectedGraph& g) const {
    if (g.n() != n_) throw std::invalid_argument("graph and atlas vertex counts differ");
    return g.edge_mask();
}

MecAtlas::MecAtlas(int n) : n_(n), mecs_(enumerate_mecs(n)), tables_(n) {
    if (n < 2) throw std::invalid_argument("MecAtlas needs n >= 2");
    tables_.reserve(mecs_.size());
    std::vector<AnswerTable> built(mecs_.size());
    const auto count = static_cast<long long>(mecs_.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < count; ++i) built[i] = table_of_bayes(mecs_[i].representative);
    for (std::size_t i = 0; i < mecs_.size(); ++i) {
        tables_.push_back(built[i]);
        index_.emplace(mecs_[i].key, i);
    }
}

std::optional<std::size_t> MecAtlas::find(const MecKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t MecAtlas::index_of(const Dag& d) const {
    if (d.n() != n_) throw std::invalid_argument("DAG and atlas vertex counts differ");
    return *find(mec_key(d));
}

// -- nearest neighbours ------------------------------------------------------

NearestGraph nearest_mn(const UndirectedGraph& g) {
    check_enumeration_n(g.n(), kMaxEnumerationVertices, "nearest_mn");
    return nearest_mn(g, MarkovAtlas(g.n()));
}

NearestGraph nearest_mn(const UndirectedGraph& g, const MarkovAtlas& atlas) {
    const std::size_t self = atlas.index_of(g);
    const auto best = kernels::nearest_parallel(atlas.tables(), atlas.tables().row(self), self);
    if (!best.found()) throw std::invalid_argument("nearest_mn: no other graph exists");
    return {best.distance, atlas.graph(best.row)};
}

std::vector<UndirectedGraph> nearest_mn_ties(const UndirectedGraph& g, const MarkovAtlas& atlas) {
    const std::size_t self = atlas.index_of(g);
    const auto best = nearest_mn(g, atlas);
    std::vector<UndirectedGraph> out;
    for (auto i : kernels::within_parallel(atlas.tables(), atlas.tables().row(self), best.distance))
        if (i != self) out.push_back(atlas.graph(i));
    return out;
}

NearestDag nearest_bn(const Dag& d) {
    check_enumeration_n(d.n(), kMaxSweepVertices, "nearest_bn");
    return nearest_bn(d, MecAtlas(d.n()));
}

NearestDag nearest_bn(const Dag& d, const MecAtlas& atlas) {
    const std::size_t self = atlas.index_of(d);
    const auto best = kernels::nearest_parallel(atlas.tables(), atlas.tables().row(self), self);
    if (!best.found()) throw std::invalid_argument("nearest_bn: no other class exists");
    return {best.distance, atlas.mec(best.row).representative};
}

std::vector<Dag> nearest_bn_ties(const Dag& d, const MecAtlas& atlas) {
    const std::size_t self = atlas.index_of(d);
    const auto best = nearest_bn(d, atlas);
    std::vector<Dag> out;
    for (auto i : kernels::within_parallel(atlas.tables(), atlas.tables().row(self), best.distance))
        if (i != self) out.push_back(atlas.mec(i).representative);
    return out;
}

std::size_t max_identifiable_k(std::size_t nearest_distance) {
    if (nearest_distance == 0) throw std::invalid_argument("nearest distance must be at least 1");
    return (nearest_distance - 1) / 2;
}

std::size_t kappa_identifiability_bound(const UndirectedGraph& g) {
    const int exponent = g.n() - max_pairwise_connectivity(g) - 3;
    if (exponent < 0) return 0;
    return pow2(exponent) - 1;
}

// -- chains ------------------------------------------------------------------

NearestGraph chain_mn_nearest_closed_form(int n) {
    if (n < 3) throw std::invalid_argument("chain closed form needs n >= 3");
    UndirectedGraph witness = make_chain_undirected(n);
    witness.add_edge(0, 2);
    return {pow2(n - 2) - 1, witness};
}

Dag chain_swap_neighbor(const Dag& d) {
    const UndirectedGraph skel = skeleton(d);
    if (d.n() < 3) throw std::invalid_argument("chain swap needs n >= 3");
    const auto order = chain_order(skel);  // throws on non-chains
    const Vertex first = order[0], second = order[1], third = order[2];
    auto rows = d.children_rows();
    auto drop = [&rows](Vertex a, Vertex b) {
        rows[a] &= ~(std::uint64_t{1} << b);
        rows[b] &= ~(std::uint64_t{1} << a);
    };
    auto arc = [&rows](Vertex a, Vertex b) { rows[a] |= std::uint64_t{1} << b; };
    const bool second_to_third = d.has_arc(second, third);
    drop(first, second);
    drop(second, third);
    arc(first, second);
    if (second_to_third)
        arc(first, third);
    else
        arc(third, first);
    return *Dag::from_children(d.n(), std::move(rows));
}

NearestDag chain_bn_nearest_in_family(const Dag& d) {
    if (d.n() < 3) throw std::invalid_argument("chain family neighbour needs n >= 3");
    if (!is_chain(skeleton(d))) throw std::invalid_argument("DAG skeleton is not a chain");
    return {pow2(d.n() - 1) - 2, chain_swap_neighbor(d)};
}

DagFamily::DagFamily(std::span<const Dag> dags) : members(dags.begin(), dags.end()) {
    if (members.empty()) throw std::invalid_argument("DAG family is empty");
    tables = kernels::TablePack(members.front().n());
    keys.reserve(members.size());
    for (const Dag& m : members) {
        keys.push_back(mec_key(m));
        tables.push_back(table_of_bayes(m));
    }
}

std::optional<NearestDag> closest_in_family(const Dag& d, const DagFamily& family) {
    if (d.n() != family.tables.n()) throw std::invalid_argument("DAG and family vertex counts differ");
    const MecKey key = mec_key(d);
    const AnswerTable t = table_of_bayes(d);
    kernels::Nearest best;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        if (family.keys[i] == key) continue;
        const auto dist = kernels::hamming(family.tables.row(i), t.words());
        if (dist < best.distance) best = {dist, i};
    }
    if (!best.found()) return std::nullopt;
    return NearestDag{best.distance, family.members[best.row]};
}

std::optional<NearestDag> closest_in_family(const Dag& d, std::span<const Dag> family) {
    return closest_in_family(d, DagFamily(family));
}

// -- statistics and experiments --------------------------------------------

std::vector<MecStatsRow> mec_distance_stats(int n, bool parallel) {
    check_enumeration_n(n, kMaxSweepVertices, "mec_distance_stats");
    return mec_distance_stats(MecAtlas(n), parallel);
}

std::vector<MecStatsRow> mec_distance_stats(const MecAtlas& atlas, bool parallel) {
    const auto nearest =
        parallel ? kernels::all_nearest_parallel(atlas.tables()) : kernels::all_nearest_serial(atlas.tables());
    std::vector<MecStatsRow> rows(pair_count(atlas.n()) + 1);
    for (std::size_t e = 0; e < rows.size(); ++e) rows[e].edges = e;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        MecStatsRow& r = rows[atlas.mec(i).key.skeleton.edge_count()];
        const std::size_t d = nearest[i];
        r.min = r.mec_count == 0 ? d : std::min(r.min, d);
        r.max = std::max(r.max, d);
        r.distance_sum += d;
        ++r.mec_count;
    }
    std::erase_if(rows, [](const MecStatsRow& r) { return r.mec_count == 0; });
    return rows;
}

namespace {

ConjectureReport markov_report(int n) {
    const MarkovAtlas atlas(n);
    const auto& pack = atlas.tables();
    const auto nearest = kernels::all_nearest_parallel(pack);
    ConjectureReport report;
    report.kind = NetworkKind::Markov;
    report.n = n;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        ++report.checked;
        std::size_t best_edit = 0;
        for (std::size_t r = 0; r < pair_count(n); ++r) {
            const std::size_t j = i ^ (std::size_t{1} << r);
            const std::size_t d = kernels::hamming(pack.row(i), pack.row(j));
            best_edit = best_edit == 0 ? d : std::min(best_edit, d);
        }
        if (best_edit == nearest[i])
            ++report.satisfied;
        else
            report.counterexamples.push_back({atlas.graph(i), nearest[i], best_edit});
    }
    return report;
}

ConjectureReport bayes_report(int n) {
    const MecAtlas atlas(n);
    const auto& pack = atlas.tables();
    const auto nearest = kernels::all_nearest_parallel(pack);
    std::vector<unsigned char> all_ok(atlas.size(), 1), any_ok(atlas.size(), 0), rep_ok(atlas.size(), 0);
    std::vector<std::size_t> best_edit(atlas.size(), 0);

    for_each_dag(n, [&](const Dag& d) {
        const std::size_t m = atlas.index_of(d);
        std::size_t best = 0;
        auto consider = [&](const std::optional<Dag>& edited) {
            if (!edited) return;
            const std::size_t m2 = atlas.index_of(*edited);
            if (m2 == m) return;
            const std::size_t dist = kernels::hamming(pack.row(m), pack.row(m2));
            best = best == 0 ? dist : std::min(best, dist);
        };
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                if (d.has_arc(u, v)) {
                    consider(d.without_arc(u, v));
                    consider(d.reversed_arc(u, v));
                } else if (d.has_arc(v, u)) {
                    consider(d.without_arc(v, u));
                    consider(d.reversed_arc(v, u));
                } else {
                    consider(d.with_arc(u, v));
                    consider(d.with_arc(v, u));
                }
            }
        const bool ok = best == nearest[m];
        if (ok)
            any_ok[m] = 1;
        else
            all_ok[m] = 0;
        if (best != 0 && (best_edit[m] == 0 || best < best_edit[m])) best_edit[m] = best;
        if (d == atlas.mec(m).representative) rep_ok[m] = ok;
    });

    ConjectureReport report;
    report.kind = NetworkKind::Bayes;
    report.n = n;
    for (std::size_t m = 0; m < atlas.size(); ++m) {
        ++report.checked;
        if (any_ok[m])
            ++report.satisfied;
        else
            report.counterexamples.push_back({atlas.mec(m).representative, nearest[m], best_edit[m]});
        if (!all_ok[m]) ++report.failed_for_some_member;
        if (!rep_ok[m]) ++report.failed_for_representative;
    }
    return report;
}

}  // namespace

ConjectureReport single_edge_neighbor_report(int n, NetworkKind kind) {
    check_enumeration_n(n, kMaxSweepVertices, "single_edge_neighbor_report");
    if (n < 2) throw std::invalid_argument("single_edge_neighbor_report needs n >= 2");
    return kind == NetworkKind::Markov ? markov_report(n) : bayes_report(n);
}

}  // namespace noisyci
