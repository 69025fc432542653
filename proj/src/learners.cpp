#include "noisyci/learners.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "noisyci/kernels.hpp"

namespace noisyci {

namespace {

std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }

/// All index subsets of {0..universe-1} with size <= k, by size then lexicographically.
std::vector<std::vector<std::size_t>> combinations_up_to(std::size_t universe, std::size_t k) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t size = 1; size <= std::min(k, universe); ++size) {
        std::vector<std::size_t> c(size);
        for (std::size_t i = 0; i < size; ++i) c[i] = i;
        while (true) {
            out.push_back(c);
            std::size_t i = size;
            while (i > 0 && c[i - 1] == universe - size + (i - 1)) --i;
            if (i == 0) break;
            ++c[i - 1];
            for (std::size_t j = i; j < size; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return out;
}

template <typename Result, typename Item>
void classify(Result& r, std::vector<Item> within, std::size_t cap) {
    r.candidates_within = within.size();
    if (within.empty()) {
        r.status = LearnStatus::NoneWithin;
    } else if (within.size() == 1) {
        r.status = LearnStatus::Unique;
    } else {
        r.status = LearnStatus::NotUnique;
        if (within.size() > cap) within.resize(cap);
    }
}

LearnResultMn make_mn_result(std::vector<std::pair<UndirectedGraph, std::size_t>> within, std::size_t cap) {
    std::sort(within.begin(), within.end());
    LearnResultMn r;
    r.candidates_within = within.size();
    if (within.empty()) {
        r.status = LearnStatus::NoneWithin;
    } else if (within.size() == 1) {
        r.status = LearnStatus::Unique;
        r.graph = within.front().first;
        r.distance = within.front().second;
    } else {
        r.status = LearnStatus::NotUnique;
        for (std::size_t i = 0; i < within.size() && i < cap; ++i) r.witnesses.push_back(within[i].first);
    }
    return r;
}

struct BnHit {
    MecKey key;
    Dag dag;
    std::size_t distance;
};

LearnResultBn make_bn_result(std::vector<BnHit> hits, std::size_t cap) {
    // hits arrive in search order; keep the first DAG seen per class
    std::vector<BnHit> unique;
    std::set<MecKey> seen;
    for (auto& h : hits)
        if (seen.insert(h.key).second) unique.push_back(std::move(h));
    std::sort(unique.begin(), unique.end(), [](const BnHit& a, const BnHit& b) { return a.key < b.key; });
    LearnResultBn r;
    r.candidates_within = unique.size();
    if (unique.empty()) {
        r.status = LearnStatus::NoneWithin;
    } else if (unique.size() == 1) {
        r.status = LearnStatus::Unique;
        r.dag = unique.front().dag;
        r.distance = unique.front().distance;
    } else {
        r.status = LearnStatus::NotUnique;
        for (std::size_t i = 0; i < unique.size() && i < cap; ++i) r.witnesses.push_back(unique[i].key);
    }
    return r;
}

// Combinations of size l drawn from `from`, in increasing colex order.
template <typename Visit>
bool for_each_subset_of_size(VertexSet from, int l, Visit&& visit) {
    const int m = from.size();
    if (l > m) return false;
    const std::uint64_t universe = from.bits();
    if (l == 0) return visit(VertexSet{});
    std::uint64_t c = (std::uint64_t{1} << l) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (c < limit) {
        if (visit(VertexSet(expand_bits(c, universe)))) return true;
        const std::uint64_t low = c & -c;
        const std::uint64_t ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
    return false;
}

}  // namespace

// -- Cpdag -------------------------------------------------------------------

Cpdag::Cpdag(const UndirectedGraph& skeleton) : n_(skeleton.n()), arcs_(n_, 0), undirected_(n_, 0) {
    for (Vertex v = 0; v < n_; ++v) undirected_[v] = skeleton.neighbors(v).bits();
}

void Cpdag::orient(Vertex u, Vertex v) {
    if (!undirected(u, v)) throw std::logic_error("orient: edge is not undirected");
    undirected_[u] &= ~bit(v);
    undirected_[v] &= ~bit(u);
    arcs_[u] |= bit(v);
}

std::vector<Arc> Cpdag::arcs() const {
    std::vector<Arc> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : VertexSet(arcs_[u])) out.push_back({u, v});
    return out;
}

std::vector<Edge> Cpdag::undirected_edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : VertexSet(undirected_[u]))
            if (u < v) out.push_back({u, v});
    return out;
}

UndirectedGraph Cpdag::skeleton() const {
    UndirectedGraph g(n_);
    for (const Arc& a : arcs()) g.add_edge(a.from, a.to);
    for (const Edge& e : undirected_edges()) g.add_edge(e.u, e.v);
    return g;
}

// -- Markov networks -------------------------------------------------------

UndirectedGraph initial_graph(const AnswerTable& t) {
    const int n = t.n();
    UndirectedGraph g(n);
    const VertexSet all = VertexSet::all(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (t.get(QueryKey{u, v, all - VertexSet::of({u, v})})) g.add_edge(u, v);
    return g;
}

LearnResultMn solve_mnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap) {
    const int n = t.n();
    const UndirectedGraph base = initial_graph(t);
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
    const auto toggles = combinations_up_to(pairs.size(), k);

    std::vector<std::size_t> dist(toggles.size());
    std::vector<UndirectedGraph> cand(toggles.size());
    const auto count = static_cast<long long>(toggles.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        UndirectedGraph g = base;
        for (auto p : toggles[i]) g = g.toggled(pairs[p].u, pairs[p].v);
        dist[i] = table_distance(table_of_markov(g), t);
        cand[i] = std::move(g);
    }
    std::vector<std::pair<UndirectedGraph, std::size_t>> within;
    for (std::size_t i = 0; i < toggles.size(); ++i)
        if (dist[i] <= k) within.emplace_back(std::move(cand[i]), dist[i]);
    return make_mn_result(std::move(within), witness_cap);
}

LearnResultMn brute_force_mnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap) {
    return brute_force_mnsl(t, k, MarkovAtlas(t.n()), witness_cap);
}

LearnResultMn brute_force_mnsl(const AnswerTable& t, std::size_t k, const MarkovAtlas& atlas,
                               std::size_t witness_cap) {
    if (atlas.n() != t.n()) throw std::invalid_argument("table and atlas vertex counts differ");
    std::vector<std::pair<UndirectedGraph, std::size_t>> within;
    for (auto i : kernels::within_parallel(atlas.tables(), t.words(), static_cast<std::uint32_t>(k)))
        within.emplace_back(atlas.graph(i), kernels::hamming(atlas.tables().row(i), t.words()));
    return make_mn_result(std::move(within), witness_cap);
}

// -- PC --------------------------------------------------------------------

std::pair<UndirectedGraph, SepsetMap> pc_skeleton(const AnswerTable& t) {
    const int n = t.n();
    UndirectedGraph g = make_complete_undirected(n);
    SepsetMap sepsets;
    for (int l = 0;; ++l) {
        const UndirectedGraph frozen = g;
        bool tested = false;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                if (!g.has_edge(u, v)) continue;
                const VertexSet ends = VertexSet::of({u, v});
                for (Vertex side : {u, v}) {
                    const VertexSet pool = frozen.neighbors(side) - ends;
                    if (pool.size() < l) continue;
                    tested = true;
                    const bool removed = for_each_subset_of_size(pool, l, [&](VertexSet s) {
                        if (t.get(QueryKey{u, v, s})) return false;
                        g.remove_edge(u, v);
                        sepsets[{u, v}] = s;
                        return true;
                    });
                    if (removed) break;
                }
            }
        if (!tested) break;
    }
    return {g, sepsets};
}

namespace {

bool apply_meek_rules(Cpdag& c) {
    const int n = c.n();
    auto try_orient = [&](Vertex a, Vertex b) -> bool {
        // R1: x -> a - b, x and b non-adjacent
        for (Vertex x = 0; x < n; ++x)
            if (x != b && c.directed(x, a) && !c.adjacent(x, b)) return true;
        // R2: a -> x -> b
        for (Vertex x = 0; x < n; ++x)
            if (c.directed(a, x) && c.directed(x, b)) return true;
        // R3: a - x -> b, a - y -> b, x and y non-adjacent
        for (Vertex x = 0; x < n; ++x) {
            if (!(c.undirected(a, x) && c.directed(x, b))) continue;
            for (Vertex y = x + 1; y < n; ++y)
                if (c.undirected(a, y) && c.directed(y, b) && !c.adjacent(x, y)) return true;
        }
        // R4: a - x -> y -> b, x and b non-adjacent, a and y adjacent
        for (Vertex x = 0; x < n; ++x) {
            if (x == b || !c.undirected(a, x) || c.adjacent(x, b)) continue;
            for (Vertex y = 0; y < n; ++y)
                if (y != a && c.directed(x, y) && c.directed(y, b) && c.adjacent(a, y)) return true;
        }
        return false;
    };
    bool changed_any = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Edge& e : c.undirected_edges()) {
            if (try_orient(e.u, e.v)) {
                c.orient(e.u, e.v);
                changed = true;
            } else if (try_orient(e.v, e.u)) {
                c.orient(e.v, e.u);
                changed = true;
            }
        }
        changed_any |= changed;
    }
    return changed_any;
}

}  // namespace

std::optional<Cpdag> try_pc_orient(const UndirectedGraph& skel, const SepsetMap& sepsets) {
    const int n = skel.n();
    Cpdag c(skel);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex w = u + 1; w < n; ++w) {
            if (skel.has_edge(u, w)) continue;
            const VertexSet common = skel.neighbors(u) & skel.neighbors(w);
            if (common.empty()) continue;
            auto it = sepsets.find({u, w});
            if (it == sepsets.end())
                throw std::invalid_argument("pc_orient: missing separating set for a non-adjacent pair");
            for (Vertex v : common) {
                if (it->second.contains(v)) continue;
                for (Vertex end : {u, w}) {
                    if (c.directed(v, end)) return std::nullopt;
                    if (c.undirected(end, v)) c.orient(end, v);
                }
            }
        }
    apply_meek_rules(c);
    return c;
}

Cpdag pc_orient(const UndirectedGraph& skel, const SepsetMap& sepsets) {
    if (auto c = try_pc_orient(skel, sepsets)) return *c;
    throw UnfaithfulTable("pc_orient: conflicting collider orientations");
}

std::optional<Dag> try_cpdag_to_dag(const Cpdag& c) {
    const int n = c.n();
    std::vector<std::uint64_t> rows(n, 0);
    for (const Arc& a : c.arcs()) rows[a.from] |= bit(a.to);

    std::uint64_t alive = VertexSet::all(n).bits();
    auto adjacent_alive = [&](Vertex x) {
        std::uint64_t adj = 0;
        for (Vertex y : VertexSet(alive))
            if (y != x && c.adjacent(x, y)) adj |= bit(y);
        return adj;
    };
    while (alive != 0) {
        bool removed = false;
        for (Vertex x : VertexSet(alive)) {
            bool sink = true;
            for (Vertex y : VertexSet(alive))
                if (c.directed(x, y)) sink = false;
            if (!sink) continue;
            const std::uint64_t adj = adjacent_alive(x);
            bool ok = true;
            for (Vertex y : VertexSet(adj)) {
                if (!c.undirected(x, y)) continue;
                const std::uint64_t others = adj & ~bit(y);
                for (Vertex z : VertexSet(others))
                    if (!c.adjacent(y, z)) ok = false;
            }
            if (!ok) continue;
            for (Vertex y : VertexSet(adj))
                if (c.undirected(x, y)) rows[y] |= bit(x);
            alive &= ~bit(x);
            removed = true;
            break;
        }
        if (!removed) return std::nullopt;
    }
    auto dag = Dag::from_children(n, std::move(rows));
    if (!dag) return std::nullopt;

    std::vector<VStructure> expected;
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u = 0; u < n; ++u)
            for (Vertex w = u + 1; w < n; ++w)
                if (c.directed(u, v) && c.directed(w, v) && !c.adjacent(u, w)) expected.push_back({u, v, w});
    std::sort(expected.begin(), expected.end());
    if (v_structures(*dag) != expected) return std::nullopt;
    return dag;
}

Dag cpdag_to_dag(const Cpdag& c) {
    if (auto d = try_cpdag_to_dag(c)) return *d;
    throw UnfaithfulTable("cpdag_to_dag: pattern has no consistent DAG extension");
}

std::optional<Dag> pc_faithful_dag(const AnswerTable& t) {
    const auto [skel, sepsets] = pc_skeleton(t);
    const auto cpdag = try_pc_orient(skel, sepsets);
    if (!cpdag) return std::nullopt;
    auto dag = try_cpdag_to_dag(*cpdag);
    if (!dag || table_of_bayes(*dag) != t) return std::nullopt;
    return dag;
}

LearnResultBn solve_bnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap) {
    const auto flip_sets = combinations_up_to(t.size(), k);
    std::vector<std::optional<Dag>> found(flip_sets.size());
    const auto count = static_cast<long long>(flip_sets.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) found[i] = pc_faithful_dag(apply_flips(t, flip_sets[i]));
    std::vector<BnHit> hits;
    for (std::size_t i = 0; i < found.size(); ++i)
        if (found[i]) hits.push_back({mec_key(*found[i]), *found[i], flip_sets[i].size()});
    return make_bn_result(std::move(hits), witness_cap);
}

LearnResultBn brute_force_bnsl(const AnswerTable& t, std::size_t k, std::size_t witness_cap) {
    if (t.n() > kMaxSweepVertices) throw std::invalid_argument("brute_force_bnsl supports n <= 5");
    return brute_force_bnsl(t, k, MecAtlas(t.n()), witness_cap);
}

LearnResultBn brute_force_bnsl(const AnswerTable& t, std::size_t k, const MecAtlas& atlas,
                               std::size_t witness_cap) {
    if (atlas.n() != t.n()) throw std::invalid_argument("table and atlas vertex counts differ");
    std::vector<BnHit> hits;
    for (auto i : kernels::within_parallel(atlas.tables(), t.words(), static_cast<std::uint32_t>(k)))
        hits.push_back({atlas.mec(i).key, atlas.mec(i).representative,
                        kernels::hamming(atlas.tables().row(i), t.words())});
    return make_bn_result(std::move(hits), witness_cap);
}

}  // namespace noisyci
