#include "noisyci/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace noisyci {

namespace {

std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }

void check_vertex(int n, Vertex v) {
    if (v < 0 || v >= n)
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                    std::to_string(n));
}

bool acyclic(int n, const std::vector<std::uint64_t>& children) {
    std::vector<int> indeg(n, 0);
    for (int u = 0; u < n; ++u)
        for (Vertex v : VertexSet(children[u])) ++indeg[v];
    std::uint64_t ready = 0;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready |= bit(v);
    int seen = 0;
    while (ready != 0) {
        Vertex u = std::countr_zero(ready);
        ready &= ready - 1;
        ++seen;
        for (Vertex v : VertexSet(children[u]))
            if (--indeg[v] == 0) ready |= bit(v);
    }
    return seen == n;
}

}  // namespace

// -- UndirectedGraph -------------------------------------------------------

UndirectedGraph::UndirectedGraph(int n) : n_(n) {
    check_vertex_count(n);
    adj_.assign(n, 0);
}

UndirectedGraph::UndirectedGraph(int n, std::span<const Edge> edges) : UndirectedGraph(n) {
    for (const Edge& e : edges) {
        check_pair(e.u, e.v);
        if (has_edge(e.u, e.v))
            throw std::invalid_argument("duplicate edge {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "}");
        add_edge(e.u, e.v);
    }
}

void UndirectedGraph::check_pair(Vertex u, Vertex v) const {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
}

std::size_t UndirectedGraph::edge_count() const {
    std::size_t twice = 0;
    for (auto row : adj_) twice += std::popcount(row);
    return twice / 2;
}

std::vector<Edge> UndirectedGraph::edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : VertexSet(adj_[u]))
            if (u < v) out.push_back({u, v});
    return out;
}

void UndirectedGraph::add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
}

void UndirectedGraph::remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
}

UndirectedGraph UndirectedGraph::toggled(Vertex u, Vertex v) const {
    UndirectedGraph g = *this;
    if (g.has_edge(u, v))
        g.remove_edge(u, v);
    else
        g.add_edge(u, v);
    return g;
}

std::uint64_t UndirectedGraph::edge_mask() const {
    if (n_ > 11) throw std::invalid_argument("edge_mask needs n <= 11");
    std::uint64_t mask = 0;
    for (const Edge& e : edges()) mask |= std::uint64_t{1} << pair_rank(n_, e.u, e.v);
    return mask;
}

UndirectedGraph UndirectedGraph::from_edge_mask(int n, std::uint64_t mask) {
    if (n > 11) throw std::invalid_argument("edge_mask needs n <= 11");
    UndirectedGraph g(n);
    std::size_t r = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++r)
            if ((mask >> r) & 1U) g.add_edge(u, v);
    return g;
}

// -- Dag -------------------------------------------------------------------

Dag::Dag(int n) : n_(n) {
    check_vertex_count(n);
    children_.assign(n, 0);
    parents_.assign(n, 0);
}

Dag Dag::from_arcs(int n, std::span<const Arc> arcs) {
    Dag d(n);
    for (const Arc& a : arcs) {
        check_vertex(n, a.from);
        check_vertex(n, a.to);
        if (a.from == a.to) throw std::invalid_argument("self-loop at vertex " + std::to_string(a.from));
        if (d.has_arc(a.from, a.to))
            throw std::invalid_argument("duplicate arc (" + std::to_string(a.from) + "," +
                                        std::to_string(a.to) + ")");
        if (d.has_arc(a.to, a.from))
            throw std::invalid_argument("2-cycle between " + std::to_string(a.from) + " and " +
                                        std::to_string(a.to));
        d.children_[a.from] |= bit(a.to);
        d.parents_[a.to] |= bit(a.from);
    }
    if (!acyclic(n, d.children_)) throw std::invalid_argument("arc set contains a directed cycle");
    return d;
}

std::optional<Dag> Dag::from_children(int n, std::vector<std::uint64_t> children) {
    check_vertex_count(n);
    if (static_cast<int>(children.size()) != n) throw std::invalid_argument("row count != n");
    const std::uint64_t universe = VertexSet::all(n).bits();
    for (int u = 0; u < n; ++u)
        if ((children[u] & ~universe) != 0 || (children[u] & bit(u)) != 0)
            throw std::invalid_argument("invalid child row");
    if (!acyclic(n, children)) return std::nullopt;
    Dag d;
    d.n_ = n;
    d.parents_.assign(n, 0);
    for (int u = 0; u < n; ++u)
        for (Vertex v : VertexSet(children[u])) d.parents_[v] |= bit(u);
    d.children_ = std::move(children);
    return d;
}

std::size_t Dag::arc_count() const {
    std::size_t c = 0;
    for (auto row : children_) c += std::popcount(row);
    return c;
}

std::vector<Arc> Dag::arcs() const {
    std::vector<Arc> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : VertexSet(children_[u])) out.push_back({u, v});
    return out;
}

std::optional<Dag> Dag::with_arc(Vertex u, Vertex v) const {
    if (u == v || adjacent(u, v)) return std::nullopt;
    auto rows = children_;
    rows[u] |= bit(v);
    return from_children(n_, std::move(rows));
}

std::optional<Dag> Dag::without_arc(Vertex u, Vertex v) const {
    if (!has_arc(u, v)) return std::nullopt;
    auto rows = children_;
    rows[u] &= ~bit(v);
    return from_children(n_, std::move(rows));
}

std::optional<Dag> Dag::reversed_arc(Vertex u, Vertex v) const {
    if (!has_arc(u, v)) return std::nullopt;
    auto rows = children_;
    rows[u] &= ~bit(v);
    rows[v] |= bit(u);
    return from_children(n_, std::move(rows));
}

std::size_t MecKeyHash::operator()(const MecKey& key) const noexcept {
    std::size_t h = std::hash<int>{}(key.skeleton.n());
    auto mix = [&h](std::uint64_t x) { h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (Vertex v = 0; v < key.skeleton.n(); ++v) mix(key.skeleton.neighbors(v).bits());
    for (const VStructure& s : key.vstructs)
        mix((std::uint64_t(s.u) << 16) | (std::uint64_t(s.center) << 8) | std::uint64_t(s.w));
    return h;
}

// -- constructors ----------------------------------------------------------

UndirectedGraph make_chain_undirected(int n) {
    if (n < 1) throw std::invalid_argument("chain needs n >= 1");
    UndirectedGraph g(n);
    for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

UndirectedGraph make_complete_undirected(int n) {
    UndirectedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Dag make_chain_dag(std::span<const Vertex> order, const std::vector<bool>& dirs) {
    const int n = static_cast<int>(order.size());
    check_vertex_count(n);
    if (n < 1) throw std::invalid_argument("chain needs n >= 1");
    std::uint64_t seen = 0;
    for (Vertex v : order) {
        if (v < 0 || v >= n || (seen & bit(v)))
            throw std::invalid_argument("chain order is not a permutation of 0..n-1");
        seen |= bit(v);
    }
    if (dirs.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("chain needs n-1 direction bits");
    std::vector<Arc> arcs;
    for (int i = 0; i + 1 < n; ++i)
        arcs.push_back(dirs[i] ? Arc{order[i], order[i + 1]} : Arc{order[i + 1], order[i]});
    return Dag::from_arcs(n, arcs);
}

Dag make_empty_dag(int n) { return Dag(n); }

Dag make_fork_chain_dag(int n) {
    if (n < 3) throw std::invalid_argument("fork chain needs n >= 3");
    std::vector<Arc> arcs{{0, 2}, {1, 2}};
    for (Vertex i = 2; i + 1 < n; ++i) arcs.push_back({i, i + 1});
    return Dag::from_arcs(n, arcs);
}

Dag make_fork_chain_shortcut_dag(int n) {
    return *make_fork_chain_dag(n).with_arc(0, 1);
}

Dag make_cliques_dag(int n, int r) {
    if (n < 3) throw std::invalid_argument("cliques needs n >= 3");
    if (r < 2 || n % r != 0) throw std::invalid_argument("cliques needs r >= 2 dividing n");
    const int size = n / r;
    std::vector<Arc> arcs;
    for (int block = 0; block < r; ++block)
        for (Vertex u = block * size; u < (block + 1) * size; ++u)
            for (Vertex v = u + 1; v < (block + 1) * size; ++v) arcs.push_back({u, v});
    return Dag::from_arcs(n, arcs);
}

Dag make_complete_dag(int n) {
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) arcs.push_back({u, v});
    return Dag::from_arcs(n, arcs);
}

UndirectedGraph make_hub_graph(int n, bool join_hubs) {
    if (n < 3) throw std::invalid_argument("hub graph needs n >= 3");
    UndirectedGraph g(n);
    for (Vertex w = 2; w < n; ++w) {
        g.add_edge(0, w);
        g.add_edge(1, w);
    }
    if (join_hubs) g.add_edge(0, 1);
    return g;
}

std::variant<Dag, UndirectedGraph> named_graph(NamedGraph kind, int n, int r) {
    if (n < 3) throw std::invalid_argument("named graphs need n >= 3");
    switch (kind) {
        case NamedGraph::EmptyDag: return make_empty_dag(n);
        case NamedGraph::ForkChain: return make_fork_chain_dag(n);
        case NamedGraph::ForkChainShortcut: return make_fork_chain_shortcut_dag(n);
        case NamedGraph::Cliques: return make_cliques_dag(n, r);
        case NamedGraph::CompleteDag: return make_complete_dag(n);
        case NamedGraph::HubG1: return make_hub_graph(n, false);
        case NamedGraph::HubG2: return make_hub_graph(n, true);
    }
    throw std::invalid_argument("unknown graph kind");
}

std::optional<NamedGraph> parse_named_graph(std::string_view name) {
    if (name == "empty_dag") return NamedGraph::EmptyDag;
    if (name == "d1") return NamedGraph::ForkChain;
    if (name == "d1_prime") return NamedGraph::ForkChainShortcut;
    if (name == "cliques") return NamedGraph::Cliques;
    if (name == "complete_dag") return NamedGraph::CompleteDag;
    if (name == "hub_g1") return NamedGraph::HubG1;
    if (name == "hub_g2") return NamedGraph::HubG2;
    return std::nullopt;
}

// -- structure -------------------------------------------------------------

UndirectedGraph skeleton(const Dag& d) {
    UndirectedGraph g(d.n());
    for (const Arc& a : d.arcs()) g.add_edge(a.from, a.to);
    return g;
}

UndirectedGraph moral_graph(const Dag& d) {
    UndirectedGraph g = skeleton(d);
    for (Vertex c = 0; c < d.n(); ++c) {
        const auto pa = d.parents(c).to_vector();
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j) g.add_edge(pa[i], pa[j]);
    }
    return g;
}

std::vector<VStructure> v_structures(const Dag& d) {
    std::vector<VStructure> out;
    for (Vertex c = 0; c < d.n(); ++c) {
        const auto pa = d.parents(c).to_vector();
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (!d.adjacent(pa[i], pa[j])) out.push_back({pa[i], c, pa[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

MecKey mec_key(const Dag& d) { return {skeleton(d), v_structures(d)}; }

bool markov_equivalent(const Dag& a, const Dag& b) {
    if (a.n() != b.n()) throw std::invalid_argument("markov_equivalent: vertex counts differ");
    return mec_key(a) == mec_key(b);
}

bool is_chain(const UndirectedGraph& g) {
    const int n = g.n();
    if (n == 0) return false;
    if (g.edge_count() != static_cast<std::size_t>(n - 1)) return false;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > 2) return false;
    // n-1 edges, max degree 2, connected => path
    std::uint64_t reached = 1, frontier = 1;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (Vertex v : VertexSet(frontier)) next |= g.neighbors(v).bits();
        frontier = next & ~reached;
        reached |= next;
    }
    return reached == VertexSet::all(n).bits();
}

std::vector<Vertex> chain_order(const UndirectedGraph& g) {
    if (!is_chain(g)) throw std::invalid_argument("graph is not a chain");
    const int n = g.n();
    Vertex start = 0;
    while (n > 1 && g.degree(start) != 1) ++start;
    std::vector<Vertex> order{start};
    VertexSet visited = VertexSet::single(start);
    while (static_cast<int>(order.size()) < n) {
        VertexSet next = g.neighbors(order.back()) - visited;
        order.push_back(next.front());
        visited.insert(next.front());
    }
    return order;
}

VertexSet colliders(const Dag& d) {
    VertexSet out;
    for (Vertex v = 0; v < d.n(); ++v)
        if (d.parents(v).size() >= 2) out.insert(v);
    return out;
}

int pair_connectivity(const UndirectedGraph& g, Vertex u, Vertex v) {
    const int n = g.n();
    check_vertex(n, u);
    check_vertex(n, v);
    if (u == v) throw std::invalid_argument("pair_connectivity needs distinct vertices");
    // Vertex x becomes in-node 2x and out-node 2x+1; internal vertices carry capacity 1.
    const int m = 2 * n;
    std::vector<int> cap(std::size_t(m) * m, 0);
    auto at = [m, &cap](int a, int b) -> int& { return cap[std::size_t(a) * m + b]; };
    for (Vertex x = 0; x < n; ++x) at(2 * x, 2 * x + 1) = (x == u || x == v) ? n : 1;
    for (const Edge& e : g.edges()) {
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) continue;
        at(2 * e.u + 1, 2 * e.v) = n;
        at(2 * e.v + 1, 2 * e.u) = n;
    }
    const int source = 2 * u + 1, sink = 2 * v;
    int flow = 0;
    std::vector<int> prev(m);
    while (true) {
        std::fill(prev.begin(), prev.end(), -1);
        prev[source] = source;
        std::deque<int> queue{source};
        while (!queue.empty() && prev[sink] < 0) {
            int a = queue.front();
            queue.pop_front();
            for (int b = 0; b < m; ++b)
                if (prev[b] < 0 && at(a, b) > 0) {
                    prev[b] = a;
                    queue.push_back(b);
                }
        }
        if (prev[sink] < 0) break;
        for (int b = sink; b != source; b = prev[b]) {
            --at(prev[b], b);
            ++at(b, prev[b]);
        }
        ++flow;
    }
    return flow;
}

int max_pairwise_connectivity(const UndirectedGraph& g) {
    int best = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) best = std::max(best, pair_connectivity(g, u, v));
    return best;
}

}  // namespace noisyci
