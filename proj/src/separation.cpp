#include "noisyci/separation.hpp"

#include <stdexcept>
#include <string>

namespace noisyci {

namespace {

void check_query(int n, Vertex u, Vertex v, VertexSet s) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("query vertex out of range");
    if (u == v) throw std::invalid_argument("query needs two distinct vertices");
    if (s.contains(u) || s.contains(v))
        throw std::invalid_argument("conditioning set contains a query endpoint");
    if (!s.subset_of(VertexSet::all(n))) throw std::invalid_argument("conditioning set out of range");
}

// Whether v can be reached from u stepping only onto vertices in `allowed`.
template <typename Neighbors>
bool reaches(Vertex u, Vertex v, std::uint64_t allowed, Neighbors&& neighbors) {
    std::uint64_t reached = std::uint64_t{1} << u;
    std::uint64_t frontier = reached;
    const std::uint64_t target = std::uint64_t{1} << v;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (Vertex x : VertexSet(frontier)) next |= neighbors(x);
        next &= allowed;
        if (next & target) return true;
        frontier = next & ~reached;
        reached |= next;
    }
    return false;
}

}  // namespace

bool separates(const UndirectedGraph& g, Vertex u, Vertex v, VertexSet s) {
    check_query(g.n(), u, v, s);
    const std::uint64_t allowed = VertexSet::all(g.n()).bits() & ~s.bits();
    return !reaches(u, v, allowed, [&g](Vertex x) { return g.neighbors(x).bits(); });
}

VertexSet descendants(const Dag& d, Vertex v) {
    std::uint64_t reached = 0;
    std::uint64_t frontier = d.children(v).bits();
    while (frontier != 0) {
        reached |= frontier;
        std::uint64_t next = 0;
        for (Vertex x : VertexSet(frontier)) next |= d.children(x).bits();
        frontier = next & ~reached;
    }
    return VertexSet(reached);
}

VertexSet ancestral_closure(const Dag& d, VertexSet s) {
    std::uint64_t reached = s.bits();
    std::uint64_t frontier = reached;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (Vertex x : VertexSet(frontier)) next |= d.parents(x).bits();
        frontier = next & ~reached;
        reached |= next;
    }
    return VertexSet(reached);
}

bool d_separates(const Dag& d, Vertex u, Vertex v, VertexSet s) {
    check_query(d.n(), u, v, s);
    const VertexSet keep = ancestral_closure(d, s | VertexSet::of({u, v}));
    // Moral graph of the ancestral subgraph, restricted to `keep`.
    std::vector<std::uint64_t> moral(d.n(), 0);
    for (Vertex c : keep) {
        const std::uint64_t pa = d.parents(c).bits();  // parents of kept vertices are kept
        moral[c] |= pa;
        for (Vertex p : VertexSet(pa)) moral[p] |= (std::uint64_t{1} << c) | (pa & ~(std::uint64_t{1} << p));
    }
    const std::uint64_t allowed = keep.bits() & ~s.bits();
    return !reaches(u, v, allowed, [&moral](Vertex x) { return moral[x]; });
}

VertexSet chain_interior(const UndirectedGraph& chain, Vertex i, Vertex j) {
    const auto order = chain_order(chain);
    std::size_t pi = 0, pj = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (order[k] == i) pi = k;
        if (order[k] == j) pj = k;
    }
    if (pi > pj) std::swap(pi, pj);
    VertexSet out;
    for (std::size_t k = pi + 1; k < pj; ++k) out.insert(order[k]);
    return out;
}

bool chain_d_connected(const Dag& d, Vertex i, Vertex j, VertexSet z) {
    check_query(d.n(), i, j, z);
    const UndirectedGraph skel = skeleton(d);
    if (!is_chain(skel)) throw std::invalid_argument("chain_d_connected: skeleton is not a chain");
    const VertexSet interior = chain_interior(skel, i, j);
    return (z & interior) == (colliders(d) & interior);
}

}  // namespace noisyci
