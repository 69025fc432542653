#pragma once

// Slow, obviously-correct reference implementations used only by tests. None of
// them call the library's separation, flow or enumeration code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "noisyci/ci_table.hpp"
#include "noisyci/graph.hpp"

namespace ref {

using noisyci::Dag;
using noisyci::UndirectedGraph;
using noisyci::Vertex;
using noisyci::VertexSet;

/// Every simple u-v path in an undirected adjacency relation, as vertex sequences.
inline std::vector<std::vector<Vertex>> simple_paths(int n, const std::function<bool(Vertex, Vertex)>& adjacent,
                                                     Vertex u, Vertex v) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path{u};
    std::vector<bool> used(n, false);
    used[u] = true;
    std::function<void(Vertex)> walk = [&](Vertex at) {
        if (at == v) {
            out.push_back(path);
            return;
        }
        for (Vertex w = 0; w < n; ++w) {
            if (used[w] || !adjacent(at, w)) continue;
            used[w] = true;
            path.push_back(w);
            walk(w);
            path.pop_back();
            used[w] = false;
        }
    };
    walk(u);
    return out;
}

inline bool separated_by_paths(const UndirectedGraph& g, Vertex u, Vertex v, VertexSet s) {
    for (const auto& p : simple_paths(g.n(), [&](Vertex a, Vertex b) { return g.has_edge(a, b); }, u, v)) {
        bool blocked = false;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) blocked |= s.contains(p[i]);
        if (!blocked) return false;
    }
    return true;
}

inline std::uint64_t descendants_dfs(const Dag& d, Vertex v) {
    std::uint64_t seen = 0;
    std::vector<Vertex> stack{v};
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex c = 0; c < d.n(); ++c)
            if (d.has_arc(x, c) && !((seen >> c) & 1U)) {
                seen |= std::uint64_t{1} << c;
                stack.push_back(c);
            }
    }
    return seen;
}

/// d-separation straight from the path-blocking definition.
inline bool d_separated_by_paths(const Dag& d, Vertex u, Vertex v, VertexSet s) {
    const auto paths = simple_paths(d.n(), [&](Vertex a, Vertex b) { return d.adjacent(a, b); }, u, v);
    for (const auto& p : paths) {
        bool blocked = false;
        for (std::size_t i = 1; i + 1 < p.size() && !blocked; ++i) {
            const Vertex w = p[i];
            const bool collider = d.has_arc(p[i - 1], w) && d.has_arc(p[i + 1], w);
            if (collider)
                blocked = !s.contains(w) && (descendants_dfs(d, w) & s.bits()) == 0;
            else
                blocked = s.contains(w);
        }
        if (!blocked) return false;
    }
    return true;
}

/// Maximum number of internally disjoint u-v paths with at least one internal
/// vertex, by exhaustive packing of path interiors.
inline int connectivity_by_packing(const UndirectedGraph& g, Vertex u, Vertex v) {
    std::vector<std::uint64_t> interiors;
    for (const auto& p : simple_paths(g.n(), [&](Vertex a, Vertex b) { return g.has_edge(a, b); }, u, v)) {
        if (p.size() < 3) continue;
        std::uint64_t m = 0;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) m |= std::uint64_t{1} << p[i];
        interiors.push_back(m);
    }
    std::sort(interiors.begin(), interiors.end());
    interiors.erase(std::unique(interiors.begin(), interiors.end()), interiors.end());
    int best = 0;
    std::function<void(std::size_t, std::uint64_t, int)> pack = [&](std::size_t from, std::uint64_t used, int count) {
        best = std::max(best, count);
        for (std::size_t i = from; i < interiors.size(); ++i)
            if ((interiors[i] & used) == 0) pack(i + 1, used | interiors[i], count + 1);
    };
    pack(0, 0, 0);
    return best;
}

inline int max_connectivity_by_packing(const UndirectedGraph& g) {
    int best = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) best = std::max(best, connectivity_by_packing(g, u, v));
    return best;
}

/// Labelled DAG counts: a(n) = sum_k (-1)^(k+1) C(n,k) 2^(k(n-k)) a(n-k).
inline std::int64_t dag_count(int n) {
    std::vector<std::int64_t> a(n + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::int64_t binom = 1;
        for (int k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            const std::int64_t term = binom * (std::int64_t{1} << (k * (m - k))) * a[m - k];
            a[m] += (k % 2 == 1) ? term : -term;
        }
    }
    return a[n];
}

/// Canonical query order spelled out by nested loops.
inline std::vector<noisyci::QueryKey> canonical_queries(int n) {
    std::vector<noisyci::QueryKey> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            std::vector<Vertex> rest;
            for (Vertex w = 0; w < n; ++w)
                if (w != u && w != v) rest.push_back(w);
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << rest.size()); ++r) {
                VertexSet s;
                for (std::size_t t = 0; t < rest.size(); ++t)
                    if ((r >> t) & 1U) s.insert(rest[t]);
                out.push_back({u, v, s});
            }
        }
    return out;
}

inline noisyci::AnswerTable table_by_paths(const Dag& d) {
    noisyci::AnswerTable t(d.n());
    const auto qs = canonical_queries(d.n());
    for (std::size_t i = 0; i < qs.size(); ++i) t.set(i, !d_separated_by_paths(d, qs[i].u, qs[i].v, qs[i].cond));
    return t;
}

inline noisyci::AnswerTable table_by_paths(const UndirectedGraph& g) {
    noisyci::AnswerTable t(g.n());
    const auto qs = canonical_queries(g.n());
    for (std::size_t i = 0; i < qs.size(); ++i) t.set(i, !separated_by_paths(g, qs[i].u, qs[i].v, qs[i].cond));
    return t;
}

/// Random DAG: random permutation as topological order, each forward pair an arc with probability p.
inline Dag random_dag(int n, double p, std::mt19937_64& rng) {
    std::vector<Vertex> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<noisyci::Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) arcs.push_back({order[i], order[j]});
    return Dag::from_arcs(n, arcs);
}

inline UndirectedGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    UndirectedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

/// Distinct random indices in [0, size).
inline std::vector<std::size_t> random_indices(std::size_t count, std::size_t size, std::mt19937_64& rng) {
    std::set<std::size_t> s;
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    while (s.size() < count) s.insert(pick(rng));
    return {s.begin(), s.end()};
}

/// Two DAGs are Markov equivalent iff their d-separation tables coincide; this
/// gives an equivalence test that does not rely on v-structures.
inline bool equivalent_by_tables(const Dag& a, const Dag& b) { return table_by_paths(a) == table_by_paths(b); }

}  // namespace ref
