#pragma once

#include "noisyci/graph.hpp"

namespace noisyci {

/// True iff every u-v path in `g` has an internal vertex in `s`.
/// Throws std::invalid_argument if u == v or `s` contains u or v.
bool separates(const UndirectedGraph& g, Vertex u, Vertex v, VertexSet s);

/// Vertices reachable from v along directed paths, v excluded.
VertexSet descendants(const Dag& d, Vertex v);

/// Vertices with a directed path into some member of `s`, including `s` itself.
VertexSet ancestral_closure(const Dag& d, VertexSet s);

/// d-separation by separation in the moral graph of the ancestral subgraph of {u, v} + s.
bool d_separates(const Dag& d, Vertex u, Vertex v, VertexSet s);

/// Closed-form d-connection test for DAGs whose skeleton is a chain: i and j are
/// d-connected given z iff z restricted to the interior of the i-j path is exactly
/// the set of colliders there. Throws if the skeleton is not a chain.
bool chain_d_connected(const Dag& d, Vertex i, Vertex j, VertexSet z);

/// Internal vertices of the unique i-j path in a chain.
VertexSet chain_interior(const UndirectedGraph& chain, Vertex i, Vertex j);

}  // namespace noisyci
