#include <doctest.h>

#include <random>
#include <sstream>

#include "noisyci/graph.hpp"
#include "noisyci/graph_io.hpp"
#include "reference.hpp"

using namespace noisyci;

namespace {

std::vector<Arc> A(std::initializer_list<Arc> arcs) { return arcs; }

}  // namespace

TEST_CASE("vertex sets compress and expand against a universe") {
    const std::uint64_t universe = 0b101101;
    for (std::uint64_t packed = 0; packed < 16; ++packed) {
        const auto spread = expand_bits(packed, universe);
        CHECK((spread & ~universe) == 0);
        CHECK(compress_bits(spread, universe) == packed);
    }
    CHECK(VertexSet::of({3, 0, 5}).to_vector() == std::vector<Vertex>{0, 3, 5});
    CHECK(VertexSet::all(4).size() == 4);
    CHECK_THROWS_AS(check_vertex_count(65), std::invalid_argument);
}

TEST_CASE("undirected graph construction") {
    SUBCASE("rejects self-loops and duplicates") {
        const std::vector<Edge> loop{{1, 1}};
        CHECK_THROWS_AS(UndirectedGraph(3, loop), std::invalid_argument);
        const std::vector<Edge> dup{{0, 1}, {1, 0}};
        CHECK_THROWS_AS(UndirectedGraph(3, dup), std::invalid_argument);
    }
    SUBCASE("edge masks round-trip") {
        for (std::uint64_t m = 0; m < 64; ++m) CHECK(UndirectedGraph::from_edge_mask(4, m).edge_mask() == m);
    }
    SUBCASE("toggling adds and removes") {
        const auto g = make_chain_undirected(4).toggled(0, 2);
        CHECK(g.has_edge(2, 0));
        CHECK(g.toggled(0, 2) == make_chain_undirected(4));
    }
}

TEST_CASE("chains") {
    CHECK(make_chain_undirected(3).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(make_chain_undirected(1).edge_count() == 0);
    const auto c5 = make_chain_undirected(5);
    CHECK(c5.edge_count() == 4);
    std::vector<int> degrees;
    for (Vertex v = 0; v < 5; ++v) degrees.push_back(c5.degree(v));
    CHECK(degrees == std::vector<int>{1, 2, 2, 2, 1});
    CHECK_THROWS(make_chain_undirected(0));
    CHECK(is_chain(c5));
    CHECK_FALSE(is_chain(c5.toggled(0, 2)));
    CHECK(chain_order(UndirectedGraph(4, std::vector<Edge>{{2, 0}, {0, 3}, {3, 1}})) == std::vector<Vertex>{1, 3, 0, 2});
}

TEST_CASE("chain DAGs") {
    const std::vector<Vertex> order{0, 1, 2};
    const auto collider = make_chain_dag(order, {true, false});
    CHECK(collider.arcs() == A({{0, 1}, {2, 1}}));
    CHECK(colliders(collider) == VertexSet::of({1}));
    const auto forward = make_chain_dag(order, {true, true});
    CHECK(forward.arcs() == A({{0, 1}, {1, 2}}));
    CHECK(colliders(forward).empty());

    const std::vector<Vertex> bad{0, 0, 2};
    CHECK_THROWS_AS(make_chain_dag(bad, {true, true}), std::invalid_argument);

    // Order (1,0,2,3,4,5) with the second example's orientations.
    const std::vector<Vertex> swapped{1, 0, 2, 3, 4, 5};
    const auto d = make_chain_dag(swapped, {false, false, true, false, true});
    CHECK(d.arcs() == A({{0, 1}, {2, 0}, {2, 3}, {4, 3}, {4, 5}}));
}

TEST_CASE("DAG construction rejects cycles") {
    CHECK_THROWS_AS(Dag::from_arcs(3, A({{0, 1}, {1, 2}, {2, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(Dag::from_arcs(2, A({{0, 1}, {1, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(Dag::from_arcs(2, A({{0, 0}})), std::invalid_argument);
    CHECK_FALSE(Dag::from_children(2, {0b10, 0b01}).has_value());
    const auto d = Dag::from_arcs(3, A({{0, 1}, {1, 2}}));
    CHECK_FALSE(d.with_arc(2, 0).has_value());
    CHECK(d.reversed_arc(0, 1)->has_arc(1, 0));
}

TEST_CASE("named graphs") {
    const auto d1 = std::get<Dag>(named_graph(NamedGraph::ForkChain, 4));
    CHECK(d1.arcs() == A({{0, 2}, {1, 2}, {2, 3}}));
    CHECK(std::get<Dag>(named_graph(NamedGraph::EmptyDag, 5)).arc_count() == 0);

    const auto g1 = std::get<UndirectedGraph>(named_graph(NamedGraph::HubG1, 4));
    const auto g2 = std::get<UndirectedGraph>(named_graph(NamedGraph::HubG2, 4));
    CHECK(g2.edge_count() == g1.edge_count() + 1);
    CHECK(g1.toggled(0, 1) == g2);

    const auto cliques = std::get<Dag>(named_graph(NamedGraph::Cliques, 4, 2));
    CHECK(cliques.arcs() == A({{0, 1}, {2, 3}}));
    CHECK_THROWS(named_graph(NamedGraph::Cliques, 5, 2));
    CHECK_THROWS(named_graph(NamedGraph::Cliques, 4, 0));
    CHECK(parse_named_graph("d1_prime") == NamedGraph::ForkChainShortcut);
    CHECK_FALSE(parse_named_graph("nope").has_value());
}

TEST_CASE("skeleton and moral graph") {
    const auto d1 = make_fork_chain_dag(4);
    CHECK(skeleton(d1).edges() == std::vector<Edge>{{0, 2}, {1, 2}, {2, 3}});
    CHECK(skeleton(make_empty_dag(4)).edge_count() == 0);
    CHECK(skeleton(make_complete_dag(5)) == make_complete_undirected(5));

    const auto collider = Dag::from_arcs(3, A({{0, 1}, {2, 1}}));
    CHECK(moral_graph(collider) == make_complete_undirected(3));
    CHECK(moral_graph(Dag::from_arcs(3, A({{0, 1}, {1, 2}}))) == make_chain_undirected(3));
    CHECK(moral_graph(d1).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

TEST_CASE("v-structures and Markov equivalence") {
    const auto collider = Dag::from_arcs(3, A({{0, 1}, {2, 1}}));
    CHECK(v_structures(collider) == std::vector<VStructure>{{0, 1, 2}});
    CHECK(v_structures(Dag::from_arcs(3, A({{0, 1}, {1, 2}}))).empty());
    CHECK(v_structures(Dag::from_arcs(3, A({{0, 1}, {2, 1}, {0, 2}}))).empty());

    const auto forward = Dag::from_arcs(3, A({{0, 1}, {1, 2}}));
    const auto backward = Dag::from_arcs(3, A({{1, 0}, {2, 1}}));
    CHECK(markov_equivalent(forward, backward));
    CHECK_FALSE(markov_equivalent(forward, collider));
    CHECK(markov_equivalent(collider, collider));
    CHECK_THROWS_AS(markov_equivalent(forward, make_empty_dag(4)), std::invalid_argument);
}

TEST_CASE("equal class keys exactly when d-separation tables agree (random DAGs)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + trial % 2;
        const auto a = ref::random_dag(n, 0.5, rng);
        const auto b = ref::random_dag(n, 0.5, rng);
        CHECK(markov_equivalent(a, b) == ref::equivalent_by_tables(a, b));
    }
}

TEST_CASE("pairwise connectivity") {
    CHECK(max_pairwise_connectivity(make_chain_undirected(5)) == 1);
    for (int n = 3; n <= 6; ++n) CHECK(max_pairwise_connectivity(make_complete_undirected(n)) == n - 2);
    CHECK(max_pairwise_connectivity(UndirectedGraph(5)) == 0);
    CHECK(max_pairwise_connectivity(skeleton(make_cliques_dag(6, 2))) == 1);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = ref::random_graph(6, 0.3 + 0.1 * (trial % 5), rng);
        for (Vertex u = 0; u < 6; ++u)
            for (Vertex v = u + 1; v < 6; ++v) CHECK(pair_connectivity(g, u, v) == ref::connectivity_by_packing(g, u, v));
    }
}

TEST_CASE("graph JSON") {
    const auto d = make_fork_chain_shortcut_dag(4);
    CHECK(dag_from_json(to_json(d)) == d);
    const auto g = make_hub_graph(5, true);
    CHECK(undirected_from_json(to_json(g)) == g);
    CHECK(std::holds_alternative<Dag>(graph_from_json(to_json(d))));

    using nlohmann::json;
    CHECK_THROWS(dag_from_json(json::parse(R"({"n":3,"arcs":[[0,1],[1,2],[2,0]]})")));
    CHECK_THROWS(undirected_from_json(json::parse(R"({"n":3,"edges":[[0,1],[1,0]]})")));
    CHECK_THROWS(undirected_from_json(json::parse(R"({"n":3,"edges":[[2,2]]})")));
    CHECK_THROWS(undirected_from_json(json::parse(R"({"n":3,"edges":[[0,3]]})")));
    CHECK_THROWS(graph_from_json(json::parse(R"({"n":3,"edges":[],"arcs":[]})")));
}
