#include <doctest.h>

#include <random>
#include <sstream>

#include "noisyci/ci_table.hpp"
#include "noisyci/identifiability.hpp"
#include "noisyci/separation.hpp"
#include "reference.hpp"

using namespace noisyci;

TEST_CASE("query counts") {
    CHECK(query_count(2) == 1);
    CHECK(query_count(3) == 6);
    CHECK(query_count(5) == 80);
    CHECK(query_count(6) == 240);
    CHECK(vertex_count_for_queries(80) == 5);
    CHECK_THROWS(vertex_count_for_queries(81));
}

TEST_CASE("canonical index order") {
    CHECK(query_index(3, QueryKey{0, 1, VertexSet{}}) == 0);
    for (int n = 2; n <= 6; ++n) {
        const auto qs = ref::canonical_queries(n);
        REQUIRE(qs.size() == query_count(n));
        for (std::size_t i = 0; i < qs.size(); ++i) {
            CHECK(query_index(n, qs[i]) == i);
            CHECK(query_key(n, i) == qs[i]);
        }
    }
    CHECK_THROWS_AS(query_key(3, 6), std::out_of_range);
    CHECK_THROWS(query_index(3, QueryKey{1, 0, VertexSet{}}));
    CHECK_THROWS(query_index(3, QueryKey{0, 1, VertexSet::of({1})}));
    CHECK_THROWS(query_index(3, QueryKey{0, 1, VertexSet::of({3})}));
}

TEST_CASE("tables of undirected graphs") {
    CHECK(table_of_markov(UndirectedGraph(3)).popcount() == 0);
    CHECK(table_of_markov(make_complete_undirected(4)).popcount() == query_count(4));
    const auto chain = table_of_markov(make_chain_undirected(3));
    CHECK(chain.popcount() == 5);
    CHECK_FALSE(chain.get(QueryKey{0, 2, VertexSet::of({1})}));
    for (const auto& g : enumerate_undirected(4)) CHECK(table_of_markov(g) == ref::table_by_paths(g));
}

TEST_CASE("tables of DAGs") {
    CHECK(table_of_bayes(make_empty_dag(3)).popcount() == 0);
    const std::vector<Arc> c{{0, 1}, {2, 1}};
    const auto collider = table_of_bayes(Dag::from_arcs(3, c));
    CHECK_FALSE(collider.get(QueryKey{0, 2, VertexSet{}}));
    CHECK(collider.get(QueryKey{0, 2, VertexSet::of({1})}));
    const std::vector<Arc> f{{0, 1}, {1, 2}}, b{{1, 0}, {2, 1}};
    CHECK(table_of_bayes(Dag::from_arcs(3, f)) == table_of_bayes(Dag::from_arcs(3, b)));
}

TEST_CASE("large tables fill identically in serial and parallel") {
    std::mt19937_64 rng(3);
    const auto d = ref::random_dag(9, 0.3, rng);
    auto dep = [&](Vertex u, Vertex v, VertexSet s) { return !d_separates(d, u, v, s); };
    CHECK(kernels::fill_table_serial(9, dep) == kernels::fill_table_parallel(9, dep));
}

TEST_CASE("table distance") {
    const auto t = table_of_bayes(make_fork_chain_dag(4));
    CHECK(table_distance(t, t) == 0);
    const auto kn = make_complete_undirected(5);
    CHECK(table_distance(table_of_markov(kn), table_of_markov(kn.toggled(1, 3))) == 1);
    CHECK(table_distance(t, table_of_bayes(make_fork_chain_shortcut_dag(4))) == 1);
    CHECK_THROWS_AS(table_distance(t, AnswerTable(5)), std::invalid_argument);
}

TEST_CASE("flips") {
    const auto t = table_of_markov(make_chain_undirected(5));
    CHECK(apply_flips(t, std::vector<std::size_t>{}) == t);
    const std::vector<std::size_t> one{17};
    CHECK(apply_flips(apply_flips(t, one), one) == t);
    const std::vector<std::size_t> four{0, 3, 40, 79};
    CHECK(table_distance(apply_flips(t, four), t) == 4);
    const std::vector<std::size_t> dup{3, 3};
    CHECK_THROWS_AS(apply_flips(t, dup), std::invalid_argument);
    const std::vector<std::size_t> out{80};
    CHECK_THROWS_AS(apply_flips(t, out), std::out_of_range);
}

TEST_CASE("CSV round trip and validation") {
    const auto t = table_of_bayes(make_fork_chain_dag(5));
    std::stringstream ss;
    write_table_csv(ss, t);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    CHECK(header == "u,v,cond_mask,answer");
    CHECK(read_table_csv(ss) == t);

    std::stringstream dup("u,v,cond_mask,answer\n0,1,0,1\n0,1,0,0\n0,2,0,1\n1,2,0,0\n0,1,1,1\n0,2,1,1\n");
    CHECK_THROWS(read_table_csv(dup));
    std::stringstream bad("u,v,cond_mask,answer\n0,1,0,2\n");
    CHECK_THROWS(read_table_csv(bad));
    std::stringstream shortfile("u,v,cond_mask,answer\n0,1,0,1\n0,2,0,1\n");
    CHECK_THROWS(read_table_csv(shortfile));
}

TEST_CASE("binary round trip and validation") {
    const auto t = table_of_markov(make_hub_graph(6, false));
    std::stringstream ss;
    write_table_binary(ss, t);
    const std::string bytes = ss.str();
    CHECK(bytes.size() == 8 + 240 / 8);
    CHECK(static_cast<unsigned char>(bytes[0]) == 240);
    CHECK(read_table_binary(ss) == t);

    std::string trailing = bytes + "x";
    std::stringstream tr(trailing);
    CHECK_THROWS(read_table_binary(tr));

    // n = 3 has 6 bits; a set pad bit must be rejected.
    AnswerTable small(3);
    small.set(5, true);
    std::stringstream s3;
    write_table_binary(s3, small);
    std::string padded = s3.str();
    padded.back() = static_cast<char>(padded.back() | 0x80);
    std::stringstream p3(padded);
    CHECK_THROWS(read_table_binary(p3));
}
