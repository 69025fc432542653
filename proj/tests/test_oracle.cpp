#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "noisyci/oracle.hpp"
#include "reference.hpp"

using namespace noisyci;

TEST_CASE("error-free oracle answers the truth") {
    const auto truth = table_of_markov(make_chain_undirected(3));
    auto o = make_oracle(truth, NoErrors{}, 0);
    CHECK(o.full_table() == truth);
    CHECK_FALSE(o.query(QueryKey{0, 2, VertexSet::of({1})}));
    CHECK(o.log().size() == 1);
    o.query(0);
    CHECK(o.log().size() == 2);
    CHECK(o.log()[1].key == QueryKey{0, 1, VertexSet{}});
}

TEST_CASE("explicit flips") {
    const auto truth = table_of_markov(make_chain_undirected(3));
    const std::size_t i = query_index(3, QueryKey{0, 2, VertexSet::of({1})});
    auto o = make_oracle(truth, ExplicitFlips{{i}}, 1);
    CHECK(o.query(i));
    CHECK(o.query(i));  // same answer every time
    for (std::size_t j = 0; j < truth.size(); ++j)
        if (j != i) CHECK(o.query(j) == truth.get(j));
    CHECK_THROWS_AS(make_oracle(truth, ExplicitFlips{{0, 1}}, 1), std::invalid_argument);
    CHECK_THROWS(o.query(QueryKey{2, 0, VertexSet{}}));
}

TEST_CASE("random flips are reproducible and bounded") {
    const auto truth = table_of_bayes(make_fork_chain_dag(5));
    const auto a = make_oracle(truth, RandomFlips{3, 42}, 3);
    const auto b = make_oracle(truth, RandomFlips{3, 42}, 3);
    CHECK(a.flipped() == b.flipped());
    CHECK(a.full_table() == b.full_table());
    CHECK(table_distance(a.full_table(), truth) == 3);

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = rng() % 6;
        const std::size_t count = k == 0 ? 0 : rng() % (k + 1);
        const auto o = make_oracle(truth, RandomFlips{count, rng()}, k);
        CHECK(table_distance(o.full_table(), truth) <= k);
    }
}

TEST_CASE("oracle spec files") {
    const auto dir = std::filesystem::temp_directory_path() / "noisyci_oracle_test";
    std::filesystem::create_directories(dir);
    const auto truth = table_of_markov(make_chain_undirected(4));
    save_table(dir / "truth.csv", truth);
    {
        std::ofstream(dir / "spec.json") << R"({"truth": "truth.csv", "k": 2,
            "model": {"type": "explicit", "flips": [1, 5]}})";
    }
    const auto o = load_oracle(dir / "spec.json");
    CHECK(o.error_bound() == 2);
    CHECK(o.flipped() == std::vector<std::size_t>{1, 5});
    CHECK(table_distance(o.full_table(), truth) == 2);

    using nlohmann::json;
    CHECK_THROWS(oracle_from_json(json::parse(R"({"truth": "truth.csv", "k": -1})"), dir));
    CHECK_THROWS(oracle_from_json(json::parse(R"({"truth": "truth.csv", "k": 1, "model": {"type": "gauss"}})"), dir));
    CHECK_THROWS(oracle_from_json(json::parse(R"({"truth": "truth.csv", "k": 0,
        "model": {"type": "random", "count": 1, "seed": 3}})"), dir));
    std::filesystem::remove_all(dir);
}
