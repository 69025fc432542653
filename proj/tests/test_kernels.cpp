#include <doctest.h>

#include <random>

#include "noisyci/kernels.hpp"

using namespace noisyci;
using namespace noisyci::kernels;

namespace {

TablePack random_pack(int n, std::size_t rows, std::uint64_t seed, double density) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    TablePack pack(n);
    for (std::size_t r = 0; r < rows; ++r) {
        AnswerTable t(n);
        for (std::size_t i = 0; i < t.size(); ++i) t.set(i, coin(rng));
        pack.push_back(t);
    }
    return pack;
}

}  // namespace

TEST_CASE("hamming distance") {
    const std::vector<std::uint64_t> a{0b1011, ~std::uint64_t{0}}, b{0b0001, 0};
    CHECK(hamming(a, b) == 66);
    CHECK(hamming(a, a) == 0);
}

TEST_CASE("serial and parallel kernels agree") {
    // Low density gives many ties, which must resolve identically.
    for (double density : {0.02, 0.5}) {
        const auto pack = random_pack(5, 300, 17, density);
        CHECK(all_nearest_serial(pack) == all_nearest_parallel(pack));
        for (std::size_t q = 0; q < 20; ++q) {
            const auto s = nearest_serial(pack, pack.row(q), q);
            const auto p = nearest_parallel(pack, pack.row(q), q);
            CHECK(s.distance == p.distance);
            CHECK(s.row == p.row);
            CHECK(within_serial(pack, pack.row(q), 3) == within_parallel(pack, pack.row(q), 3));
        }
    }
}

TEST_CASE("nearest picks the lowest row on ties and honours skip") {
    TablePack pack(3);
    AnswerTable zero(3), one(3), other(3);
    one.set(0, true);
    other.set(1, true);
    pack.push_back(zero);
    pack.push_back(one);
    pack.push_back(other);
    const auto r = nearest_serial(pack, zero.words(), 0);
    CHECK(r.distance == 1);
    CHECK(r.row == 1);
    CHECK(nearest_parallel(pack, zero.words(), kNoRow).row == 0);
    TablePack single(3);
    single.push_back(zero);
    CHECK_FALSE(nearest_serial(single, zero.words(), 0).found());
    CHECK(within_serial(pack, zero.words(), 1) == std::vector<std::size_t>{0, 1, 2});
}
