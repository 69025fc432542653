#pragma once

// Data-parallel kernels behind table construction and nearest-neighbour sweeps.
// Every kernel has a `_serial` reference and a `_parallel` OpenMP version; both
// return identical results (ties resolve to the lowest row index).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "noisyci/ci_table.hpp"

namespace noisyci::kernels {

/// Equal-length answer tables stored back to back for cache-friendly sweeps.
class TablePack {
public:
    TablePack() = default;
    explicit TablePack(int n);

    void push_back(const AnswerTable& t);
    void reserve(std::size_t rows) { data_.reserve(rows * stride_); }

    int n() const { return n_; }
    std::size_t rows() const { return stride_ == 0 ? 0 : data_.size() / stride_; }
    std::size_t stride() const { return stride_; }
    std::span<const std::uint64_t> row(std::size_t i) const {
        return {data_.data() + i * stride_, stride_};
    }

private:
    int n_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

inline std::uint32_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint32_t d = 0;
    for (std::size_t w = 0; w < a.size(); ++w) d += std::popcount(a[w] ^ b[w]);
    return d;
}

inline constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

struct Nearest {
    std::uint32_t distance = std::numeric_limits<std::uint32_t>::max();
    std::size_t row = kNoRow;
    bool found() const { return row != kNoRow; }
};

/// Closest row to `query`, ignoring row `skip` (pass kNoRow to skip nothing).
Nearest nearest_serial(const TablePack& pack, std::span<const std::uint64_t> query, std::size_t skip);
Nearest nearest_parallel(const TablePack& pack, std::span<const std::uint64_t> query, std::size_t skip);

/// For every row, the distance to its closest other row.
std::vector<std::uint32_t> all_nearest_serial(const TablePack& pack);
std::vector<std::uint32_t> all_nearest_parallel(const TablePack& pack);

/// Rows within `radius` of `query`, ascending.
std::vector<std::size_t> within_serial(const TablePack& pack, std::span<const std::uint64_t> query,
                                       std::uint32_t radius);
std::vector<std::size_t> within_parallel(const TablePack& pack, std::span<const std::uint64_t> query,
                                         std::uint32_t radius);

/// Fills an n-vertex table from dependent(u, v, cond).
template <typename Dependent>
AnswerTable fill_table_serial(int n, Dependent&& dependent) {
    AnswerTable t(n);
    const std::uint64_t all = VertexSet::all(n).bits();
    const std::size_t block = n >= 2 ? std::size_t{1} << (n - 2) : 0;
    std::size_t base = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, base += block) {
            const std::uint64_t rest = all & ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
            for (std::uint64_t r = 0; r < block; ++r)
                if (dependent(u, v, VertexSet(expand_bits(r, rest)))) t.set(base + r, true);
        }
    return t;
}

/// Parallel over vertex pairs. Pair blocks are whole words once n >= 8, so
/// smaller tables are filled serially.
template <typename Dependent>
AnswerTable fill_table_parallel(int n, Dependent&& dependent) {
    if (n < 8) return fill_table_serial(n, dependent);
    AnswerTable t(n);
    const std::uint64_t all = VertexSet::all(n).bits();
    const std::size_t block = std::size_t{1} << (n - 2);
    const auto pairs = static_cast<long long>(pair_count(n));
    std::vector<Edge> pair_list;
    pair_list.reserve(pair_count(n));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pair_list.push_back({u, v});
#pragma omp parallel for schedule(dynamic)
    for (long long p = 0; p < pairs; ++p) {
        const auto [u, v] = pair_list[p];
        const std::uint64_t rest = all & ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
        const std::size_t base = std::size_t(p) * block;
        for (std::uint64_t r = 0; r < block; ++r)
            if (dependent(u, v, VertexSet(expand_bits(r, rest)))) t.set(base + r, true);
    }
    return t;
}

}  // namespace noisyci::kernels
