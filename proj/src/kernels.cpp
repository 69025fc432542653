#include "noisyci/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace noisyci::kernels {

TablePack::TablePack(int n) : n_(n), stride_((query_count(n) + 63) / 64) {}

void TablePack::push_back(const AnswerTable& t) {
    if (t.n() != n_) throw std::invalid_argument("TablePack: table has wrong vertex count");
    data_.insert(data_.end(), t.words().begin(), t.words().end());
}

namespace {

bool better(std::uint32_t d, std::size_t row, const Nearest& best) {
    return d < best.distance || (d == best.distance && row < best.row);
}

}  // namespace

Nearest nearest_serial(const TablePack& pack, std::span<const std::uint64_t> query, std::size_t skip) {
    Nearest best;
    for (std::size_t i = 0; i < pack.rows(); ++i) {
        if (i == skip) continue;
        const auto d = hamming(pack.row(i), query);
        if (better(d, i, best)) best = {d, i};
    }
    return best;
}

Nearest nearest_parallel(const TablePack& pack, std::span<const std::uint64_t> query, std::size_t skip) {
    Nearest best;
    const auto rows = static_cast<long long>(pack.rows());
#pragma omp parallel
    {
        Nearest local;
#pragma omp for schedule(static) nowait
        for (long long i = 0; i < rows; ++i) {
            if (static_cast<std::size_t>(i) == skip) continue;
            const auto d = hamming(pack.row(i), query);
            if (better(d, i, local)) local = {d, static_cast<std::size_t>(i)};
        }
#pragma omp critical(noisyci_nearest_merge)
        if (local.found() && better(local.distance, local.row, best)) best = local;
    }
    return best;
}

std::vector<std::uint32_t> all_nearest_serial(const TablePack& pack) {
    const std::size_t rows = pack.rows();
    std::vector<std::uint32_t> best(rows, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i + 1; j < rows; ++j) {
            const auto d = hamming(pack.row(i), pack.row(j));
            best[i] = std::min(best[i], d);
            best[j] = std::min(best[j], d);
        }
    return best;
}

std::vector<std::uint32_t> all_nearest_parallel(const TablePack& pack) {
    const auto rows = static_cast<long long>(pack.rows());
    std::vector<std::uint32_t> best(pack.rows(), std::numeric_limits<std::uint32_t>::max());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < rows; ++i) {
        std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
        const auto ri = pack.row(i);
        for (long long j = 0; j < rows; ++j)
            if (j != i) m = std::min(m, hamming(ri, pack.row(j)));
        best[i] = m;
    }
    return best;
}

std::vector<std::size_t> within_serial(const TablePack& pack, std::span<const std::uint64_t> query,
                                       std::uint32_t radius) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pack.rows(); ++i)
        if (hamming(pack.row(i), query) <= radius) out.push_back(i);
    return out;
}

std::vector<std::size_t> within_parallel(const TablePack& pack, std::span<const std::uint64_t> query,
                                         std::uint32_t radius) {
    const auto rows = static_cast<long long>(pack.rows());
    std::vector<unsigned char> hit(pack.rows(), 0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) hit[i] = hamming(pack.row(i), query) <= radius;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

}  // namespace noisyci::kernels
