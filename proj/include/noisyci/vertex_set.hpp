#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace noisyci {

using Vertex = int;

/// Largest vertex count a bitmask-backed graph can hold.
inline constexpr int kMaxVertices = 64;

inline void check_vertex_count(int n, int max_n = kMaxVertices) {
    if (n < 0 || n > max_n)
        throw std::invalid_argument("vertex count " + std::to_string(n) + " outside [0, " +
                                    std::to_string(max_n) + "]");
}

/// Subset of {0, ..., n-1} stored as a 64-bit mask.
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr VertexSet all(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }
    static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint64_t{1} << v); }
    static VertexSet of(std::initializer_list<Vertex> vs) {
        VertexSet s;
        for (Vertex v : vs) s.insert(v);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1U; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr void insert(Vertex v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(Vertex v) { bits_ &= ~(std::uint64_t{1} << v); }
    constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

    /// Lowest member; undefined on the empty set.
    constexpr Vertex front() const { return std::countr_zero(bits_); }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }
    constexpr auto operator<=>(const VertexSet&) const = default;

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    /// Iterates members in increasing order.
    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t b) : b_(b) {}
        constexpr Vertex operator*() const { return std::countr_zero(b_); }
        constexpr iterator& operator++() { b_ &= b_ - 1; return *this; }
        constexpr bool operator==(const iterator&) const = default;
    private:
        std::uint64_t b_;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

private:
    std::uint64_t bits_ = 0;
};

/// Packs the members of `set` that lie in `universe` into consecutive low bits,
/// in increasing vertex order.
constexpr std::uint64_t compress_bits(std::uint64_t set, std::uint64_t universe) {
    std::uint64_t out = 0;
    int t = 0;
    for (std::uint64_t u = universe; u != 0; u &= u - 1, ++t)
        if (set & (u & -u)) out |= std::uint64_t{1} << t;
    return out;
}

/// Inverse of compress_bits.
constexpr std::uint64_t expand_bits(std::uint64_t packed, std::uint64_t universe) {
    std::uint64_t out = 0;
    for (std::uint64_t u = universe; u != 0 && packed != 0; u &= u - 1, packed >>= 1)
        if (packed & 1U) out |= (u & -u);
    return out;
}

}  // namespace noisyci
