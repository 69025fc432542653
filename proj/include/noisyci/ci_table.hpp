#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "noisyci/graph.hpp"

namespace noisyci {

/// Tables are materialised only up to this many vertices (C(24,2) * 2^22 bits ~ 145 MB).
inline constexpr int kMaxTableVertices = 24;

/// One conditional-independence query: is u independent of v given cond?
struct QueryKey {
    Vertex u = 0;
    Vertex v = 0;
    VertexSet cond;
    auto operator<=>(const QueryKey&) const = default;
};

/// C(n,2) * 2^(n-2): number of distinct queries on n vertices.
std::size_t query_count(int n);

/// Vertex count whose query count equals `count`; throws if there is none.
int vertex_count_for_queries(std::size_t count);

/// Position of a query in canonical order: pairs (u, v) lexicographic, then the
/// conditioning set ranked as an integer whose bit t is the t-th smallest vertex
/// of V \ {u, v}.
std::size_t query_index(int n, const QueryKey& q);
QueryKey query_key(int n, std::size_t index);

/// Conditioning set rank within its pair block, and its inverse.
std::uint64_t cond_rank(int n, const QueryKey& q);
VertexSet cond_from_rank(int n, Vertex u, Vertex v, std::uint64_t rank);

/// Complete answer table of a graph. Bit 1 means dependent (not separated).
class AnswerTable {
public:
    AnswerTable() = default;
    /// All-zero table for n vertices.
    explicit AnswerTable(int n);

    int n() const { return n_; }
    std::size_t size() const { return bits_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    bool get(const QueryKey& q) const { return get(query_index(n_, q)); }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    std::size_t popcount() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool operator==(const AnswerTable&) const = default;

private:
    int n_ = 0;
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

AnswerTable table_of_markov(const UndirectedGraph& g);
AnswerTable table_of_bayes(const Dag& d);

/// Number of queries on which the tables disagree.
std::size_t table_distance(const AnswerTable& a, const AnswerTable& b);

/// Copy of `t` with the listed (distinct, in-range) indices toggled.
AnswerTable apply_flips(const AnswerTable& t, std::span<const std::size_t> indices);

// -- serialisation ---------------------------------------------------------
//
// CSV: header "u,v,cond_mask,answer", one row per query in canonical order;
// cond_mask is the rank from cond_rank.
// Binary: 8-byte little-endian bit count, then bits packed LSB-first per byte
// in canonical order; trailing pad bits are zero.

void write_table_csv(std::ostream& out, const AnswerTable& t);
AnswerTable read_table_csv(std::istream& in);
void write_table_binary(std::ostream& out, const AnswerTable& t);
AnswerTable read_table_binary(std::istream& in);

/// Loads a table by extension: ".csv" as CSV, anything else as binary.
AnswerTable load_table(const std::filesystem::path& path);
void save_table(const std::filesystem::path& path, const AnswerTable& t);

}  // namespace noisyci
