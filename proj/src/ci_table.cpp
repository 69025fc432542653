#include "noisyci/ci_table.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "noisyci/kernels.hpp"
#include "noisyci/separation.hpp"

namespace noisyci {

namespace {

void check_table_n(int n) {
    if (n < 2 || n > kMaxTableVertices)
        throw std::invalid_argument("answer tables need 2 <= n <= " + std::to_string(kMaxTableVertices) +
                                    ", got " + std::to_string(n));
}

std::uint64_t rest_of(int n, Vertex u, Vertex v) {
    return VertexSet::all(n).bits() & ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
}

void check_key(int n, const QueryKey& q) {
    if (q.u < 0 || q.v >= n || q.u >= q.v)
        throw std::invalid_argument("query key needs 0 <= u < v < n");
    if ((q.cond.bits() & ~rest_of(n, q.u, q.v)) != 0)
        throw std::invalid_argument("query conditioning set must exclude u and v");
}

}  // namespace

std::size_t query_count(int n) {
    check_table_n(n);
    return pair_count(n) << (n - 2);
}

int vertex_count_for_queries(std::size_t count) {
    for (int n = 2; n <= kMaxTableVertices; ++n)
        if (query_count(n) == count) return n;
    throw std::invalid_argument("no vertex count has " + std::to_string(count) + " queries");
}

std::uint64_t cond_rank(int n, const QueryKey& q) {
    check_key(n, q);
    return compress_bits(q.cond.bits(), rest_of(n, q.u, q.v));
}

VertexSet cond_from_rank(int n, Vertex u, Vertex v, std::uint64_t rank) {
    check_key(n, {u, v, {}});
    if (rank >= (std::uint64_t{1} << (n - 2))) throw std::out_of_range("conditioning rank out of range");
    return VertexSet(expand_bits(rank, rest_of(n, u, v)));
}

std::size_t query_index(int n, const QueryKey& q) {
    check_table_n(n);
    return (pair_rank(n, q.u, q.v) << (n - 2)) + cond_rank(n, q);
}

QueryKey query_key(int n, std::size_t index) {
    if (index >= query_count(n)) throw std::out_of_range("query index out of range");
    std::size_t p = index >> (n - 2);
    const std::uint64_t rank = index & ((std::size_t{1} << (n - 2)) - 1);
    Vertex u = 0;
    while (p >= static_cast<std::size_t>(n - 1 - u)) {
        p -= n - 1 - u;
        ++u;
    }
    const Vertex v = u + 1 + static_cast<Vertex>(p);
    return {u, v, VertexSet(expand_bits(rank, rest_of(n, u, v)))};
}

AnswerTable::AnswerTable(int n) : n_(n), bits_(query_count(n)), words_((bits_ + 63) / 64, 0) {}

void AnswerTable::set(std::size_t i, bool value) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= m;
    else
        words_[i >> 6] &= ~m;
}

std::size_t AnswerTable::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

AnswerTable table_of_markov(const UndirectedGraph& g) {
    check_table_n(g.n());
    return kernels::fill_table_parallel(
        g.n(), [&g](Vertex u, Vertex v, VertexSet s) { return !separates(g, u, v, s); });
}

AnswerTable table_of_bayes(const Dag& d) {
    check_table_n(d.n());
    return kernels::fill_table_parallel(
        d.n(), [&d](Vertex u, Vertex v, VertexSet s) { return !d_separates(d, u, v, s); });
}

std::size_t table_distance(const AnswerTable& a, const AnswerTable& b) {
    if (a.n() != b.n()) throw std::invalid_argument("table_distance: vertex counts differ");
    return kernels::hamming(a.words(), b.words());
}

AnswerTable apply_flips(const AnswerTable& t, std::span<const std::size_t> indices) {
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("apply_flips: duplicate index");
    if (!sorted.empty() && sorted.back() >= t.size()) throw std::out_of_range("apply_flips: index out of range");
    AnswerTable out = t;
    for (auto i : sorted) out.flip(i);
    return out;
}

// -- serialisation ---------------------------------------------------------

void write_table_csv(std::ostream& out, const AnswerTable& t) {
    out << "u,v,cond_mask,answer\n";
    const int n = t.n();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const QueryKey q = query_key(n, i);
        out << q.u << ',' << q.v << ',' << (i & ((std::size_t{1} << (n - 2)) - 1)) << ','
            << (t.get(i) ? 1 : 0) << '\n';
    }
}

AnswerTable read_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("table CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "u,v,cond_mask,answer") throw std::runtime_error("table CSV: bad header '" + line + "'");

    struct Row { long long u, v, mask, answer; };
    std::vector<Row> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<long long, 4> f{};
        std::istringstream ls(line);
        for (int k = 0; k < 4; ++k) {
            std::string cell;
            if (!std::getline(ls, cell, ','))
                throw std::runtime_error("table CSV line " + std::to_string(lineno) + ": expected 4 fields");
            try {
                std::size_t used = 0;
                f[k] = std::stoll(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("table CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        rows.push_back({f[0], f[1], f[2], f[3]});
    }
    const int n = vertex_count_for_queries(rows.size());
    AnswerTable t(n);
    std::vector<bool> seen(t.size(), false);
    for (const Row& r : rows) {
        if (r.u < 0 || r.v >= n || r.u >= r.v || r.mask < 0 || r.mask >= (1LL << (n - 2)))
            throw std::runtime_error("table CSV: query key out of range");
        if (r.answer != 0 && r.answer != 1) throw std::runtime_error("table CSV: answer must be 0 or 1");
        const std::size_t i = (pair_rank(n, static_cast<Vertex>(r.u), static_cast<Vertex>(r.v)) << (n - 2)) +
                              static_cast<std::size_t>(r.mask);
        if (seen[i]) throw std::runtime_error("table CSV: duplicate query row");
        seen[i] = true;
        t.set(i, r.answer == 1);
    }
    return t;
}

void write_table_binary(std::ostream& out, const AnswerTable& t) {
    std::uint64_t len = t.size();
    for (int b = 0; b < 8; ++b) out.put(static_cast<char>((len >> (8 * b)) & 0xFF));
    const std::size_t bytes = (t.size() + 7) / 8;
    for (std::size_t i = 0; i < bytes; ++i)
        out.put(static_cast<char>((t.words()[i / 8] >> (8 * (i % 8))) & 0xFF));
}

AnswerTable read_table_binary(std::istream& in) {
    std::uint64_t len = 0;
    for (int b = 0; b < 8; ++b) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("table binary: truncated header");
        len |= std::uint64_t(static_cast<unsigned char>(c)) << (8 * b);
    }
    AnswerTable t(vertex_count_for_queries(len));
    const std::size_t bytes = (len + 7) / 8;
    auto words = t.words();
    for (std::size_t i = 0; i < bytes; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("table binary: truncated body");
        words[i / 8] |= std::uint64_t(static_cast<unsigned char>(c)) << (8 * (i % 8));
    }
    if (len % 64 != 0 && (words.back() >> (len % 64)) != 0)
        throw std::runtime_error("table binary: nonzero padding bits");
    if (in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("table binary: trailing bytes");
    return t;
}

AnswerTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return path.extension() == ".csv" ? read_table_csv(in) : read_table_binary(in);
}

void save_table(const std::filesystem::path& path, const AnswerTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (path.extension() == ".csv")
        write_table_csv(out, t);
    else
        write_table_binary(out, t);
}

}  // namespace noisyci
