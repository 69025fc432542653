#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include <json.hpp>

#include "noisyci/ci_table.hpp"

namespace noisyci {

struct NoErrors {};
struct ExplicitFlips {
    std::vector<std::size_t> indices;
};
struct RandomFlips {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

using ErrorModel = std::variant<NoErrors, ExplicitFlips, RandomFlips>;

/// Indices a model corrupts for a table of `query_count` entries. RandomFlips
/// draws `count` distinct indices with a seeded mt19937_64.
std::vector<std::size_t> selected_flips(const ErrorModel& model, std::size_t query_count);

struct LoggedQuery {
    QueryKey key;
    bool answer = false;
};

/// Unreliable CI oracle: a fixed corrupted copy of the truth table, at most k
/// entries away from it, plus a log of served queries. Not thread-safe.
class Oracle {
public:
    /// Throws std::invalid_argument if the model would flip more than k entries.
    Oracle(AnswerTable truth, const ErrorModel& model, std::size_t k);

    /// True means "not independent". Appends to the log.
    bool query(const QueryKey& q);
    bool query(std::size_t index);

    const AnswerTable& truth() const { return truth_; }
    const AnswerTable& full_table() const { return effective_; }
    std::size_t error_bound() const { return k_; }
    const std::vector<std::size_t>& flipped() const { return flipped_; }
    const std::vector<LoggedQuery>& log() const { return log_; }

private:
    AnswerTable truth_;
    AnswerTable effective_;
    std::size_t k_;
    std::vector<std::size_t> flipped_;
    std::vector<LoggedQuery> log_;
};

Oracle make_oracle(AnswerTable truth, const ErrorModel& model, std::size_t k);

/// {"truth": "<table file>", "k": 1, "model": {"type": "explicit"|"random"|"none",
///  "flips": [...], "count": c, "seed": s}}. Relative truth paths resolve
/// against `base_dir`.
Oracle oracle_from_json(const nlohmann::json& spec, const std::filesystem::path& base_dir = {});
Oracle load_oracle(const std::filesystem::path& path);

}  // namespace noisyci
