#include "noisyci/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace noisyci {

std::vector<std::size_t> selected_flips(const ErrorModel& model, std::size_t query_count) {
    if (const auto* e = std::get_if<ExplicitFlips>(&model)) return e->indices;
    if (const auto* r = std::get_if<RandomFlips>(&model)) {
        if (r->count > query_count) throw std::invalid_argument("random model flips more entries than exist");
        // Partial Fisher-Yates; depends only on the engine, so it is reproducible.
        std::mt19937_64 rng(r->seed);
        std::vector<std::size_t> pool(query_count);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < r->count; ++i) {
            const std::size_t j = i + rng() % (query_count - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(r->count);
        std::sort(pool.begin(), pool.end());
        return pool;
    }
    return {};
}

Oracle::Oracle(AnswerTable truth, const ErrorModel& model, std::size_t k)
    : truth_(std::move(truth)), k_(k) {
    flipped_ = selected_flips(model, truth_.size());
    if (flipped_.size() > k_)
        throw std::invalid_argument("error model flips " + std::to_string(flipped_.size()) +
                                    " entries but the bound is " + std::to_string(k_));
    effective_ = apply_flips(truth_, flipped_);
    std::sort(flipped_.begin(), flipped_.end());
}

bool Oracle::query(const QueryKey& q) {
    const bool answer = effective_.get(query_index(effective_.n(), q));
    log_.push_back({q, answer});
    return answer;
}

bool Oracle::query(std::size_t index) { return query(query_key(effective_.n(), index)); }

Oracle make_oracle(AnswerTable truth, const ErrorModel& model, std::size_t k) {
    return Oracle(std::move(truth), model, k);
}

Oracle oracle_from_json(const nlohmann::json& spec, const std::filesystem::path& base_dir) {
    if (!spec.is_object() || !spec.contains("truth") || !spec["truth"].is_string())
        throw std::invalid_argument("oracle spec needs a \"truth\" table path");
    if (!spec.contains("k") || !spec["k"].is_number_unsigned())
        throw std::invalid_argument("oracle spec needs a non-negative integer \"k\"");
    std::filesystem::path truth_path = spec["truth"].get<std::string>();
    if (truth_path.is_relative() && !base_dir.empty()) truth_path = base_dir / truth_path;

    ErrorModel model = NoErrors{};
    if (spec.contains("model")) {
        const auto& m = spec["model"];
        const std::string type = m.value("type", "none");
        if (type == "explicit") {
            model = ExplicitFlips{m.at("flips").get<std::vector<std::size_t>>()};
        } else if (type == "random") {
            model = RandomFlips{m.at("count").get<std::size_t>(), m.value("seed", std::uint64_t{0})};
        } else if (type != "none") {
            throw std::invalid_argument("unknown error model type '" + type + "'");
        }
    }
    return Oracle(load_table(truth_path), model, spec["k"].get<std::size_t>());
}

Oracle load_oracle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json spec;
    in >> spec;
    return oracle_from_json(spec, path.parent_path());
}

}  // namespace noisyci
