#include "noisyci/adversary.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "noisyci/graph_io.hpp"

namespace noisyci {

namespace {

void require_promise_size(int n) {
    if (n < 3) throw std::invalid_argument("promise instances need n >= 3");
    check_vertex_count(n, kMaxTableVertices);
}

std::size_t single_difference(const AnswerTable& a, const AnswerTable& b) {
    std::optional<std::size_t> where;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.get(i) == b.get(i)) continue;
        if (where) throw std::logic_error("candidate tables differ in more than one query");
        where = i;
    }
    if (!where) throw std::logic_error("candidate tables are identical");
    return *where;
}

template <typename G>
PromiseInstance make_instance(NetworkKind kind, G first, G second, AnswerTable t0, AnswerTable t1,
                              const QueryKey& critical, std::size_t k) {
    PromiseInstance inst;
    inst.kind = kind;
    inst.n = t0.n();
    inst.critical = critical;
    inst.critical_index = single_difference(t0, t1);
    if (inst.critical_index != query_index(inst.n, critical))
        throw std::logic_error("candidate tables differ away from the critical query");
    inst.candidates = std::pair<G, G>(std::move(first), std::move(second));
    inst.tables = {std::move(t0), std::move(t1)};
    inst.k = k;
    return inst;
}

AnswerTable table_from_answers(const PromiseInstance& inst, const std::vector<LoggedQuery>& transcript,
                               std::optional<std::size_t> assume_index = std::nullopt) {
    AnswerTable t(inst.n);
    for (const auto& q : transcript) t.set(query_index(inst.n, q.key), q.answer);
    if (assume_index) t.set(*assume_index, inst.tables.first.get(*assume_index));
    return t;
}

std::vector<bool> answered_mask(const GameView& view) {
    std::vector<bool> seen(view.query_space, false);
    for (const auto& q : view.transcript) seen[query_index(view.instance.n, q.key)] = true;
    return seen;
}

std::optional<bool> answer_at(const GameView& view, std::size_t index) {
    for (const auto& q : view.transcript)
        if (query_index(view.instance.n, q.key) == index) return q.answer;
    return std::nullopt;
}

std::size_t last_non_critical(const PromiseInstance& inst, std::size_t query_space) {
    std::size_t last = query_space - 1;
    return last == inst.critical_index ? last - 1 : last;
}

}  // namespace

PromiseInstance promise_mn(int n, std::size_t k) {
    require_promise_size(n);
    auto g1 = make_hub_graph(n, false);
    auto g2 = make_hub_graph(n, true);
    auto t1 = table_of_markov(g1);
    auto t2 = table_of_markov(g2);
    const QueryKey critical{0, 1, VertexSet::all(n) - VertexSet::of({0, 1})};
    return make_instance(NetworkKind::Markov, std::move(g1), std::move(g2), std::move(t1), std::move(t2), critical,
                         k);
}

PromiseInstance promise_bn(int n, std::size_t k) {
    require_promise_size(n);
    auto d1 = make_fork_chain_dag(n);
    auto d2 = make_fork_chain_shortcut_dag(n);
    auto t1 = table_of_bayes(d1);
    auto t2 = table_of_bayes(d2);
    const QueryKey critical{0, 1, VertexSet{}};
    return make_instance(NetworkKind::Bayes, std::move(d1), std::move(d2), std::move(t1), std::move(t2), critical, k);
}

PromiseInstance promise_instance(NetworkKind kind, int n, std::size_t k) {
    return kind == NetworkKind::Markov ? promise_mn(n, k) : promise_bn(n, k);
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Undecided: return "undecided";
        case Decision::Candidate0: return "candidate0";
        case Decision::Candidate1: return "candidate1";
        case Decision::NotUnique: return "not_unique";
        case Decision::NoneWithin: return "none";
    }
    return "?";
}

Decision classify(const PromiseInstance& inst, const AnswerTable& table) {
    const bool first = table_distance(table, inst.tables.first) <= inst.k;
    const bool second = table_distance(table, inst.tables.second) <= inst.k;
    if (first && second) return Decision::NotUnique;
    if (first) return Decision::Candidate0;
    if (second) return Decision::Candidate1;
    return Decision::NoneWithin;
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
    for (auto s : strategy_zoo())
        if (to_string(s) == name) return s;
    return std::nullopt;
}

std::optional<AdversaryPolicy> parse_policy(std::string_view name) {
    if (name == "truthful_g1") return AdversaryPolicy::TruthfulG1;
    if (name == "late_error") return AdversaryPolicy::LateError;
    return std::nullopt;
}

std::string_view to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::Exhaustive: return "exhaustive";
        case StrategyKind::EarlyStop: return "early-stop";
        case StrategyKind::Guess: return "guess";
        case StrategyKind::AllButLast: return "all-but-last";
        case StrategyKind::CriticalOnly: return "critical-only";
    }
    return "?";
}

std::string_view to_string(AdversaryPolicy p) {
    return p == AdversaryPolicy::TruthfulG1 ? "truthful_g1" : "late_error";
}

std::vector<StrategyKind> strategy_zoo() {
    return {StrategyKind::Exhaustive, StrategyKind::EarlyStop, StrategyKind::Guess, StrategyKind::AllButLast,
            StrategyKind::CriticalOnly};
}

Strategy make_strategy(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Exhaustive:
            return [](const GameView& view) -> Action {
                const auto seen = answered_mask(view);
                for (std::size_t i = 0; i < seen.size(); ++i)
                    if (!seen[i]) return i;
                return classify(view.instance, table_from_answers(view.instance, view.transcript));
            };
        case StrategyKind::EarlyStop:
            return [](const GameView& view) -> Action {
                if (!answer_at(view, view.instance.critical_index)) return view.instance.critical_index;
                return Decision::NotUnique;
            };
        case StrategyKind::Guess:
        case StrategyKind::CriticalOnly:
            return [](const GameView& view) -> Action {
                const auto& inst = view.instance;
                const auto answer = answer_at(view, inst.critical_index);
                if (!answer) return inst.critical_index;
                return *answer == inst.tables.first.get(inst.critical_index) ? Decision::Candidate0
                                                                             : Decision::Candidate1;
            };
        case StrategyKind::AllButLast:
            return [](const GameView& view) -> Action {
                const std::size_t skip = last_non_critical(view.instance, view.query_space);
                const auto seen = answered_mask(view);
                for (std::size_t i = 0; i < seen.size(); ++i)
                    if (!seen[i] && i != skip) return i;
                return classify(view.instance, table_from_answers(view.instance, view.transcript, skip));
            };
    }
    throw std::invalid_argument("unknown strategy");
}

GameTranscript run_game(const Strategy& strategy, const PromiseInstance& inst, AdversaryPolicy policy) {
    const std::size_t space = query_count(inst.n);
    const bool may_err = policy == AdversaryPolicy::LateError && inst.k >= 1;
    std::vector<bool> queried(space, false);
    std::size_t remaining = space;

    GameTranscript out;
    const GameView view{inst, out.queries, space};
    const std::size_t budget = 2 * space;
    std::size_t moves = 0;
    for (; moves < budget; ++moves) {
        const Action action = strategy(view);
        if (const auto* d = std::get_if<Decision>(&action)) {
            out.decision = *d;
            break;
        }
        const std::size_t index = std::get<std::size_t>(action);
        if (index >= space) throw std::out_of_range("strategy queried index " + std::to_string(index));
        if (queried[index]) continue;
        queried[index] = true;
        --remaining;
        bool answer = inst.tables.first.get(index);
        // Deceive only on the very last fresh query, and never on the critical one.
        if (may_err && remaining == 0 && index != inst.critical_index) {
            answer = !answer;
            out.adversary_flips.push_back(index);
        }
        out.queries.push_back({query_key(inst.n, index), answer});
    }
    out.budget_exceeded = moves == budget;
    out.queries_used = out.queries.size();

    // Commit the unseen part: a late-error adversary places its flip on the
    // highest unqueried non-critical index.
    if (may_err && out.adversary_flips.empty()) {
        for (std::size_t i = space; i-- > 0;) {
            if (!queried[i] && i != inst.critical_index) {
                out.adversary_flips.push_back(i);
                break;
            }
        }
    }
    out.correct = classify(inst, apply_flips(inst.tables.first, out.adversary_flips));
    const bool decided = out.decision != Decision::Undecided;
    out.fooled = decided && out.decision != out.correct;
    out.premature = decided && out.queries_used < space;
    return out;
}

nlohmann::json transcript_to_json(const GameTranscript& t, const PromiseInstance& inst) {
    nlohmann::json queries = nlohmann::json::array();
    for (const auto& q : t.queries)
        queries.push_back({{"u", q.key.u}, {"v", q.key.v}, {"cond", q.key.cond.to_vector()}, {"answer", q.answer}});
    nlohmann::json candidates = std::visit(
        [](const auto& pair) { return nlohmann::json::array({to_json(pair.first), to_json(pair.second)}); },
        inst.candidates);
    return {
        {"mode", inst.kind == NetworkKind::Markov ? "mn" : "bn"},
        {"n", inst.n},
        {"k", inst.k},
        {"candidates", candidates},
        {"critical",
         {{"u", inst.critical.u},
          {"v", inst.critical.v},
          {"cond", inst.critical.cond.to_vector()},
          {"index", inst.critical_index}}},
        {"queries", queries},
        {"queries_used", t.queries_used},
        {"decision", to_string(t.decision)},
        {"correct", to_string(t.correct)},
        {"fooled", t.fooled},
        {"premature", t.premature},
        {"budget_exceeded", t.budget_exceeded},
        {"adversary_flips", t.adversary_flips},
    };
}

}  // namespace noisyci
