#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "noisyci/ci_table.hpp"
#include "noisyci/graph.hpp"
#include "noisyci/identifiability.hpp"
#include "noisyci/oracle.hpp"

namespace noisyci {

/// Two candidate graphs whose tables differ in exactly one query. The hidden
/// graph is one of them and the oracle may make up to k errors.
struct PromiseInstance {
    NetworkKind kind = NetworkKind::Markov;
    int n = 0;
    std::variant<std::pair<UndirectedGraph, UndirectedGraph>, std::pair<Dag, Dag>> candidates;
    std::pair<AnswerTable, AnswerTable> tables;
    QueryKey critical;
    std::size_t critical_index = 0;
    std::size_t k = 1;
};

/// Hub graph without / with the edge {0, 1}; they differ only on (0, 1, V \ {0, 1}).
PromiseInstance promise_mn(int n, std::size_t k = 1);
/// Fork-chain DAG without / with the arc 0 -> 1; they differ only on (0, 1, {}).
PromiseInstance promise_bn(int n, std::size_t k = 1);
PromiseInstance promise_instance(NetworkKind kind, int n, std::size_t k = 1);

enum class Decision { Undecided, Candidate0, Candidate1, NotUnique, NoneWithin };

std::string_view to_string(Decision d);

/// Which candidates are within distance k of `table`.
Decision classify(const PromiseInstance& inst, const AnswerTable& table);

/// What a strategy sees before each move.
struct GameView {
    const PromiseInstance& instance;
    const std::vector<LoggedQuery>& transcript;
    std::size_t query_space;  // number of distinct queries
};

/// A strategy either asks for a query (by canonical index) or stops with a decision.
using Action = std::variant<std::size_t, Decision>;
using Strategy = std::function<Action(const GameView&)>;

enum class StrategyKind { Exhaustive, EarlyStop, Guess, AllButLast, CriticalOnly };
enum class AdversaryPolicy { TruthfulG1, LateError };

std::optional<StrategyKind> parse_strategy(std::string_view name);
std::optional<AdversaryPolicy> parse_policy(std::string_view name);
std::string_view to_string(StrategyKind s);
std::string_view to_string(AdversaryPolicy p);
std::vector<StrategyKind> strategy_zoo();

/// exhaustive: queries every index in order, then classifies the full table.
/// early-stop: queries the critical index, then declares NotUnique.
/// guess: queries the critical index, then picks the candidate that matches.
/// all-but-last: skips the last non-critical index and assumes candidate 0 there.
/// critical-only: same as guess; intended for k = 0.
Strategy make_strategy(StrategyKind kind);

struct GameTranscript {
    std::vector<LoggedQuery> queries;
    Decision decision = Decision::Undecided;
    /// Classification of the table the adversary is committed to at the end.
    Decision correct = Decision::Undecided;
    bool fooled = false;     // decided, and the decision differs from `correct`
    bool premature = false;  // decided before seeing every query
    bool budget_exceeded = false;
    std::size_t queries_used = 0;
    std::vector<std::size_t> adversary_flips;  // indices where answers deviate from candidate 0
};

/// Runs one game. Repeated queries are answered from the transcript; the
/// strategy gets at most 2 * query_space moves before the game is cut off.
GameTranscript run_game(const Strategy& strategy, const PromiseInstance& inst, AdversaryPolicy policy);

nlohmann::json transcript_to_json(const GameTranscript& t, const PromiseInstance& inst);

}  // namespace noisyci
