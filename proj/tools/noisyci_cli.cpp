// noisyci: structure learning from a noisy conditional independence oracle.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noisyci/adversary.hpp"
#include "noisyci/ci_table.hpp"
#include "noisyci/graph.hpp"
#include "noisyci/graph_io.hpp"
#include "noisyci/identifiability.hpp"
#include "noisyci/learners.hpp"
#include "noisyci/oracle.hpp"

using namespace noisyci;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

int exit_code(LearnStatus s) {
    switch (s) {
        case LearnStatus::Unique: return 0;
        case LearnStatus::NoneWithin: return 2;
        case LearnStatus::NotUnique: return 3;
    }
    return 1;
}

const char* status_name(LearnStatus s) {
    switch (s) {
        case LearnStatus::Unique: return "unique";
        case LearnStatus::NoneWithin: return "none";
        case LearnStatus::NotUnique: return "not_unique";
    }
    return "?";
}

json mec_json(const MecKey& key) {
    json vs = json::array();
    for (const auto& s : key.vstructs) vs.push_back({s.u, s.center, s.w});
    return {{"skeleton", to_json(key.skeleton)}, {"v_structures", vs}};
}

NetworkKind parse_mode(const std::string& mode) { return mode == "bn" ? NetworkKind::Bayes : NetworkKind::Markov; }

// Means print with one decimal, dropping a trailing ".0".
std::string short_decimal(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    std::string s = buf;
    if (s.size() > 2 && s.ends_with(".0")) s.resize(s.size() - 2);
    return s;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Table1Args {
    int n = 5;
    std::string out;
    bool exact = false;
};

int run_table1(const Table1Args& a) {
    if (a.n < 2 || a.n > kMaxSweepVertices)
        throw std::invalid_argument("table1 supports 2 <= n <= " + std::to_string(kMaxSweepVertices));
    std::string csv = a.exact ? "edges,mecs,min,mean,max,mean_exact\n" : "edges,mecs,min,mean,max\n";
    for (const auto& row : mec_distance_stats(a.n)) {
        csv += std::to_string(row.edges) + "," + std::to_string(row.mec_count) + "," + std::to_string(row.min) + "," +
               short_decimal(row.mean()) + "," + std::to_string(row.max);
        if (a.exact) {
            char buf[32];
            std::snprintf(buf, sizeof buf, ",%.6f", row.mean());
            csv += buf;
        }
        csv += "\n";
    }
    write_output(a.out, csv);
    return 0;
}

struct NearestArgs {
    std::string graph;
    std::string mode;
};

int run_nearest(const NearestArgs& a) {
    const auto g = load_graph(a.graph);
    json out;
    if (const auto* u = std::get_if<UndirectedGraph>(&g)) {
        if (a.mode == "bn") throw std::invalid_argument("--mode bn needs a DAG (\"arcs\")");
        const auto r = nearest_mn(*u);
        out = {{"distance", r.distance}, {"max_k", max_identifiable_k(r.distance)}, {"witness", to_json(r.witness)}};
    } else {
        const auto& d = std::get<Dag>(g);
        if (a.mode == "mn") throw std::invalid_argument("--mode mn needs an undirected graph (\"edges\")");
        const auto r = nearest_bn(d);
        out = {{"distance", r.distance}, {"max_k", max_identifiable_k(r.distance)}, {"witness", to_json(r.witness)}};
    }
    std::cout << out.dump() << "\n";
    return 0;
}

struct LearnArgs {
    std::string table;
    std::string oracle;
    std::size_t k = 0;
    std::string mode = "mn";
    std::size_t witness_cap = kDefaultWitnessCap;
};

int run_learn(const LearnArgs& a) {
    AnswerTable t;
    if (!a.oracle.empty())
        t = load_oracle(a.oracle).full_table();
    else
        t = load_table(a.table);

    json out;
    LearnStatus status;
    if (parse_mode(a.mode) == NetworkKind::Markov) {
        const auto r = solve_mnsl(t, a.k, a.witness_cap);
        status = r.status;
        out["graph"] = r.graph ? to_json(*r.graph) : json(nullptr);
        out["witnesses"] = json::array();
        for (const auto& w : r.witnesses) out["witnesses"].push_back(to_json(w));
        out["distance"] = r.graph ? json(r.distance) : json(nullptr);
        out["candidates_within"] = r.candidates_within;
    } else {
        const auto r = solve_bnsl(t, a.k, a.witness_cap);
        status = r.status;
        out["graph"] = r.dag ? to_json(*r.dag) : json(nullptr);
        out["witnesses"] = json::array();
        for (const auto& w : r.witnesses) out["witnesses"].push_back(mec_json(w));
        out["distance"] = r.dag ? json(r.distance) : json(nullptr);
        out["candidates_within"] = r.candidates_within;
    }
    out["status"] = status_name(status);
    std::cout << out.dump() << "\n";
    return exit_code(status);
}

int run_chain_verify(int n_max) {
    if (n_max < 3 || n_max > kMaxEnumerationVertices)
        throw std::invalid_argument("--n-max must be between 3 and " + std::to_string(kMaxEnumerationVertices));
    bool all_pass = true;
    auto report = [&](const char* what, int n, std::size_t computed, std::size_t closed, bool extra) {
        const bool pass = computed == closed && extra;
        all_pass &= pass;
        std::printf("%s n=%d: brute %zu vs closed-form %zu -> %s\n", what, n, computed, closed, pass ? "pass" : "FAIL");
    };
    for (int n = 3; n <= n_max; ++n) {
        const MarkovAtlas atlas(n);
        const auto chain = make_chain_undirected(n);
        const auto r = nearest_mn(chain, atlas);
        const auto expected = chain_mn_nearest_closed_form(n);
        bool witness_found = false;
        for (const auto& g : nearest_mn_ties(chain, atlas)) witness_found |= g == expected.witness;
        report("mn", n, r.distance, expected.distance, witness_found);
    }
    for (int n = 3; n <= std::min(n_max, kMaxSweepVertices); ++n) {
        const auto chains = enumerate_chain_dags(n);
        const DagFamily family(chains);
        const std::size_t closed = (std::size_t{1} << (n - 1)) - 2;
        std::size_t worst = 0;
        bool all_equal = true;
        bool swap_ok = true;
        for (const auto& d : chains) {
            const auto r = closest_in_family(d, family);
            const std::size_t dist = r ? r->distance : 0;
            worst = std::max(worst, dist);
            all_equal &= dist == closed;
            swap_ok &= table_distance(table_of_bayes(d), table_of_bayes(chain_swap_neighbor(d))) == closed;
        }
        report("bn", n, all_equal ? closed : worst, closed, all_equal && swap_ok);
    }
    return all_pass ? 0 : 1;
}

struct AdversaryArgs {
    int n = 5;
    std::string mode = "mn";
    std::string strategy = "exhaustive";
    std::string policy = "late_error";
    std::size_t k = 1;
    std::string transcript;
};

int run_adversary(const AdversaryArgs& a) {
    const auto kind = parse_strategy(a.strategy);
    const auto policy = parse_policy(a.policy);
    if (!kind) throw std::invalid_argument("unknown strategy '" + a.strategy + "'");
    if (!policy) throw std::invalid_argument("unknown policy '" + a.policy + "'");
    const auto inst = promise_instance(parse_mode(a.mode), a.n, a.k);
    const auto t = run_game(make_strategy(*kind), inst, *policy);
    std::printf("mode=%s n=%d strategy=%s policy=%s queries=%zu/%zu decision=%s correct=%s fooled=%s%s\n",
                a.mode.c_str(), a.n, a.strategy.c_str(), a.policy.c_str(), t.queries_used, query_count(a.n),
                std::string(to_string(t.decision)).c_str(), std::string(to_string(t.correct)).c_str(),
                t.fooled ? "yes" : "no", t.budget_exceeded ? " budget_exceeded" : "");
    if (!a.transcript.empty()) write_output(a.transcript, transcript_to_json(t, inst).dump(2) + "\n");
    return t.budget_exceeded ? 1 : 0;
}

int run_conjectures(int n, const std::string& mode) {
    const auto kind = parse_mode(mode);
    const auto r = single_edge_neighbor_report(n, kind);
    if (kind == NetworkKind::Markov) {
        std::printf("mn n=%d: %zu graphs, %zu reach a nearest neighbour by one edge edit, %zu counterexamples\n", n,
                    r.checked, r.satisfied, r.counterexamples.size());
    } else {
        std::printf(
            "bn n=%d: %zu classes, %zu reach a nearest class by one edit of some member DAG, %zu counterexamples "
            "(%zu classes have a member that cannot, %zu representatives cannot)\n",
            n, r.checked, r.satisfied, r.counterexamples.size(), r.failed_for_some_member,
            r.failed_for_representative);
    }
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 5; ++i) {
        const auto& c = r.counterexamples[i];
        const json g = std::visit([](const auto& x) { return to_json(x); }, c.graph);
        std::printf("  nearest %zu, best single edit %zu: %s\n", c.nearest_distance, c.best_single_edit,
                    g.dump().c_str());
    }
    return 0;
}

struct GraphArgs {
    std::string kind;
    int n = 5;
    int r = 2;
    std::string out;
};

int run_graph(const GraphArgs& a) {
    std::string text;
    if (a.kind == "chain") {
        text = to_json(make_chain_undirected(a.n)).dump();
    } else {
        const auto kind = parse_named_graph(a.kind);
        if (!kind) throw std::invalid_argument("unknown graph kind '" + a.kind + "'");
        text = std::visit([](const auto& x) { return to_json(x).dump(); }, named_graph(*kind, a.n, a.r));
    }
    write_output(a.out, text + "\n");
    return 0;
}

struct TableArgs {
    std::string graph;
    std::string out;
    std::vector<std::size_t> flips;
    std::size_t random_flips = 0;
    std::uint64_t seed = kDefaultSeed;
};

int run_table(const TableArgs& a) {
    if (a.out.empty()) throw std::invalid_argument("--out is required");
    const auto g = load_graph(a.graph);
    const AnswerTable truth =
        std::visit([](const auto& x) -> AnswerTable {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Dag>)
                return table_of_bayes(x);
            else
                return table_of_markov(x);
        }, g);
    ErrorModel model = NoErrors{};
    if (!a.flips.empty() && a.random_flips > 0) throw std::invalid_argument("use either --flip or --random-flips");
    if (!a.flips.empty()) model = ExplicitFlips{a.flips};
    if (a.random_flips > 0) model = RandomFlips{a.random_flips, a.seed};
    save_table(a.out, apply_flips(truth, selected_flips(model, truth.size())));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure learning from a noisy conditional independence oracle"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

    Table1Args t1;
    auto* table1 = app.add_subcommand("table1", "Nearest-class distance statistics by edge count (CSV)");
    table1->add_option("--n", t1.n, "Number of vertices (<= 5)");
    table1->add_option("--out", t1.out, "Output CSV file (default stdout)");
    table1->add_flag("--exact", t1.exact, "Append the unrounded mean");

    NearestArgs na;
    auto* nearest = app.add_subcommand("nearest", "Distance to the nearest other graph or class");
    nearest->add_option("--graph", na.graph, "Graph JSON file")->required();
    nearest->add_option("--mode", na.mode, "mn or bn (default: from the file)")
        ->check(CLI::IsMember({"mn", "bn"}));

    LearnArgs la;
    auto* learn = app.add_subcommand("learn", "Learn a structure from a table with at most k errors");
    auto* table_opt = learn->add_option("--table", la.table, "Table file (.csv or binary)");
    auto* oracle_opt = learn->add_option("--oracle", la.oracle, "Oracle spec JSON");
    table_opt->excludes(oracle_opt);
    learn->add_option("--k", la.k, "Error bound")->required();
    learn->add_option("--mode", la.mode, "mn or bn")->check(CLI::IsMember({"mn", "bn"}));
    learn->add_option("--witness-cap", la.witness_cap, "Maximum witnesses listed for not_unique");

    int n_max = 5;
    auto* chain = app.add_subcommand("chain-verify", "Check the chain distance formulas against brute force");
    chain->add_option("--n-max", n_max, "Largest n (<= 6; DAG check stops at 5)");

    AdversaryArgs aa;
    auto* adversary = app.add_subcommand("adversary-demo", "Play a query game on a two-candidate instance");
    adversary->add_option("--n", aa.n, "Number of vertices");
    adversary->add_option("--mode", aa.mode, "mn or bn")->check(CLI::IsMember({"mn", "bn"}));
    adversary->add_option("--strategy", aa.strategy, "exhaustive, early-stop, guess, all-but-last, critical-only");
    adversary->add_option("--policy", aa.policy, "truthful_g1 or late_error");
    adversary->add_option("--k", aa.k, "Error bound (0 or 1)");
    adversary->add_option("--transcript", aa.transcript, "Write the transcript JSON here ('-' for stdout)");

    int conj_n = 4;
    std::string conj_mode = "mn";
    auto* conj = app.add_subcommand("conjectures", "Is a nearest neighbour always one edge edit away?");
    conj->add_option("--n", conj_n, "Number of vertices (<= 5)");
    conj->add_option("--mode", conj_mode, "mn or bn")->check(CLI::IsMember({"mn", "bn"}));

    GraphArgs ga;
    auto* graph = app.add_subcommand("graph", "Emit a named graph as JSON");
    graph->add_option("--kind", ga.kind, "chain, empty_dag, d1, d1_prime, cliques, complete_dag, hub_g1, hub_g2")
        ->required();
    graph->add_option("--n", ga.n, "Number of vertices");
    graph->add_option("--r", ga.r, "Number of cliques (cliques only)");
    graph->add_option("--out", ga.out, "Output file (default stdout)");

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Write the CI table of a graph, optionally corrupted");
    table->add_option("--graph", ta.graph, "Graph JSON file")->required();
    table->add_option("--out", ta.out, "Output file (.csv or binary)")->required();
    table->add_option("--flip", ta.flips, "Flip this canonical index (repeatable)");
    table->add_option("--random-flips", ta.random_flips, "Flip this many random entries");
    table->add_option("--seed", ta.seed, "Seed for --random-flips");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*table1) return run_table1(t1);
        if (*nearest) return run_nearest(na);
        if (*learn) {
            if (la.table.empty() && la.oracle.empty()) throw std::invalid_argument("learn needs --table or --oracle");
            return run_learn(la);
        }
        if (*chain) return run_chain_verify(n_max);
        if (*adversary) return run_adversary(aa);
        if (*conj) return run_conjectures(conj_n, conj_mode);
        if (*graph) return run_graph(ga);
        if (*table) return run_table(ta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
