#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rpq/baseline.hpp"
#include "rpq/bench.hpp"
#include "rpq/errors.hpp"
#include "rpq/generators.hpp"
#include "rpq/oracle.hpp"
#include "rpq/ospg.hpp"
#include "rpq/tclosure.hpp"

namespace rpq::cli {

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

namespace detail_cli {

inline LabeledGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return load_edge_list(in);
}

inline Nfa load_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open automaton file '" + path + "'");
    return load_automaton(in);
}

inline std::string read_query_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open query file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    throw ParseError("query file '" + path + "' has no query line");
}

inline void print_pairs(const LabeledGraph& g, const PairSet& pairs, std::ostream& out) {
    for (const auto& [u, v] : pairs.sorted()) {
        out << g.vertex_name(u) << '\t' << g.vertex_name(v) << '\n';
    }
}

struct EngineRun {
    PairSet pairs;
    std::vector<std::pair<std::string, std::uint64_t>> counters;
};

inline EngineRun run_engine(const std::string& engine, const LabeledGraph& g, const Nfa& m,
                            const AstPtr& ast) {
    EngineRun run;
    if (engine == "ospg") {
        OspgReport r = eval_rpq_detailed(g, m);
        run.pairs = std::move(r.pairs);
        run.counters = {{"step1_edge_checks", r.counters.step1_edge_checks},
                        {"light_join_lookups", r.counters.light_join_lookups},
                        {"heavy_sources", r.counters.heavy_sources},
                        {"heavy_bfs_edge_visits", r.counters.heavy_bfs_edge_visits},
                        {"work_total", r.counters.total()},
                        {"abc_vertices", r.abc_vertices},
                        {"abc_edges", r.abc_edges},
                        {"out_abc", r.out_abc}};
    } else if (engine == "pg") {
        PgReport r = eval_pg(g, m);
        run.pairs = std::move(r.pairs);
        run.counters = {{"bfs_edge_visits", r.bfs_edge_visits},
                        {"product_vertices", r.product_vertices},
                        {"product_edges", r.product_edges}};
    } else if (engine == "pg-bidi") {
        BidiReport r = eval_pg_bidirectional(g, m);
        run.pairs = std::move(r.pairs);
        run.counters = {{"fwd_bfs_edge_visits", r.forward_visits},
                        {"bwd_bfs_edge_visits", r.backward_visits}};
    } else if (engine == "oracle") {
        if (!ast) {
            throw std::invalid_argument(
                "the oracle engine interprets the query syntax tree and cannot run from an "
                "automaton file");
        }
        run.pairs = eval_matrix(g, *ast);
    } else {
        throw std::invalid_argument("unknown engine '" + engine + "'");
    }
    return run;
}

/// Exit-0 iff all named pair sets are identical; prints the differences of
/// later sets against the first otherwise.
inline bool report_agreement(const std::vector<std::pair<std::string, const PairSet*>>& sets,
                             const LabeledGraph& g, std::ostream& err) {
    bool ok = true;
    const auto& [base_name, base] = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) {
        const auto& [name, candidate] = sets[i];
        if (*candidate == *base) continue;
        ok = false;
        err << "MISMATCH " << base_name << " vs " << name << ":\n";
        for (const auto& [pair, in_base] : base->symmetric_difference(*candidate)) {
            err << "  " << (in_base ? "-" : "+") << ' ' << g.vertex_name(pair.first) << '\t'
                << g.vertex_name(pair.second) << '\n';
        }
    }
    return ok;
}

inline bool verify_instance(const LabeledGraph& g, const AstPtr& ast, std::ostream& err) {
    const Nfa m = compile(*ast);
    const PairSet ospg = eval_rpq(g, m);
    const PairSet pg = eval_pg(g, m).pairs;
    const PairSet bidi = eval_pg_bidirectional(g, m).pairs;
    const PairSet oracle = eval_matrix(g, *ast);
    return report_agreement(
        {{"ospg", &ospg}, {"pg", &pg}, {"pg-bidi", &bidi}, {"oracle", &oracle}}, g, err);
}

}  // namespace detail_cli

/// Entry point shared by the binary and the in-process tests. `args` excludes
/// the program name. Data goes to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"regular path query engines and benchmarks"};
    app.require_subcommand(1);

    // eval
    std::string graph_path, query, query_file, automaton_path, engine = "ospg";
    std::string output_path, dump_abc_path;
    bool counters = false;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a query over a graph");
    eval_cmd->add_option("--graph", graph_path, "edge-list file")->required();
    eval_cmd->add_option("--query", query, "query string");
    eval_cmd->add_option("--query-file", query_file, "file holding a one-line query");
    eval_cmd->add_option("--automaton", automaton_path, "automaton file instead of a query");
    eval_cmd->add_option("--engine", engine, "ospg | pg | pg-bidi | oracle");
    eval_cmd->add_option("--output", output_path, "write pairs here instead of stdout");
    eval_cmd->add_option("--dump-abc", dump_abc_path, "dump the reduced graph for debugging");
    eval_cmd->add_flag("--counters", counters, "emit work counters on the diagnostics stream");

    // verify
    std::string v_graph, v_query, v_seeds;
    auto* verify_cmd = app.add_subcommand("verify", "cross-check all engines on an instance");
    verify_cmd->add_option("--graph", v_graph, "edge-list file")->required();
    verify_cmd->add_option("--query", v_query, "query string")->required();
    verify_cmd->add_option("--seeds", v_seeds,
                           "comma-separated seeds for extra random instances");

    // gen
    std::string g_family, g_label = "b", g_alphabet = "a,b,c", g_out;
    std::size_t g_n = 0, g_edges = 0;
    std::uint64_t g_seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark instance");
    gen_cmd->add_option("--family", g_family, "path | two-cycles | random")->required();
    gen_cmd->add_option("--n", g_n, "size parameter")->required();
    gen_cmd->add_option("--label", g_label, "edge label for the path family");
    gen_cmd->add_option("--edges", g_edges, "edge count for the random family");
    gen_cmd->add_option("--alphabet", g_alphabet, "labels for the random family");
    gen_cmd->add_option("--seed", g_seed, "seed for the random family");
    gen_cmd->add_option("--out", g_out, "output edge-list file")->required();

    // bench
    std::string b_families = "path", b_sizes, b_engines, b_query, b_out;
    std::size_t b_repeats = 3;
    auto* bench_cmd = app.add_subcommand("bench", "run an engine x instance grid");
    bench_cmd->add_option("--family", b_families, "comma-separated families");
    bench_cmd->add_option("--sizes", b_sizes, "comma-separated sizes")->required();
    bench_cmd->add_option("--engines", b_engines, "comma-separated engines")->required();
    bench_cmd->add_option("--query", b_query, "query string")->required();
    bench_cmd->add_option("--repeats", b_repeats, "wall-time repeats per cell");
    bench_cmd->add_option("--out", b_out, "CSV output file (stdout when absent)");

    // tc
    std::string t_graph, t_formulation = "linear";
    bool t_counters = false;
    auto* tc_cmd = app.add_subcommand("tc", "transitive closure of a graph, labels ignored");
    tc_cmd->add_option("--graph", t_graph, "edge-list file")->required();
    tc_cmd->add_option("--formulation", t_formulation, "linear | binary");
    tc_cmd->add_flag("--counters", t_counters, "emit iteration and work counters");

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (eval_cmd->parsed()) {
            const int query_inputs = (query.empty() ? 0 : 1) + (query_file.empty() ? 0 : 1) +
                                     (automaton_path.empty() ? 0 : 1);
            if (query_inputs != 1) {
                err << "error: give exactly one of --query, --query-file, --automaton\n";
                return 1;
            }
            const LabeledGraph g = detail_cli::load_graph_file(graph_path);
            AstPtr ast;
            Nfa m;
            if (!automaton_path.empty()) {
                m = detail_cli::load_automaton_file(automaton_path);
            } else {
                const std::string q =
                    query.empty() ? detail_cli::read_query_file(query_file) : query;
                ast = parse(q);
                m = compile(*ast);
            }
            detail_cli::EngineRun run = detail_cli::run_engine(engine, g, m, ast);
            if (!dump_abc_path.empty()) {
                const LabeledGraph restricted = restrict_alphabet(g, detail::nfa_symbols(m));
                const AbcGraph abc = build_abc_graph(restricted, m);
                std::ofstream dump(dump_abc_path);
                if (!dump) throw ParseError("cannot write '" + dump_abc_path + "'");
                abc.inner.serialize(dump);
            }
            if (!output_path.empty()) {
                std::ofstream file(output_path);
                if (!file) throw ParseError("cannot write '" + output_path + "'");
                detail_cli::print_pairs(g, run.pairs, file);
            } else {
                detail_cli::print_pairs(g, run.pairs, out);
            }
            err << "OUT=" << run.pairs.size() << '\n';
            if (counters) {
                for (const auto& [name, value] : run.counters) {
                    err << name << '=' << value << '\n';
                }
            }
            return 0;
        }

        if (verify_cmd->parsed()) {
            const LabeledGraph g = detail_cli::load_graph_file(v_graph);
            const AstPtr ast = parse(v_query);
            bool ok = detail_cli::verify_instance(g, ast, err);
            for (const std::string& seed_text : split_csv(v_seeds)) {
                const std::uint64_t seed = std::stoull(seed_text);
                const auto symbols = collect_symbols(*ast);
                const LabeledGraph random_g = gen_random(8, 20, symbols, seed);
                if (!detail_cli::verify_instance(random_g, ast, err)) {
                    err << "mismatch on random instance, seed " << seed << '\n';
                    ok = false;
                }
            }
            err << (ok ? "AGREE" : "DISAGREE") << '\n';
            return ok ? 0 : 1;
        }

        if (gen_cmd->parsed()) {
            LabeledGraph g;
            if (g_family == "path") {
                g = gen_path(g_n, g_label);
            } else if (g_family == "two-cycles") {
                g = gen_two_cycles(g_n);
            } else if (g_family == "random") {
                g = gen_random(g_n, g_edges, split_csv(g_alphabet), g_seed);
            } else {
                err << "error: unknown family '" << g_family << "'\n";
                return 1;
            }
            std::ofstream file(g_out);
            if (!file) throw ParseError("cannot write '" + g_out + "'");
            g.serialize(file);
            err << "wrote " << g.edge_count() << " edges\n";
            return 0;
        }

        if (bench_cmd->parsed()) {
            std::vector<std::size_t> sizes;
            for (const std::string& s : split_csv(b_sizes)) sizes.push_back(std::stoull(s));
            const BenchReport report = run_grid(split_csv(b_families), sizes,
                                                split_csv(b_engines), b_query, b_repeats, &err);
            if (!b_out.empty()) {
                std::ofstream file(b_out);
                if (!file) throw ParseError("cannot write '" + b_out + "'");
                report.to_csv(file);
            } else {
                report.to_csv(out);
            }
            return 0;
        }

        if (tc_cmd->parsed()) {
            const LabeledGraph g = detail_cli::load_graph_file(t_graph);
            const Digraph d = Digraph::from_labeled(g);
            TcResult result;
            if (t_formulation == "linear") {
                result = tc_linear(d);
            } else if (t_formulation == "binary") {
                result = tc_binary(d);
            } else {
                err << "error: unknown formulation '" << t_formulation << "'\n";
                return 1;
            }
            detail_cli::print_pairs(g, result.closure, out);
            err << "OUT=" << result.closure.size() << '\n';
            if (t_counters) {
                err << "productive_iterations=" << result.productive_iterations << '\n';
                err << "rule_work=" << result.rule_work << '\n';
            }
            return 0;
        }
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace rpq::cli
