// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria use deterministic work counters and log-log slope fits,
// never wall time.

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rpq/baseline.hpp"
#include "rpq/bench.hpp"
#include "rpq/generators.hpp"
#include "rpq/oracle.hpp"
#include "rpq/ospg.hpp"
#include "rpq/tclosure.hpp"

using namespace rpq;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& text) { notes.push_back(text); }

bool expect(bool ok, const std::string& what) {
    if (!ok) note("  FAILED: " + what);
    return ok;
}

void report(int number, const std::string& label, bool ok) {
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " - " << label
              << '\n';
    for (const std::string& n : notes) std::cout << n << '\n';
    notes.clear();
    if (!ok) ++failures;
}

AstPtr random_ast(SplitMix64& rng, const std::vector<std::string>& symbols, int depth) {
    const auto pick = depth == 0 ? std::uint64_t{0} : rng.below(10);
    if (pick < 4) return RpqAst::make_symbol(symbols[rng.below(symbols.size())]);
    if (pick < 8) {
        std::vector<AstPtr> kids;
        const auto arity = 2 + rng.below(2);
        for (std::uint64_t i = 0; i < arity; ++i) {
            kids.push_back(random_ast(rng, symbols, depth - 1));
        }
        return RpqAst::make_nary(pick < 6 ? AstKind::Concat : AstKind::Union, std::move(kids));
    }
    return RpqAst::make_star(random_ast(rng, symbols, depth - 1));
}

struct SuiteInstance {
    LabeledGraph graph;
    AstPtr query;
};

/// The randomized suite: graphs with at most 8 vertices and 20 edges over a
/// 3-symbol alphabet, queries of star depth at most 4.
SuiteInstance suite_instance(std::uint64_t index) {
    const std::vector<std::string> symbols{"a", "b", "c"};
    SplitMix64 rng(index * 0x9e3779b9ull + 12345);
    const auto v = 2 + rng.below(7);
    const auto e = std::min<std::uint64_t>(rng.below(21), v * v * 3);
    SuiteInstance inst{gen_random(v, e, symbols, rng.next()),
                       random_ast(rng, symbols, 4)};
    return inst;
}

constexpr std::size_t kSuiteSize = 1000;

double slope_of(const std::vector<std::pair<double, double>>& pts) {
    return fit_exponent(pts);
}

// ---------------------------------------------------------------------------

bool criterion1_engine_equivalence() {
    bool ok = true;
    for (std::uint64_t i = 0; i < kSuiteSize && ok; ++i) {
        const SuiteInstance inst = suite_instance(i);
        const Nfa m = compile(*inst.query);
        const PairSet reference = eval_matrix(inst.graph, *inst.query);
        ok &= expect(eval_rpq(inst.graph, m) == reference,
                     "ospg disagrees with the reference on suite instance " + std::to_string(i));
        ok &= expect(eval_pg(inst.graph, m).pairs == reference,
                     "pg disagrees with the reference on suite instance " + std::to_string(i));
        ok &= expect(eval_pg_bidirectional(inst.graph, m).pairs == reference,
                     "pg-bidi disagrees with the reference on suite instance " +
                         std::to_string(i));
    }
    for (const std::size_t n : {10, 50}) {
        {
            const LabeledGraph g = gen_path(n);
            const AstPtr q = parse("b*c");
            const Nfa m = compile(*q);
            const PairSet reference = eval_matrix(g, *q);
            ok &= expect(eval_rpq(g, m) == reference && eval_pg(g, m).pairs == reference &&
                             eval_pg_bidirectional(g, m).pairs == reference,
                         "engines disagree on the path family, n=" + std::to_string(n));
        }
        {
            const LabeledGraph g = gen_two_cycles(n);
            const AstPtr q = parse("ab*c");
            const Nfa m = compile(*q);
            const PairSet reference = eval_matrix(g, *q);
            ok &= expect(eval_rpq(g, m) == reference && eval_pg(g, m).pairs == reference &&
                             eval_pg_bidirectional(g, m).pairs == reference,
                         "engines disagree on the two-cycles family, n=" + std::to_string(n));
        }
    }
    return ok;
}

bool criterion2_path_family() {
    bool ok = true;
    const AstPtr q = parse("b*c");
    const Nfa m = compile(*q);
    std::vector<std::pair<double, double>> pg_points, ospg_points;
    for (const std::size_t n : {1000, 2000, 4000, 8000}) {
        const LabeledGraph g = gen_path(n);
        const PgReport pg = eval_pg(g, m);
        const OspgReport os = eval_rpq_detailed(g, m);
        ok &= expect(pg.pairs.empty() && os.pairs.empty(),
                     "path family output must be empty at n=" + std::to_string(n));
        ok &= expect(os.counters.step1_edge_checks == 0,
                     "no b-edge check should ever fire on the path family");
        pg_points.push_back({static_cast<double>(n),
                             static_cast<double>(pg.bfs_edge_visits)});
        ospg_points.push_back({static_cast<double>(n),
                               static_cast<double>(os.counters.total())});
    }
    const double pg_slope = slope_of(pg_points);
    const double ospg_slope = slope_of(ospg_points);
    note("  pg bfs_edge_visits slope:  " + std::to_string(pg_slope) + " (want 2.0 +/- 0.1)");
    note("  ospg total work slope:     " + std::to_string(ospg_slope) + " (want <= 1.1)");
    ok &= expect(std::abs(pg_slope - 2.0) <= 0.1, "pg slope out of tolerance");
    ok &= expect(ospg_slope <= 1.1, "ospg slope above the input-handling envelope");
    return ok;
}

bool criterion3_two_cycles_family() {
    bool ok = true;
    const AstPtr q = parse("ab*c");
    const Nfa m = compile(*q);
    std::vector<std::pair<double, double>> bidi_points, ospg_points;
    for (const std::size_t n : {256, 1024, 4096}) {
        const LabeledGraph g = gen_two_cycles(n);
        const BidiReport bidi = eval_pg_bidirectional(g, m);
        const OspgReport os = eval_rpq_detailed(g, m);
        ok &= expect(bidi.pairs.empty() && os.pairs.empty(),
                     "two-cycles output must be empty at n=" + std::to_string(n));
        bidi_points.push_back(
            {static_cast<double>(n),
             static_cast<double>(bidi.forward_visits + bidi.backward_visits)});
        ospg_points.push_back({static_cast<double>(n),
                               static_cast<double>(os.counters.total())});
    }
    const double bidi_slope = slope_of(bidi_points);
    const double ospg_slope = slope_of(ospg_points);
    note("  pg-bidi combined visits slope: " + std::to_string(bidi_slope) +
         " (want 2.0 +/- 0.1)");
    note("  ospg total work slope:         " + std::to_string(ospg_slope) +
         " (want 1.5 +/- 0.15)");
    ok &= expect(std::abs(bidi_slope - 2.0) <= 0.1, "pg-bidi slope out of tolerance");
    ok &= expect(std::abs(ospg_slope - 1.5) <= 0.15, "ospg slope out of tolerance");
    return ok;
}

/// Shared helper for criteria 4-6: the reduced instance and its run.
struct DetailedRun {
    AbcGraph abc;
    AbcRun run;
    std::uint64_t b_edges = 0;
};

DetailedRun detailed_run(const LabeledGraph& g, const Nfa& m) {
    DetailedRun d{build_abc_graph(restrict_alphabet(g, detail::nfa_symbols(m)), m),
                  AbcRun{PairSet{}, WorkCounters{}, ReachMap(0, 1), LightHeavySplit{}}};
    d.run = eval_abc_detailed(d.abc);
    for (const Edge& e : d.abc.inner.edges()) {
        if (e.label == d.abc.b) ++d.b_edges;
    }
    return d;
}

bool criterion4_step1_bound() {
    bool ok = true;
    for (std::uint64_t i = 0; i < kSuiteSize && ok; ++i) {
        const SuiteInstance inst = suite_instance(i);
        const DetailedRun d = detailed_run(inst.graph, compile(*inst.query));
        ok &= expect(d.run.counters.step1_edge_checks <= d.b_edges * d.run.reach.cap(),
                     "step1 bound violated on suite instance " + std::to_string(i));
    }
    for (const std::size_t n : {10, 50, 200}) {
        {
            const DetailedRun d = detailed_run(gen_path(n), compile(*parse("b*c")));
            ok &= expect(d.run.counters.step1_edge_checks <= d.b_edges * d.run.reach.cap(),
                         "step1 bound violated on the path family");
        }
        {
            const DetailedRun d = detailed_run(gen_two_cycles(n), compile(*parse("ab*c")));
            ok &= expect(d.run.counters.step1_edge_checks <= d.b_edges * d.run.reach.cap(),
                         "step1 bound violated on the two-cycles family");
        }
    }
    return ok;
}

bool criterion5_heavy_source_bound() {
    bool ok = true;
    for (std::uint64_t i = 0; i < kSuiteSize && ok; ++i) {
        const SuiteInstance inst = suite_instance(i);
        const DetailedRun d = detailed_run(inst.graph, compile(*inst.query));
        const std::uint64_t threshold = d.run.split.threshold;
        const std::uint64_t vertices = d.abc.inner.vertex_count();
        const std::uint64_t out_abc = d.run.pairs.size();
        const std::uint64_t bound =
            threshold == 0 ? vertices
                           : std::min<std::uint64_t>(out_abc / threshold + 1, vertices);
        ok &= expect(d.run.counters.heavy_sources <= bound,
                     "heavy-source bound violated on suite instance " + std::to_string(i));
    }
    return ok;
}

bool criterion6_light_complete_heavy_sound() {
    bool ok = true;
    const AstPtr bstar_c = parse("b*c");
    for (std::uint64_t i = 0; i < kSuiteSize && ok; ++i) {
        const SuiteInstance inst = suite_instance(i);
        const DetailedRun d = detailed_run(inst.graph, compile(*inst.query));
        const PairSet exact = eval_matrix(d.abc.inner, *bstar_c);
        std::vector<std::set<VertexId>> exact_targets(d.abc.inner.vertex_count());
        for (const auto& [x, y] : exact.sorted()) exact_targets[x].insert(y);
        for (VertexId x = 0; x < d.abc.inner.vertex_count() && ok; ++x) {
            if (d.run.split.is_heavy[x]) {
                ok &= expect(exact_targets[x].size() > d.run.split.threshold,
                             "a heavy vertex has true degree within the threshold, instance " +
                                 std::to_string(i));
            } else {
                const std::set<VertexId> stored(d.run.reach.list(x).begin(),
                                                d.run.reach.list(x).end());
                ok &= expect(stored == exact_targets[x],
                             "a light vertex has an incomplete list, instance " +
                                 std::to_string(i));
            }
        }
    }
    return ok;
}

bool criterion7_transitive_closure() {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 500 && ok; ++seed) {
        SplitMix64 rng(seed * 0x51ab5ull + 99);
        const std::size_t n = 2 + rng.below(63);
        const std::size_t e = rng.below(2 * n + 1);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t j = 0; j < e; ++j) {
            edges.push_back({static_cast<VertexId>(rng.below(n)),
                             static_cast<VertexId>(rng.below(n))});
        }
        const Digraph g = Digraph::from_edges(n, std::move(edges));
        const PairSet reference = closure_matrix(g.vertex_count, g.edges);
        const TcResult lin = tc_linear(g);
        const TcResult bin = tc_binary(g);
        ok &= expect(lin.closure == reference && bin.closure == reference,
                     "closure mismatch at seed " + std::to_string(seed));

        const std::uint64_t edge_count = g.edges.size();
        const std::uint64_t out = reference.size();
        std::uint64_t ceil_sqrt = isqrt(edge_count);
        if (ceil_sqrt * ceil_sqrt < edge_count) ++ceil_sqrt;
        ok &= expect(lin.rule_work <=
                         std::min(out * ceil_sqrt,
                                  static_cast<std::uint64_t>(g.vertex_count) * edge_count) +
                             edge_count,
                     "linear work bound violated at seed " + std::to_string(seed));
        ok &= expect(static_cast<double>(bin.rule_work) <=
                         std::pow(static_cast<double>(out), 1.5) +
                             static_cast<double>(edge_count),
                     "binary work bound violated at seed " + std::to_string(seed));
    }
    for (std::size_t k = 3; k <= 7 && ok; ++k) {
        const std::size_t edge_count = 1ull << k;
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (VertexId i = 0; i < edge_count; ++i) edges.push_back({i, i + 1});
        const Digraph g = Digraph::from_edges(edge_count + 1, std::move(edges));
        const TcResult lin = tc_linear(g);
        const TcResult bin = tc_binary(g);
        ok &= expect(lin.productive_iterations == edge_count,
                     "linear iterations on the 2^" + std::to_string(k) + " path");
        ok &= expect(bin.productive_iterations <= k + 1,
                     "binary iterations on the 2^" + std::to_string(k) + " path");
    }
    return ok;
}

bool criterion8_reduction_fidelity() {
    const std::string dir = RPQ_TEST_DATA_DIR;
    std::ifstream gin(dir + "/reduction_graph.tsv");
    std::ifstream din(dir + "/fig1_dfa.aut");
    std::ifstream ein(dir + "/reduction_expected_abc.tsv");
    if (!gin || !din || !ein) {
        note("  FAILED: fixture files missing under " + dir);
        return false;
    }
    const LabeledGraph g = load_edge_list(gin);
    const Nfa dfa = load_automaton(din);
    const LabeledGraph expected = load_edge_list(ein);
    const AbcGraph abc = build_abc_graph(g, dfa);

    auto edge_set = [](const LabeledGraph& gr) {
        std::set<std::tuple<std::string, std::string, std::string>> out;
        for (const Edge& e : gr.edges()) {
            out.insert({gr.vertex_name(e.src), gr.label_name(e.label), gr.vertex_name(e.dst)});
        }
        return out;
    };
    const auto got = edge_set(abc.inner);
    const auto want = edge_set(expected);
    if (got != want) {
        for (const auto& t : got) {
            if (!want.contains(t)) {
                note("  unexpected edge: " + std::get<0>(t) + " " + std::get<1>(t) + " " +
                     std::get<2>(t));
            }
        }
        for (const auto& t : want) {
            if (!got.contains(t)) {
                note("  missing edge: " + std::get<0>(t) + " " + std::get<1>(t) + " " +
                     std::get<2>(t));
            }
        }
        return false;
    }
    return true;
}

}  // namespace

int main() {
    report(1, "engine equivalence on the randomized suite and both instance families",
           criterion1_engine_equivalence());
    report(2, "path family: empty output, quadratic pg, linear ospg", criterion2_path_family());
    report(3, "two-cycles family: empty output, quadratic pg-bidi, n^1.5 ospg",
           criterion3_two_cycles_family());
    report(4, "step-1 checks within |b-edges| * cap on every instance",
           criterion4_step1_bound());
    report(5, "heavy sources within min(out/sqrt, vertices) on every instance",
           criterion5_heavy_source_bound());
    report(6, "light lists complete, heavy vertices truly heavy",
           criterion6_light_complete_heavy_sound());
    report(7, "transitive closure: equal formulations, work bounds, iteration counts",
           criterion7_transitive_closure());
    report(8, "reduced graph of the four-label fixture matches the expected file",
           criterion8_reduction_fidelity());

    if (failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failed\n";
    return 1;
}
