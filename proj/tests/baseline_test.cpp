#include <catch2/catch_amalgamated.hpp>

#include "rpq/baseline.hpp"
#include "rpq/generators.hpp"
#include "rpq/oracle.hpp"
#include "rpq/ospg.hpp"
#include "test_helpers.hpp"

using namespace rpq;

namespace {

Nfa bstar_c_nfa() {
    return load_automaton(std::string{
        "state q0\nstate q1\nstart q0\nfinal q1\ntrans q0 b q0\ntrans q0 c q1\n"});
}

}  // namespace

TEST_CASE("forward search on the path instance does quadratic work for nothing") {
    const std::size_t n = 100;
    const PgReport report = eval_pg(gen_path(n), bstar_c_nfa());
    CHECK(report.pairs.empty());
    CHECK(report.bfs_edge_visits == n * (n - 1) / 2);
}

TEST_CASE("single edge single symbol query") {
    LabeledGraph g;
    g.add_edge("1", "d", "2");
    const PairSet out = eval_pg(g, *parse("d"));
    CHECK(out.size() == 1);
    CHECK(out.contains(*g.find_vertex("1"), *g.find_vertex("2")));
}

TEST_CASE("bidirectional search stops immediately on the path instance") {
    const std::size_t n = 100;
    const BidiReport report = eval_pg_bidirectional(gen_path(n), bstar_c_nfa());
    CHECK(report.pairs.empty());
    // no accepting product vertex is ever materialized, so neither side runs
    CHECK(report.forward_visits + report.backward_visits == 0);
}

TEST_CASE("bidirectional search still pays quadratically on two cycles") {
    const std::size_t n = 64;
    const BidiReport report = eval_pg_bidirectional(gen_two_cycles(n), compile(*parse("ab*c")));
    CHECK(report.pairs.empty());
    CHECK(report.forward_visits + report.backward_visits >= n * n);
}

TEST_CASE("both baselines agree with the reference on random instances") {
    const std::vector<std::string> symbols{"a", "b", "c"};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        SplitMix64 rng(seed * 71 + 23);
        const auto v = 2 + rng.below(7);
        const LabeledGraph g =
            gen_random(v, std::min<std::uint64_t>(rng.below(21), v * v * 3), symbols, rng.next());
        const AstPtr ast = rpqtest::random_ast(rng, symbols, 4);
        const Nfa m = compile(*ast);
        const PairSet reference = eval_matrix(g, *ast);
        INFO("query " << to_string(*ast));
        CHECK(eval_pg(g, m).pairs == reference);
        CHECK(eval_pg_bidirectional(g, m).pairs == reference);
    }
}

TEST_CASE("bfs work never exceeds the product-size envelope") {
    const std::vector<std::string> symbols{"a", "b"};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 rng(seed * 83 + 31);
        const auto v = 2 + rng.below(7);
        const LabeledGraph g =
            gen_random(v, std::min<std::uint64_t>(rng.below(19), v * v * 2), symbols, rng.next());
        const Nfa m = compile(*rpqtest::random_ast(rng, symbols, 3));
        const PgReport report = eval_pg(g, m);
        CHECK(report.bfs_edge_visits <=
              static_cast<std::uint64_t>(report.product_vertices) * report.product_edges);
    }
}

TEST_CASE("epsilon queries produce reflexive pairs over query-label vertices") {
    LabeledGraph g;
    g.add_edge("1", "d", "2");
    g.add_edge("3", "e", "4");
    const AstPtr ast = parse("d*");
    const Nfa m = compile(*ast);
    PairSet expected;
    expected.insert(*g.find_vertex("1"), *g.find_vertex("1"));
    expected.insert(*g.find_vertex("2"), *g.find_vertex("2"));
    expected.insert(*g.find_vertex("1"), *g.find_vertex("2"));
    CHECK(eval_pg(g, m).pairs == expected);
    CHECK(eval_pg_bidirectional(g, m).pairs == expected);
    CHECK(eval_rpq(g, m) == expected);
    CHECK(eval_matrix(g, *ast) == expected);
}
