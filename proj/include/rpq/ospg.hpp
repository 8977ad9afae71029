#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "rpq/automaton.hpp"
#include "rpq/graph.hpp"
#include "rpq/reduction.hpp"
#include "rpq/regex.hpp"

namespace rpq {

/// Exact integer floor(sqrt(n)).
inline std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Instrumentation tallies for one evaluation run.
struct WorkCounters {
    std::uint64_t step1_edge_checks = 0;
    std::uint64_t light_join_lookups = 0;
    std::uint64_t heavy_sources = 0;
    std::uint64_t heavy_bfs_edge_visits = 0;

    std::uint64_t total() const {
        return step1_edge_checks + light_join_lookups + heavy_sources + heavy_bfs_edge_visits;
    }
};

/// The bounded reachability relation: per source vertex, up to `cap` targets
/// reachable along b-star-c paths, in discovery order. A list that stayed at
/// or below floor(sqrt(|E|)) is provably complete; a list that hit the cap
/// marks its source as heavy.
class ReachMap {
public:
    ReachMap(std::size_t vertex_count, std::uint32_t cap)
        : cap_(cap), lists_(vertex_count) {}

    std::uint32_t cap() const { return cap_; }
    std::size_t vertex_count() const { return lists_.size(); }
    const std::vector<VertexId>& list(VertexId x) const { return lists_[x]; }
    std::uint32_t degree(VertexId x) const { return static_cast<std::uint32_t>(lists_[x].size()); }

    bool contains(VertexId x, VertexId y) const {
        return members_.contains(detail::pack_pair(x, y));
    }

    /// Inserts y into list(x) unless already present or the list is full.
    bool try_insert(VertexId x, VertexId y) {
        if (lists_[x].size() >= cap_) return false;
        if (!members_.insert(detail::pack_pair(x, y)).second) return false;
        lists_[x].push_back(y);
        return true;
    }

private:
    std::uint32_t cap_;
    std::vector<std::vector<VertexId>> lists_;
    std::unordered_set<std::uint64_t> members_;
};

/// Partition of the bounded relation into complete light pairs and the set
/// of capped (heavy) sources. Vertices with empty lists appear in neither.
struct LightHeavySplit {
    std::uint32_t threshold = 0;                        // floor(sqrt(|E|))
    std::vector<std::pair<VertexId, VertexId>> r_light; // complete pairs from light sources
    std::vector<VertexId> r_heavy;                      // capped sources
    std::vector<bool> is_heavy;                         // indexed by vertex id
};

inline std::uint32_t reach_cap_for(std::size_t edge_count) {
    return static_cast<std::uint32_t>(isqrt(edge_count)) + 1;
}

/// Step 1: seed each list with c-successors, then propagate targets backwards
/// along b-edges with a FIFO worklist of (vertex, new target) events until no
/// list grows. Each b-edge is checked against each target of its head's list
/// exactly once, which `step1_edge_checks` tallies.
inline ReachMap compute_bounded_reach(const AbcGraph& g, WorkCounters& counters) {
    const auto vertex_count = g.inner.vertex_count();
    ReachMap reach(vertex_count, reach_cap_for(g.inner.edge_count()));
    std::deque<std::pair<VertexId, VertexId>> worklist;

    for (VertexId x = 0; x < vertex_count; ++x) {
        for (VertexId y : g.inner.forward(g.c, x)) {
            if (reach.try_insert(x, y)) worklist.push_back({x, y});
        }
    }
    while (!worklist.empty()) {
        const auto [x, y] = worklist.front();
        worklist.pop_front();
        for (VertexId w : g.inner.reverse(g.b, x)) {
            ++counters.step1_edge_checks;
            if (reach.try_insert(w, y)) worklist.push_back({w, y});
        }
    }
    return reach;
}

inline ReachMap compute_bounded_reach(const AbcGraph& g) {
    WorkCounters scratch;
    return compute_bounded_reach(g, scratch);
}

/// Step 2. Requires the map to have been built with the cap matching
/// `edge_count`, i.e. floor(sqrt(edge_count)) + 1.
inline LightHeavySplit split_light_heavy(const ReachMap& reach, std::size_t edge_count) {
    if (reach.cap() != reach_cap_for(edge_count)) {
        throw std::invalid_argument("reach map cap " + std::to_string(reach.cap()) +
                                    " does not match floor(sqrt(" +
                                    std::to_string(edge_count) + "))+1");
    }
    LightHeavySplit split;
    split.threshold = reach.cap() - 1;
    split.is_heavy.assign(reach.vertex_count(), false);
    for (VertexId x = 0; x < reach.vertex_count(); ++x) {
        const auto deg = reach.degree(x);
        if (deg == reach.cap()) {
            split.r_heavy.push_back(x);
            split.is_heavy[x] = true;
        } else {
            for (VertexId y : reach.list(x)) split.r_light.push_back({x, y});
        }
    }
    return split;
}

/// Output pairs whose witness path runs through light vertices only: join of
/// a-edges with the complete light relation.
inline PairSet eval_light(const AbcGraph& g, const ReachMap& reach, const LightHeavySplit& split,
                          WorkCounters& counters) {
    PairSet out;
    const auto vertex_count = g.inner.vertex_count();
    for (VertexId x = 0; x < vertex_count; ++x) {
        for (VertexId z : g.inner.forward(g.a, x)) {
            ++counters.light_join_lookups;
            if (split.is_heavy[z]) continue;
            for (VertexId y : reach.list(z)) {
                ++counters.light_join_lookups;
                out.insert(x, y);
            }
        }
    }
    return out;
}

/// Output pairs whose witness path enters a heavy vertex: one forward BFS
/// over b-edges per source that has a heavy a-successor, emitting targets of
/// c-edges leaving reached vertices. Visited marks are per-source epoch
/// stamps; each edge is traversed at most once per source.
inline PairSet eval_heavy(const AbcGraph& g, const LightHeavySplit& split,
                          WorkCounters& counters) {
    PairSet out;
    const auto vertex_count = g.inner.vertex_count();
    std::vector<std::uint32_t> stamp(vertex_count, 0);
    std::uint32_t epoch = 0;
    std::vector<VertexId> queue;

    for (VertexId x = 0; x < vertex_count; ++x) {
        queue.clear();
        ++epoch;
        for (VertexId z : g.inner.forward(g.a, x)) {
            if (split.is_heavy[z] && stamp[z] != epoch) {
                stamp[z] = epoch;
                queue.push_back(z);
            }
        }
        if (queue.empty()) continue;
        ++counters.heavy_sources;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId z = queue[head];
            for (VertexId y : g.inner.forward(g.b, z)) {
                ++counters.heavy_bfs_edge_visits;
                if (stamp[y] != epoch) {
                    stamp[y] = epoch;
                    queue.push_back(y);
                }
            }
        }
        for (const VertexId z : queue) {
            for (VertexId u : g.inner.forward(g.c, z)) {
                ++counters.heavy_bfs_edge_visits;
                out.insert(x, u);
            }
        }
    }
    return out;
}

/// Detailed result of one run of the core evaluator over a reduced instance.
struct AbcRun {
    PairSet pairs;
    WorkCounters counters;
    ReachMap reach;
    LightHeavySplit split;
};

/// Evaluates the query a b* c over a reduced instance: bounded reachability,
/// light/heavy split, then the union of the light join and the per-source
/// heavy traversals.
inline AbcRun eval_abc_detailed(const AbcGraph& g) {
    AbcRun run{PairSet{}, WorkCounters{}, ReachMap(0, 1), LightHeavySplit{}};
    run.reach = compute_bounded_reach(g, run.counters);
    run.split = split_light_heavy(run.reach, g.inner.edge_count());
    run.pairs = eval_light(g, run.reach, run.split, run.counters);
    PairSet heavy = eval_heavy(g, run.split, run.counters);
    for (const auto& [x, y] : heavy.sorted()) run.pairs.insert(x, y);
    return run;
}

inline PairSet eval_abc(const AbcGraph& g) { return eval_abc_detailed(g).pairs; }

/// Full pipeline report for one query evaluation.
struct OspgReport {
    PairSet pairs;            // over the input graph's vertex ids
    WorkCounters counters;
    std::size_t abc_vertices = 0;
    std::size_t abc_edges = 0;
    std::size_t abc_b_edges = 0;
    std::size_t out_abc = 0;  // answer size before projection
};

namespace detail {

inline std::vector<std::string> nfa_symbols(const Nfa& m) {
    std::vector<std::string> symbols;
    for (const NfaTransition& t : m.transitions()) symbols.push_back(m.symbols()[t.label]);
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    return symbols;
}

/// Maps a pair set over `restricted` vertex ids back to `g` vertex ids.
inline PairSet lift_pairs(const PairSet& pairs, const LabeledGraph& restricted,
                          const LabeledGraph& g) {
    PairSet out;
    for (const auto& [x, y] : pairs.sorted()) {
        out.insert(*g.find_vertex(restricted.vertex_name(x)),
                   *g.find_vertex(restricted.vertex_name(y)));
    }
    return out;
}

}  // namespace detail

/// Evaluates an arbitrary query: drop edges with labels outside the query,
/// reduce to a three-label instance, run the core evaluator, project product
/// pairs back to graph vertices.
inline OspgReport eval_rpq_detailed(const LabeledGraph& g, const Nfa& m) {
    const LabeledGraph restricted = restrict_alphabet(g, detail::nfa_symbols(m));
    const AbcGraph abc = build_abc_graph(restricted, m);
    AbcRun run = eval_abc_detailed(abc);

    OspgReport report;
    report.counters = run.counters;
    report.abc_vertices = abc.inner.vertex_count();
    report.abc_edges = abc.inner.edge_count();
    for (const Edge& e : abc.inner.edges()) {
        if (e.label == abc.b) ++report.abc_b_edges;
    }
    report.out_abc = run.pairs.size();
    report.pairs = detail::lift_pairs(project_output(run.pairs, abc), restricted, g);
    return report;
}

inline PairSet eval_rpq(const LabeledGraph& g, const Nfa& m) {
    return eval_rpq_detailed(g, m).pairs;
}

inline PairSet eval_rpq(const LabeledGraph& g, const RpqAst& q) {
    return eval_rpq(g, compile(q));
}

}  // namespace rpq
