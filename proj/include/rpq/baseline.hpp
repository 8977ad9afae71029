#pragma once

#include <cstdint>
#include <vector>

#include "rpq/automaton.hpp"
#include "rpq/graph.hpp"
#include "rpq/ospg.hpp"
#include "rpq/reduction.hpp"

namespace rpq {

struct PgReport {
    PairSet pairs;
    std::uint64_t bfs_edge_visits = 0;
    std::size_t product_vertices = 0;
    std::size_t product_edges = 0;
};

struct BidiReport {
    PairSet pairs;
    std::uint64_t forward_visits = 0;
    std::uint64_t backward_visits = 0;
};

namespace detail {

struct ProductAdjacency {
    std::vector<std::vector<std::uint32_t>> forward;
    std::vector<std::vector<std::uint32_t>> backward;

    explicit ProductAdjacency(const ProductGraph& prod)
        : forward(prod.verts.size()), backward(prod.verts.size()) {
        for (const auto& [a, b] : prod.edges) {
            forward[a].push_back(b);
            backward[b].push_back(a);
        }
    }
};

/// Reflexive pairs for every registered vertex, mapped to `g` ids. The empty
/// word matches at each vertex of the restricted graph.
inline void add_epsilon_pairs(const LabeledGraph& restricted, const LabeledGraph& g,
                              PairSet& out) {
    for (VertexId v = 0; v < restricted.vertex_count(); ++v) {
        const VertexId orig = *g.find_vertex(restricted.vertex_name(v));
        out.insert(orig, orig);
    }
}

}  // namespace detail

/// The classical product-graph algorithm: a breadth-first search from every
/// start-state product vertex, emitting reached accepting vertices. Runs on
/// the query-restricted graph; reflexive matches of the empty word are added
/// directly since their product vertices carry no edges.
inline PgReport eval_pg(const LabeledGraph& g, const Nfa& m) {
    const LabeledGraph restricted = restrict_alphabet(g, detail::nfa_symbols(m));
    const ProductGraph prod = product_graph(restricted, m);
    detail::ProductAdjacency adj(prod);

    PgReport report;
    report.product_vertices = prod.verts.size();
    report.product_edges = prod.edges.size();

    PairSet local;
    std::vector<std::uint32_t> stamp(prod.verts.size(), 0);
    std::uint32_t epoch = 0;
    std::vector<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < prod.verts.size(); ++s) {
        if (!m.is_start(prod.verts[s].second)) continue;
        ++epoch;
        queue.clear();
        queue.push_back(s);
        stamp[s] = epoch;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t w = queue[head];
            if (m.is_final(prod.verts[w].second)) {
                local.insert(prod.verts[s].first, prod.verts[w].first);
            }
            for (std::uint32_t next : adj.forward[w]) {
                ++report.bfs_edge_visits;
                if (stamp[next] != epoch) {
                    stamp[next] = epoch;
                    queue.push_back(next);
                }
            }
        }
    }
    if (m.accepts_epsilon()) detail::add_epsilon_pairs(restricted, restricted, local);
    report.pairs = detail::lift_pairs(local, restricted, g);
    return report;
}

inline PairSet eval_pg(const LabeledGraph& g, const RpqAst& q) {
    return eval_pg(g, compile(q)).pairs;
}

/// Product-graph search from both ends: forward searches from start-state
/// vertices, backward searches from accepting vertices, joined on meeting
/// vertices. When either end has no materialized vertices at all the other
/// side is skipped, so instances that are empty from one end cost no search
/// work.
inline BidiReport eval_pg_bidirectional(const LabeledGraph& g, const Nfa& m) {
    const LabeledGraph restricted = restrict_alphabet(g, detail::nfa_symbols(m));
    const ProductGraph prod = product_graph(restricted, m);
    detail::ProductAdjacency adj(prod);

    BidiReport report;
    PairSet local;

    std::vector<std::uint32_t> sources, sinks;
    for (std::uint32_t i = 0; i < prod.verts.size(); ++i) {
        if (m.is_start(prod.verts[i].second)) sources.push_back(i);
        if (m.is_final(prod.verts[i].second)) sinks.push_back(i);
    }

    if (!sources.empty() && !sinks.empty()) {
        // meet[w] lists the sinks whose backward search reached w
        std::vector<std::vector<std::uint32_t>> meet(prod.verts.size());
        std::vector<std::uint32_t> stamp(prod.verts.size(), 0);
        std::uint32_t epoch = 0;
        std::vector<std::uint32_t> queue;

        for (std::uint32_t f : sinks) {
            ++epoch;
            queue.clear();
            queue.push_back(f);
            stamp[f] = epoch;
            meet[f].push_back(f);
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const std::uint32_t w = queue[head];
                for (std::uint32_t prev : adj.backward[w]) {
                    ++report.backward_visits;
                    if (stamp[prev] != epoch) {
                        stamp[prev] = epoch;
                        queue.push_back(prev);
                        meet[prev].push_back(f);
                    }
                }
            }
        }

        stamp.assign(prod.verts.size(), 0);
        epoch = 0;
        for (std::uint32_t s : sources) {
            ++epoch;
            queue.clear();
            queue.push_back(s);
            stamp[s] = epoch;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const std::uint32_t w = queue[head];
                for (std::uint32_t f : meet[w]) {
                    local.insert(prod.verts[s].first, prod.verts[f].first);
                }
                for (std::uint32_t next : adj.forward[w]) {
                    ++report.forward_visits;
                    if (stamp[next] != epoch) {
                        stamp[next] = epoch;
                        queue.push_back(next);
                    }
                }
            }
        }
    }

    if (m.accepts_epsilon()) detail::add_epsilon_pairs(restricted, restricted, local);
    report.pairs = detail::lift_pairs(local, restricted, g);
    return report;
}

inline PairSet eval_pg_bidirectional(const LabeledGraph& g, const RpqAst& q) {
    return eval_pg_bidirectional(g, compile(q)).pairs;
}

}  // namespace rpq
