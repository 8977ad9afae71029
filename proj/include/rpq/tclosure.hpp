#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "rpq/graph.hpp"

namespace rpq {

/// Plain directed graph for the closure algorithms; vertex ids are dense.
struct Digraph {
    std::size_t vertex_count = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::vector<VertexId>> forward;

    static Digraph from_edges(std::size_t vertex_count,
                              std::vector<std::pair<VertexId, VertexId>> edge_list) {
        Digraph g;
        g.vertex_count = vertex_count;
        g.forward.resize(vertex_count);
        std::unordered_set<std::uint64_t> seen;
        for (const auto& [u, v] : edge_list) {
            if (seen.insert(detail::pack_pair(u, v)).second) {
                g.edges.push_back({u, v});
                g.forward[u].push_back(v);
            }
        }
        return g;
    }

    /// All labeled edges collapsed to vertex pairs.
    static Digraph from_labeled(const LabeledGraph& g) {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        pairs.reserve(g.edge_count());
        for (const Edge& e : g.edges()) pairs.push_back({e.src, e.dst});
        return from_edges(g.vertex_count(), std::move(pairs));
    }
};

/// Result of one semi-naive closure computation. `productive_iterations`
/// counts the rounds that contributed new pairs, including the seeding round
/// that installs the edges; it equals the largest shortest-path distance
/// realized by an output pair under the one-step rule.
struct TcResult {
    PairSet closure;
    std::uint64_t productive_iterations = 0;
    std::uint64_t rule_work = 0;  // (delta tuple, adjacency successor) probes
    std::vector<std::size_t> delta_sizes;
};

/// Semi-naive evaluation of the one-step recursion: new pairs come from a
/// delta tuple (x, z) extended by an input edge (z, y), filtered by
/// membership in the accumulated relation. The per-iteration deltas
/// partition the closure.
inline TcResult tc_linear(const Digraph& g) {
    TcResult res;
    std::vector<std::pair<VertexId, VertexId>> delta;
    for (const auto& [u, v] : g.edges) {
        if (res.closure.insert(u, v)) delta.push_back({u, v});
    }
    if (!delta.empty()) {
        ++res.productive_iterations;
        res.delta_sizes.push_back(delta.size());
    }
    while (!delta.empty()) {
        std::vector<std::pair<VertexId, VertexId>> next;
        for (const auto& [x, z] : delta) {
            for (VertexId y : g.forward[z]) {
                ++res.rule_work;
                if (res.closure.insert(x, y)) next.push_back({x, y});
            }
        }
        delta = std::move(next);
        if (!delta.empty()) {
            ++res.productive_iterations;
            res.delta_sizes.push_back(delta.size());
        }
    }
    return res;
}

/// Semi-naive evaluation of the two-recursive-atom formulation: each round
/// extends delta tuples by the whole accumulated relation on either side.
/// Converges in logarithmically many rounds in the graph diameter.
inline TcResult tc_binary(const Digraph& g) {
    TcResult res;
    const std::size_t n = g.vertex_count;
    std::vector<std::vector<VertexId>> t_forward(n), t_backward(n);
    std::vector<std::pair<VertexId, VertexId>> delta;

    for (const auto& [u, v] : g.edges) {
        if (res.closure.insert(u, v)) delta.push_back({u, v});
    }
    for (const auto& [u, v] : delta) {
        t_forward[u].push_back(v);
        t_backward[v].push_back(u);
    }
    if (!delta.empty()) {
        ++res.productive_iterations;
        res.delta_sizes.push_back(delta.size());
    }

    while (!delta.empty()) {
        std::vector<std::pair<VertexId, VertexId>> next;
        PairSet next_seen;
        // delta(x, z) joined with accumulated (z, y)
        for (const auto& [x, z] : delta) {
            for (VertexId y : t_forward[z]) {
                ++res.rule_work;
                if (!res.closure.contains(x, y) && next_seen.insert(x, y)) next.push_back({x, y});
            }
        }
        // accumulated (x, z) joined with delta(z, y)
        for (const auto& [z, y] : delta) {
            for (VertexId x : t_backward[z]) {
                ++res.rule_work;
                if (!res.closure.contains(x, y) && next_seen.insert(x, y)) next.push_back({x, y});
            }
        }
        for (const auto& [x, y] : next) {
            res.closure.insert(x, y);
            t_forward[x].push_back(y);
            t_backward[y].push_back(x);
        }
        delta = std::move(next);
        if (!delta.empty()) {
            ++res.productive_iterations;
            res.delta_sizes.push_back(delta.size());
        }
    }
    return res;
}

/// Evaluates the reflexive-transitive reachability query over the edges of
/// `g` labeled `symbol`: every vertex incident to such an edge matches
/// itself via the empty word, plus the closure of those edges.
inline PairSet eval_a_star(const LabeledGraph& g, const std::string& symbol = "a") {
    PairSet out;
    const auto label = g.find_label(symbol);
    if (!label) return out;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const Edge& e : g.edges()) {
        if (e.label == *label) {
            edges.push_back({e.src, e.dst});
            out.insert(e.src, e.src);
            out.insert(e.dst, e.dst);
        }
    }
    if (edges.empty()) return out;
    const TcResult tc = tc_linear(Digraph::from_edges(g.vertex_count(), std::move(edges)));
    for (const auto& [u, v] : tc.closure.sorted()) out.insert(u, v);
    return out;
}

}  // namespace rpq
