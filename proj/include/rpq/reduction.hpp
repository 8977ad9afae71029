#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rpq/automaton.hpp"
#include "rpq/graph.hpp"

namespace rpq {

/// Unlabeled product of a graph and an automaton: vertices are (graph
/// vertex, state) pairs, an edge exists wherever both take a transition on
/// the same symbol. Only pairs incident to at least one product edge are
/// materialized; ids follow (vertex, state) lexicographic order.
struct ProductGraph {
    std::vector<std::pair<VertexId, StateId>> verts;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, deduplicated

    std::optional<std::uint32_t> index_of(VertexId v, StateId q) const {
        const auto key = std::make_pair(v, q);
        auto it = std::lower_bound(verts.begin(), verts.end(), key);
        if (it == verts.end() || *it != key) return std::nullopt;
        return static_cast<std::uint32_t>(it - verts.begin());
    }
};

namespace detail {

/// Shared-symbol edge enumeration; pairs every graph sigma-edge with every
/// automaton sigma-transition.
inline std::vector<std::pair<std::pair<VertexId, StateId>, std::pair<VertexId, StateId>>>
enumerate_product_edges(const LabeledGraph& g, const Nfa& m) {
    std::vector<std::pair<std::pair<VertexId, StateId>, std::pair<VertexId, StateId>>> out;
    std::vector<std::vector<std::pair<StateId, StateId>>> trans_by_graph_label(g.label_count());
    for (const NfaTransition& t : m.transitions()) {
        if (auto l = g.find_label(m.symbols()[t.label])) {
            trans_by_graph_label[*l].push_back({t.from, t.to});
        }
    }
    for (const Edge& e : g.edges()) {
        for (const auto& [q, p] : trans_by_graph_label[e.label]) {
            out.push_back({{e.src, q}, {e.dst, p}});
        }
    }
    return out;
}

}  // namespace detail

inline ProductGraph product_graph(const LabeledGraph& g, const Nfa& m) {
    const auto raw = detail::enumerate_product_edges(g, m);
    ProductGraph prod;
    for (const auto& [a, b] : raw) {
        prod.verts.push_back(a);
        prod.verts.push_back(b);
    }
    std::sort(prod.verts.begin(), prod.verts.end());
    prod.verts.erase(std::unique(prod.verts.begin(), prod.verts.end()), prod.verts.end());
    for (const auto& [a, b] : raw) {
        prod.edges.push_back({*prod.index_of(a.first, a.second), *prod.index_of(b.first, b.second)});
    }
    std::sort(prod.edges.begin(), prod.edges.end());
    prod.edges.erase(std::unique(prod.edges.begin(), prod.edges.end()), prod.edges.end());
    return prod;
}

/// The reduced instance: product edges relabeled `b`, an `a` self-loop on
/// (v, q) for every start state q, and a `c` self-loop on (v, q) for every
/// final state q, for every registered vertex v. Pairs with no incident
/// edge at all are not materialized. origin/state map product vertices back.
struct AbcGraph {
    LabeledGraph inner;
    std::vector<VertexId> origin;
    std::vector<StateId> state;
    SymbolId a = 0, b = 0, c = 0;

    std::span<const VertexId> a_successors(VertexId pv) const { return inner.forward(a, pv); }
};

inline AbcGraph build_abc_graph(const LabeledGraph& g, const Nfa& m) {
    const auto raw = detail::enumerate_product_edges(g, m);

    std::vector<std::pair<VertexId, StateId>> verts;
    verts.reserve(raw.size() * 2 + g.vertex_count());
    for (const auto& [x, y] : raw) {
        verts.push_back(x);
        verts.push_back(y);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (StateId q : m.start_states()) verts.push_back({v, q});
        for (StateId q : m.final_states()) verts.push_back({v, q});
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    AbcGraph abc;
    abc.a = abc.inner.intern_label("a");
    abc.b = abc.inner.intern_label("b");
    abc.c = abc.inner.intern_label("c");
    abc.origin.reserve(verts.size());
    abc.state.reserve(verts.size());
    std::unordered_map<std::uint64_t, VertexId> id_of;
    for (const auto& [v, q] : verts) {
        const VertexId pv =
            abc.inner.intern_vertex(g.vertex_name(v) + "@" + m.state_name(q));
        abc.origin.push_back(v);
        abc.state.push_back(q);
        id_of.emplace(detail::pack_pair(v, q), pv);
    }

    for (const auto& [x, y] : raw) {
        abc.inner.add_edge_ids(id_of.at(detail::pack_pair(x.first, x.second)), abc.b,
                               id_of.at(detail::pack_pair(y.first, y.second)));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (StateId q : m.start_states()) {
            const VertexId pv = id_of.at(detail::pack_pair(v, q));
            abc.inner.add_edge_ids(pv, abc.a, pv);
        }
        for (StateId q : m.final_states()) {
            const VertexId pv = id_of.at(detail::pack_pair(v, q));
            abc.inner.add_edge_ids(pv, abc.c, pv);
        }
    }
    return abc;
}

/// Views a graph that is already over the alphabet {a, b, c} as a reduced
/// instance with identity origin map, so the core evaluator can run on it
/// directly.
inline AbcGraph direct_abc_graph(const LabeledGraph& g) {
    AbcGraph abc;
    abc.a = abc.inner.intern_label("a");
    abc.b = abc.inner.intern_label("b");
    abc.c = abc.inner.intern_label("c");
    for (const Edge& e : g.edges()) {
        const std::string& label = g.label_name(e.label);
        if (label != "a" && label != "b" && label != "c") {
            throw std::invalid_argument("direct abc view requires alphabet {a,b,c}, got '" +
                                        label + "'");
        }
        abc.inner.add_edge(g.vertex_name(e.src), label, g.vertex_name(e.dst));
    }
    abc.origin.resize(abc.inner.vertex_count());
    abc.state.assign(abc.inner.vertex_count(), 0);
    for (VertexId pv = 0; pv < abc.inner.vertex_count(); ++pv) {
        abc.origin[pv] = *g.find_vertex(abc.inner.vertex_name(pv));
    }
    return abc;
}

/// Projects product-vertex pairs down to original-vertex pairs.
inline PairSet project_output(const PairSet& abc_pairs, const AbcGraph& abc) {
    PairSet out;
    for (const auto& [x, y] : abc_pairs.sorted()) out.insert(abc.origin[x], abc.origin[y]);
    return out;
}

}  // namespace rpq
