#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rpq/errors.hpp"

namespace rpq {

using VertexId = std::uint32_t;
using SymbolId = std::uint32_t;

namespace detail {

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Dense string intern table; ids are assigned in first-appearance order.
class Interner {
public:
    std::uint32_t intern(std::string_view name) {
        auto it = index_.find(std::string(name));
        if (it != index_.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(name);
        index_.emplace(names_.back(), id);
        return id;
    }

    std::optional<std::uint32_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(std::uint32_t id) const { return names_[id]; }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace detail

struct Edge {
    VertexId src;
    SymbolId label;
    VertexId dst;

    friend bool operator==(const Edge&, const Edge&) = default;
};

namespace detail {
struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t h = pack_pair(e.src, e.dst);
        h ^= 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(e.label) + 1);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};
}  // namespace detail

/// Edge-labeled directed graph with interned vertex names and labels.
///
/// Only vertices incident to at least one edge are registered; the edge set
/// is deduplicated; per-label forward and reverse adjacency are maintained
/// as exact transposes. Construction is single-threaded and a completed
/// graph is immutable, so concurrent reads are safe.
class LabeledGraph {
public:
    /// Interns endpoints/label and appends the edge unless it is a duplicate.
    /// Returns true when the edge was new.
    bool add_edge(std::string_view src, std::string_view label, std::string_view dst) {
        const VertexId s = vertices_.intern(src);
        const SymbolId l = labels_.intern(label);
        const VertexId d = vertices_.intern(dst);
        return add_edge_ids(s, l, d);
    }

    bool add_edge_ids(VertexId src, SymbolId label, VertexId dst) {
        if (!edge_keys_.insert(Edge{src, label, dst}).second) return false;
        edges_.push_back(Edge{src, label, dst});
        grow_adjacency();
        forward_[label][src].push_back(dst);
        reverse_[label][dst].push_back(src);
        return true;
    }

    VertexId intern_vertex(std::string_view name) { return vertices_.intern(name); }
    SymbolId intern_label(std::string_view name) { return labels_.intern(name); }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t label_count() const { return labels_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertices_.name(v); }
    const std::string& label_name(SymbolId l) const { return labels_.name(l); }

    std::optional<VertexId> find_vertex(std::string_view name) const {
        return vertices_.find(name);
    }
    std::optional<SymbolId> find_label(std::string_view name) const {
        return labels_.find(name);
    }

    std::span<const Edge> edges() const { return edges_; }

    /// Successors of v along label-edges, in edge insertion order.
    std::span<const VertexId> forward(SymbolId label, VertexId v) const {
        return adjacency(forward_, label, v);
    }

    /// Predecessors of v along label-edges.
    std::span<const VertexId> reverse(SymbolId label, VertexId v) const {
        return adjacency(reverse_, label, v);
    }

    bool has_edge(VertexId src, SymbolId label, VertexId dst) const {
        return edge_keys_.contains(Edge{src, label, dst});
    }

    /// Edge-list serialization; stable under reload (round-trip idempotent).
    void serialize(std::ostream& out) const {
        for (const Edge& e : edges_) {
            out << vertex_name(e.src) << '\t' << label_name(e.label) << '\t'
                << vertex_name(e.dst) << '\n';
        }
    }

private:
    std::span<const VertexId> adjacency(
        const std::vector<std::vector<std::vector<VertexId>>>& table, SymbolId label,
        VertexId v) const {
        if (label >= table.size()) return {};
        const auto& per_vertex = table[label];
        if (v >= per_vertex.size()) return {};
        return per_vertex[v];
    }

    void grow_adjacency() {
        if (forward_.size() < labels_.size()) {
            forward_.resize(labels_.size());
            reverse_.resize(labels_.size());
        }
        for (auto* table : {&forward_, &reverse_}) {
            for (auto& per_vertex : *table) {
                if (per_vertex.size() < vertices_.size()) per_vertex.resize(vertices_.size());
            }
        }
    }

    detail::Interner vertices_;
    detail::Interner labels_;
    std::vector<Edge> edges_;
    std::unordered_set<Edge, detail::EdgeHash> edge_keys_;
    std::vector<std::vector<std::vector<VertexId>>> forward_;  // [label][v] -> successors
    std::vector<std::vector<std::vector<VertexId>>> reverse_;  // [label][v] -> predecessors
};

/// Deduplicated set of vertex pairs; the query answer representation.
class PairSet {
public:
    bool insert(VertexId src, VertexId dst) {
        return keys_.insert(detail::pack_pair(src, dst)).second;
    }

    bool contains(VertexId src, VertexId dst) const {
        return keys_.contains(detail::pack_pair(src, dst));
    }

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }

    /// Pairs sorted by (src, dst) id.
    std::vector<std::pair<VertexId, VertexId>> sorted() const {
        std::vector<std::uint64_t> keys(keys_.begin(), keys_.end());
        std::sort(keys.begin(), keys.end());
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(keys.size());
        for (std::uint64_t k : keys) {
            out.emplace_back(static_cast<VertexId>(k >> 32),
                             static_cast<VertexId>(k & 0xffffffffu));
        }
        return out;
    }

    friend bool operator==(const PairSet& a, const PairSet& b) { return a.keys_ == b.keys_; }

    /// Pairs present in exactly one of the two sets, sorted; `first` flags
    /// membership in *this.
    std::vector<std::pair<std::pair<VertexId, VertexId>, bool>> symmetric_difference(
        const PairSet& other) const {
        std::vector<std::pair<std::pair<VertexId, VertexId>, bool>> diff;
        for (std::uint64_t k : keys_) {
            if (!other.keys_.contains(k)) {
                diff.push_back({{static_cast<VertexId>(k >> 32),
                                 static_cast<VertexId>(k & 0xffffffffu)},
                                true});
            }
        }
        for (std::uint64_t k : other.keys_) {
            if (!keys_.contains(k)) {
                diff.push_back({{static_cast<VertexId>(k >> 32),
                                 static_cast<VertexId>(k & 0xffffffffu)},
                                false});
            }
        }
        std::sort(diff.begin(), diff.end());
        return diff;
    }

private:
    std::unordered_set<std::uint64_t> keys_;
};

/// Parses the tab-separated edge-list format: `src<TAB>label<TAB>dst` per
/// line, `#` comments, blank lines ignored.
inline LabeledGraph load_edge_list(std::istream& in) {
    LabeledGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos ||
            line.find('\t', tab2 + 1) != std::string::npos) {
            throw ParseError::at_line(line_no, "expected 3 tab-separated fields");
        }
        const std::string_view src(line.data(), tab1);
        const std::string_view label(line.data() + tab1 + 1, tab2 - tab1 - 1);
        const std::string_view dst(line.data() + tab2 + 1, line.size() - tab2 - 1);
        if (label.empty()) throw ParseError::at_line(line_no, "empty label token");
        if (src.empty() || dst.empty()) {
            throw ParseError::at_line(line_no, "empty vertex token");
        }
        g.add_edge(src, label, dst);
    }
    return g;
}

inline LabeledGraph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

/// Keeps exactly the edges whose label name is in `keep`; vertices left
/// edgeless by the restriction are not registered in the result.
inline LabeledGraph restrict_alphabet(const LabeledGraph& g,
                                      const std::vector<std::string>& keep) {
    std::unordered_set<std::string_view> wanted(keep.begin(), keep.end());
    LabeledGraph out;
    for (const Edge& e : g.edges()) {
        if (wanted.contains(g.label_name(e.label))) {
            out.add_edge(g.vertex_name(e.src), g.label_name(e.label), g.vertex_name(e.dst));
        }
    }
    return out;
}

}  // namespace rpq
