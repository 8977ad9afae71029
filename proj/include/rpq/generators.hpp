#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rpq/graph.hpp"

namespace rpq {

/// SplitMix64 (Steele, Lea, Flood: "Fast splittable pseudorandom number
/// generators"). Fixed algorithm with platform-independent output, so
/// generated instances are reproducible everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-enough value in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

/// Path on vertices 1..n: edges (i, label, i+1) for i < n. A single-vertex
/// path has no edges, hence no registered vertices.
inline LabeledGraph gen_path(std::size_t n, const std::string& label = "b") {
    if (n < 1) throw std::invalid_argument("gen_path requires n >= 1");
    LabeledGraph g;
    for (std::size_t i = 1; i < n; ++i) {
        g.add_edge(std::to_string(i), label, std::to_string(i + 1));
    }
    return g;
}

/// Two disjoint cycles of length n: consecutive vertices of the first cycle
/// are connected by both an a-edge and a b-edge, of the second cycle by both
/// a b-edge and a c-edge. 4n edges total; second-cycle vertices are primed.
inline LabeledGraph gen_two_cycles(std::size_t n) {
    if (n < 2) throw std::invalid_argument("gen_two_cycles requires n >= 2");
    LabeledGraph g;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::string u = std::to_string(i);
        const std::string v = std::to_string(i % n + 1);
        g.add_edge(u, "a", v);
        g.add_edge(u, "b", v);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const std::string u = std::to_string(i) + "'";
        const std::string v = std::to_string(i % n + 1) + "'";
        g.add_edge(u, "b", v);
        g.add_edge(u, "c", v);
    }
    return g;
}

/// `edge_count` distinct labeled edges sampled uniformly from
/// [1..vertex_count] x alphabet x [1..vertex_count], deterministic in the
/// seed. Vertices that end up on no edge are not registered.
inline LabeledGraph gen_random(std::size_t vertex_count, std::size_t edge_count,
                               const std::vector<std::string>& alphabet, std::uint64_t seed) {
    const std::uint64_t space =
        static_cast<std::uint64_t>(vertex_count) * vertex_count * alphabet.size();
    if (edge_count > space) {
        throw std::invalid_argument("requested " + std::to_string(edge_count) +
                                    " edges but only " + std::to_string(space) +
                                    " distinct triples exist");
    }
    SplitMix64 rng(seed);
    LabeledGraph g;
    if (edge_count == 0) return g;

    std::unordered_set<std::uint64_t> used;
    std::size_t made = 0;
    while (made < edge_count) {
        const std::uint64_t code = rng.below(space);
        if (!used.insert(code).second) continue;
        const std::uint64_t src = code % vertex_count;
        const std::uint64_t dst = (code / vertex_count) % vertex_count;
        const std::uint64_t label = code / (static_cast<std::uint64_t>(vertex_count) * vertex_count);
        g.add_edge(std::to_string(src + 1), alphabet[label], std::to_string(dst + 1));
        ++made;
    }
    return g;
}

}  // namespace rpq
