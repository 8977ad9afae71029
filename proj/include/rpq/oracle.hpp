#pragma once

#include <cstdint>
#include <vector>

#include "rpq/errors.hpp"
#include "rpq/graph.hpp"
#include "rpq/ospg.hpp"
#include "rpq/regex.hpp"

namespace rpq {

namespace detail {

/// Square boolean matrix with 64 columns packed per word.
class BitMatrix {
public:
    explicit BitMatrix(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= (1ull << (c % 64)); }
    bool get(std::size_t r, std::size_t c) const {
        return (row(r)[c / 64] >> (c % 64)) & 1ull;
    }

    std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    BitMatrix operator*(const BitMatrix& other) const {
        BitMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint64_t* lhs = row(i);
            std::uint64_t* dst = out.row(i);
            for (std::size_t jw = 0; jw < words_; ++jw) {
                std::uint64_t word = lhs[jw];
                while (word) {
                    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                    word &= word - 1;
                    const std::size_t j = jw * 64 + bit;
                    const std::uint64_t* src = other.row(j);
                    for (std::size_t k = 0; k < words_; ++k) dst[k] |= src[k];
                }
            }
        }
        return out;
    }

    BitMatrix& operator|=(const BitMatrix& other) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
        return *this;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Least fixpoint of I | M | M^2 | ... by repeated squaring of (I | M).
/// Stabilizes within ceil(log2 n) + 1 rounds; exceeding that is a bug.
inline BitMatrix star_closure(const BitMatrix& m) {
    const std::size_t n = m.size();
    BitMatrix p = BitMatrix::identity(n);
    p |= m;
    std::size_t max_rounds = 1;
    while ((1ull << max_rounds) < (n == 0 ? 1 : n)) ++max_rounds;
    max_rounds += 1;
    for (std::size_t round = 0;; ++round) {
        BitMatrix next = p * p;
        if (next == p) return p;
        if (round >= max_rounds)
            throw std::logic_error("star fixpoint failed to stabilize in log rounds");
        p = std::move(next);
    }
}

inline BitMatrix interpret_matrix(const RpqAst& ast, const LabeledGraph& g) {
    const std::size_t n = g.vertex_count();
    switch (ast.kind) {
        case AstKind::Symbol: {
            BitMatrix m(n);
            if (auto l = g.find_label(ast.symbol)) {
                for (const Edge& e : g.edges()) {
                    if (e.label == *l) m.set(e.src, e.dst);
                }
            }
            return m;
        }
        case AstKind::Epsilon: return BitMatrix::identity(n);
        case AstKind::Concat: {
            BitMatrix m = interpret_matrix(*ast.children.front(), g);
            for (std::size_t i = 1; i < ast.children.size(); ++i) {
                m = m * interpret_matrix(*ast.children[i], g);
            }
            return m;
        }
        case AstKind::Union: {
            BitMatrix m = interpret_matrix(*ast.children.front(), g);
            for (std::size_t i = 1; i < ast.children.size(); ++i) {
                m |= interpret_matrix(*ast.children[i], g);
            }
            return m;
        }
        case AstKind::Star: return star_closure(interpret_matrix(*ast.children.front(), g));
    }
    throw std::logic_error("unreachable ast kind");
}

}  // namespace detail

inline constexpr std::size_t kOracleVertexLimit = 4096;

/// Reference evaluator: interprets the query in the boolean-matrix semiring
/// over the query-restricted graph (symbol -> adjacency matrix, concat ->
/// product, union -> elementwise or, star -> reflexive-transitive fixpoint).
/// Dense matrices cap the instance size; larger inputs must use an engine.
inline PairSet eval_matrix(const LabeledGraph& g, const RpqAst& q) {
    const LabeledGraph restricted = restrict_alphabet(g, collect_symbols(q));
    if (restricted.vertex_count() > kOracleVertexLimit) {
        throw CapacityError("instance has " + std::to_string(restricted.vertex_count()) +
                            " vertices; the dense reference evaluator handles at most " +
                            std::to_string(kOracleVertexLimit) +
                            " - use eval with an engine instead");
    }
    const detail::BitMatrix m = detail::interpret_matrix(q, restricted);
    PairSet local;
    for (std::size_t i = 0; i < restricted.vertex_count(); ++i) {
        for (std::size_t j = 0; j < restricted.vertex_count(); ++j) {
            if (m.get(i, j)) local.insert(static_cast<VertexId>(i), static_cast<VertexId>(j));
        }
    }
    return detail::lift_pairs(local, restricted, g);
}

inline PairSet eval_matrix(const LabeledGraph& g, const AstPtr& q) {
    return eval_matrix(g, *q);
}

/// Exact transitive closure of an unlabeled edge list via the same matrix
/// machinery; reference for the semi-naive algorithms. Does not include
/// reflexive pairs unless witnessed by a cycle.
inline PairSet closure_matrix(std::size_t vertex_count,
                              const std::vector<std::pair<VertexId, VertexId>>& edges) {
    if (vertex_count > kOracleVertexLimit)
        throw CapacityError("dense closure limited to " + std::to_string(kOracleVertexLimit) +
                            " vertices");
    detail::BitMatrix m(vertex_count);
    for (const auto& [u, v] : edges) m.set(u, v);
    // closure without the reflexive part: M * star(M)
    const detail::BitMatrix reach = m * detail::star_closure(m);
    PairSet out;
    for (std::size_t i = 0; i < vertex_count; ++i) {
        for (std::size_t j = 0; j < vertex_count; ++j) {
            if (reach.get(i, j)) out.insert(static_cast<VertexId>(i), static_cast<VertexId>(j));
        }
    }
    return out;
}

}  // namespace rpq
