#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rpq/errors.hpp"
#include "rpq/regex.hpp"

namespace rpq {

using StateId = std::uint32_t;

struct NfaTransition {
    StateId from;
    std::uint32_t label;  // index into Nfa::symbols
    StateId to;

    friend auto operator<=>(const NfaTransition&, const NfaTransition&) = default;
};

/// Epsilon-free nondeterministic finite automaton. States are dense ids with
/// names; transition labels are interned symbol tokens. Immutable once built.
class Nfa {
public:
    StateId add_state(std::string name) {
        state_names_.push_back(std::move(name));
        out_.emplace_back();
        return static_cast<StateId>(state_names_.size() - 1);
    }

    std::uint32_t intern_symbol(std::string_view name) {
        auto it = symbol_index_.find(std::string(name));
        if (it != symbol_index_.end()) return it->second;
        symbols_.emplace_back(name);
        const auto id = static_cast<std::uint32_t>(symbols_.size() - 1);
        symbol_index_.emplace(symbols_.back(), id);
        return id;
    }

    std::optional<std::uint32_t> find_symbol(std::string_view name) const {
        auto it = symbol_index_.find(std::string(name));
        if (it == symbol_index_.end()) return std::nullopt;
        return it->second;
    }

    bool add_transition(StateId from, std::string_view label, StateId to) {
        const std::uint32_t sym = intern_symbol(label);
        NfaTransition t{from, sym, to};
        if (std::find(transitions_.begin(), transitions_.end(), t) != transitions_.end())
            return false;
        transitions_.push_back(t);
        out_[from].push_back({sym, to});
        return true;
    }

    void mark_start(StateId s) {
        if (!is_start_[s]) {
            start_states_.push_back(s);
            is_start_[s] = true;
        }
    }
    void mark_final(StateId s) {
        if (!is_final_[s]) {
            final_states_.push_back(s);
            is_final_[s] = true;
        }
    }

    /// Must be called after the last add_state and before mark_start/final.
    void seal_states() {
        is_start_.assign(state_names_.size(), false);
        is_final_.assign(state_names_.size(), false);
    }

    std::size_t state_count() const { return state_names_.size(); }
    const std::string& state_name(StateId s) const { return state_names_[s]; }
    const std::vector<StateId>& start_states() const { return start_states_; }
    const std::vector<StateId>& final_states() const { return final_states_; }
    bool is_start(StateId s) const { return is_start_[s]; }
    bool is_final(StateId s) const { return is_final_[s]; }
    const std::vector<NfaTransition>& transitions() const { return transitions_; }
    const std::vector<std::pair<std::uint32_t, StateId>>& out(StateId s) const {
        return out_[s];
    }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool accepts_epsilon() const {
        for (StateId s : start_states_) {
            if (is_final_[s]) return true;
        }
        return false;
    }

private:
    std::vector<std::string> state_names_;
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, std::uint32_t> symbol_index_;
    std::vector<NfaTransition> transitions_;
    std::vector<std::vector<std::pair<std::uint32_t, StateId>>> out_;
    std::vector<StateId> start_states_;
    std::vector<StateId> final_states_;
    std::vector<bool> is_start_;
    std::vector<bool> is_final_;
};

namespace detail {

/// Thompson-construction automaton with epsilon moves; intermediate only.
struct EpsNfa {
    struct Frag {
        StateId start;
        StateId accept;
    };

    std::vector<std::vector<std::pair<std::optional<std::string>, StateId>>> out;

    StateId add_state() {
        out.emplace_back();
        return static_cast<StateId>(out.size() - 1);
    }
    void add_edge(StateId a, std::optional<std::string> label, StateId b) {
        out[a].push_back({std::move(label), b});
    }

    Frag build(const RpqAst& ast) {
        switch (ast.kind) {
            case AstKind::Symbol: {
                StateId s = add_state(), f = add_state();
                add_edge(s, ast.symbol, f);
                return {s, f};
            }
            case AstKind::Epsilon: {
                StateId s = add_state(), f = add_state();
                add_edge(s, std::nullopt, f);
                return {s, f};
            }
            case AstKind::Concat: {
                Frag acc = build(*ast.children.front());
                for (std::size_t i = 1; i < ast.children.size(); ++i) {
                    Frag next = build(*ast.children[i]);
                    add_edge(acc.accept, std::nullopt, next.start);
                    acc.accept = next.accept;
                }
                return acc;
            }
            case AstKind::Union: {
                StateId s = add_state(), f = add_state();
                for (const auto& child : ast.children) {
                    Frag c = build(*child);
                    add_edge(s, std::nullopt, c.start);
                    add_edge(c.accept, std::nullopt, f);
                }
                return {s, f};
            }
            case AstKind::Star: {
                Frag c = build(*ast.children.front());
                StateId s = add_state(), f = add_state();
                add_edge(s, std::nullopt, c.start);
                add_edge(s, std::nullopt, f);
                add_edge(c.accept, std::nullopt, c.start);
                add_edge(c.accept, std::nullopt, f);
                return {s, f};
            }
        }
        throw std::logic_error("unreachable ast kind");
    }

    std::vector<StateId> epsilon_closure(StateId from) const {
        std::vector<bool> seen(out.size(), false);
        std::vector<StateId> stack{from}, closure;
        seen[from] = true;
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            closure.push_back(s);
            for (const auto& [label, to] : out[s]) {
                if (!label && !seen[to]) {
                    seen[to] = true;
                    stack.push_back(to);
                }
            }
        }
        std::sort(closure.begin(), closure.end());
        return closure;
    }
};

}  // namespace detail

/// Compiles an AST to an epsilon-free NFA: Thompson construction, epsilon
/// closure elimination, then removal of states that cannot lie on an
/// accepting run. The language is preserved; the empty word is accepted
/// iff some state is both start and final.
inline Nfa compile(const RpqAst& ast) {
    detail::EpsNfa eps;
    auto frag = eps.build(ast);
    const std::size_t n = eps.out.size();

    // Closure-based elimination: state q keeps a sigma-edge to p whenever
    // some r in closure(q) has (r, sigma, p).
    std::vector<std::vector<StateId>> closures(n);
    for (StateId q = 0; q < n; ++q) closures[q] = eps.epsilon_closure(q);

    std::vector<std::set<std::pair<std::string, StateId>>> moves(n);
    std::vector<bool> final_flag(n, false);
    for (StateId q = 0; q < n; ++q) {
        for (StateId r : closures[q]) {
            if (r == frag.accept) final_flag[q] = true;
            for (const auto& [label, to] : eps.out[r]) {
                if (label) moves[q].insert({*label, to});
            }
        }
    }

    // Keep states that are reachable from the start and can reach a final
    // state; dropping the rest does not change the language.
    std::vector<bool> reach(n, false);
    {
        std::deque<StateId> work{frag.start};
        reach[frag.start] = true;
        while (!work.empty()) {
            StateId q = work.front();
            work.pop_front();
            for (const auto& [label, to] : moves[q]) {
                if (!reach[to]) {
                    reach[to] = true;
                    work.push_back(to);
                }
            }
        }
    }
    std::vector<bool> productive(n, false);
    {
        std::vector<std::vector<StateId>> rev(n);
        for (StateId q = 0; q < n; ++q) {
            for (const auto& [label, to] : moves[q]) rev[to].push_back(q);
        }
        std::deque<StateId> work;
        for (StateId q = 0; q < n; ++q) {
            if (final_flag[q]) {
                productive[q] = true;
                work.push_back(q);
            }
        }
        while (!work.empty()) {
            StateId q = work.front();
            work.pop_front();
            for (StateId p : rev[q]) {
                if (!productive[p]) {
                    productive[p] = true;
                    work.push_back(p);
                }
            }
        }
    }

    std::vector<StateId> renumber(n, UINT32_MAX);
    Nfa nfa;
    for (StateId q = 0; q < n; ++q) {
        if (reach[q] && productive[q]) {
            renumber[q] = nfa.add_state("s" + std::to_string(nfa.state_count()));
        }
    }
    nfa.seal_states();
    if (renumber[frag.start] != UINT32_MAX) nfa.mark_start(renumber[frag.start]);
    for (StateId q = 0; q < n; ++q) {
        if (renumber[q] == UINT32_MAX) continue;
        if (final_flag[q]) nfa.mark_final(renumber[q]);
        for (const auto& [label, to] : moves[q]) {
            if (renumber[to] != UINT32_MAX) nfa.add_transition(renumber[q], label, renumber[to]);
        }
    }
    return nfa;
}

inline Nfa compile(const AstPtr& ast) { return compile(*ast); }

/// Loads the line-oriented automaton format: `state N`, `start N`, `final N`,
/// `trans FROM LABEL TO`, with `#` comments. States must be declared before
/// use; at least one start and one final declaration are required.
inline Nfa load_automaton(std::istream& in) {
    Nfa nfa;
    std::unordered_map<std::string, StateId> by_name;
    struct PendingTrans {
        StateId from, to;
        std::string label;
    };
    std::vector<std::string> starts, finals;
    std::vector<PendingTrans> pending;

    std::string line;
    std::size_t line_no = 0;
    auto lookup = [&](const std::string& name) -> StateId {
        auto it = by_name.find(name);
        if (it == by_name.end()) {
            throw FormatError("line " + std::to_string(line_no) + ": undeclared state '" +
                              name + "'");
        }
        return it->second;
    };

    bool saw_start = false, saw_final = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string directive;
        if (!(ls >> directive) || directive[0] == '#') continue;
        if (directive == "state") {
            std::string name;
            if (!(ls >> name)) throw FormatError("line " + std::to_string(line_no) + ": state needs a name");
            if (by_name.contains(name))
                throw FormatError("line " + std::to_string(line_no) + ": duplicate state '" + name + "'");
            by_name.emplace(name, nfa.add_state(name));
        } else if (directive == "start") {
            std::string name;
            if (!(ls >> name)) throw FormatError("line " + std::to_string(line_no) + ": start needs a state");
            starts.push_back(name);
            lookup(name);
            saw_start = true;
        } else if (directive == "final") {
            std::string name;
            if (!(ls >> name)) throw FormatError("line " + std::to_string(line_no) + ": final needs a state");
            finals.push_back(name);
            lookup(name);
            saw_final = true;
        } else if (directive == "trans") {
            std::string from, label, to;
            if (!(ls >> from >> label >> to))
                throw FormatError("line " + std::to_string(line_no) + ": trans needs FROM LABEL TO");
            pending.push_back({lookup(from), lookup(to), label});
        } else {
            throw FormatError("line " + std::to_string(line_no) + ": unknown directive '" +
                              directive + "'");
        }
    }
    if (!saw_start) throw FormatError("missing start declaration");
    if (!saw_final) throw FormatError("missing final declaration");

    nfa.seal_states();
    for (const auto& s : starts) nfa.mark_start(by_name.at(s));
    for (const auto& f : finals) nfa.mark_final(by_name.at(f));
    for (const auto& t : pending) nfa.add_transition(t.from, t.label, t.to);
    return nfa;
}

inline Nfa load_automaton(const std::string& text) {
    std::istringstream in(text);
    return load_automaton(in);
}

/// Subset-simulation membership test; words with symbols outside the
/// automaton's alphabet are rejected.
inline bool accepts(const Nfa& m, const std::vector<std::string>& word) {
    std::vector<bool> current(m.state_count(), false);
    for (StateId s : m.start_states()) current[s] = true;
    for (const std::string& sym : word) {
        const auto id = m.find_symbol(sym);
        std::vector<bool> next(m.state_count(), false);
        if (id) {
            for (StateId q = 0; q < m.state_count(); ++q) {
                if (!current[q]) continue;
                for (const auto& [label, to] : m.out(q)) {
                    if (label == *id) next[to] = true;
                }
            }
        }
        current = std::move(next);
    }
    for (StateId f : m.final_states()) {
        if (current[f]) return true;
    }
    return false;
}

}  // namespace rpq
