#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rpq/errors.hpp"

namespace rpq {

enum class AstKind { Symbol, Concat, Union, Star, Epsilon };

/// Regular-expression syntax tree. Concat/Union hold at least two children,
/// Star exactly one; Symbol carries a label token.
struct RpqAst {
    AstKind kind;
    std::string symbol;                               // Symbol only
    std::vector<std::shared_ptr<RpqAst>> children;    // Concat/Union/Star

    static std::shared_ptr<RpqAst> make_symbol(std::string name) {
        auto n = std::make_shared<RpqAst>();
        n->kind = AstKind::Symbol;
        n->symbol = std::move(name);
        return n;
    }
    static std::shared_ptr<RpqAst> make_epsilon() {
        auto n = std::make_shared<RpqAst>();
        n->kind = AstKind::Epsilon;
        return n;
    }
    static std::shared_ptr<RpqAst> make_star(std::shared_ptr<RpqAst> child) {
        auto n = std::make_shared<RpqAst>();
        n->kind = AstKind::Star;
        n->children.push_back(std::move(child));
        return n;
    }
    /// N-ary concat/union in flattened canonical form, as the parser emits.
    static std::shared_ptr<RpqAst> make_nary(AstKind kind,
                                             std::vector<std::shared_ptr<RpqAst>> children) {
        if (children.size() == 1) return children.front();
        auto n = std::make_shared<RpqAst>();
        n->kind = kind;
        for (auto& child : children) {
            if (child->kind == kind) {
                for (auto& grandchild : child->children) {
                    n->children.push_back(std::move(grandchild));
                }
            } else {
                n->children.push_back(std::move(child));
            }
        }
        return n;
    }
};

using AstPtr = std::shared_ptr<RpqAst>;

inline bool ast_equal(const RpqAst& a, const RpqAst& b) {
    if (a.kind != b.kind || a.symbol != b.symbol || a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!ast_equal(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

/// True iff no Kleene star occurs anywhere in the tree.
inline bool is_kleene_free(const RpqAst& ast) {
    if (ast.kind == AstKind::Star) return false;
    for (const auto& c : ast.children) {
        if (!is_kleene_free(*c)) return false;
    }
    return true;
}

/// Symbol tokens in first-occurrence order, deduplicated.
inline std::vector<std::string> collect_symbols(const RpqAst& ast) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto walk = [&](auto&& self, const RpqAst& node) -> void {
        if (node.kind == AstKind::Symbol && seen.insert(node.symbol).second)
            out.push_back(node.symbol);
        for (const auto& c : node.children) self(self, *c);
    };
    walk(walk, ast);
    return out;
}

namespace detail {

struct Token {
    enum Type { Sym, LParen, RParen, Plus, Dot, Star, End } type;
    std::string text;
    std::size_t pos;
};

inline bool special_char(char c) {
    return c == '(' || c == ')' || c == '+' || c == '|' || c == '.' || c == '*';
}

/// Tokenizer. When the query contains an explicit '.', maximal plain-character
/// runs are multi-character symbol tokens; otherwise each plain character is
/// its own symbol and concatenation is by juxtaposition.
inline std::vector<Token> lex_query(std::string_view q) {
    const bool multi_char = q.find('.') != std::string_view::npos;
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < q.size()) {
        const char c = q[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        switch (c) {
            case '(': tokens.push_back({Token::LParen, "(", i++}); continue;
            case ')': tokens.push_back({Token::RParen, ")", i++}); continue;
            case '+':
            case '|': tokens.push_back({Token::Plus, std::string(1, c), i++}); continue;
            case '.': tokens.push_back({Token::Dot, ".", i++}); continue;
            case '*': tokens.push_back({Token::Star, "*", i++}); continue;
            default: break;
        }
        if (multi_char) {
            std::size_t j = i;
            while (j < q.size() && !special_char(q[j]) && q[j] != ' ' && q[j] != '\t') ++j;
            tokens.push_back({Token::Sym, std::string(q.substr(i, j - i)), i});
            i = j;
        } else {
            tokens.push_back({Token::Sym, std::string(1, c), i++});
        }
    }
    tokens.push_back({Token::End, "", q.size()});
    return tokens;
}

class QueryParser {
public:
    explicit QueryParser(std::string_view q) : tokens_(lex_query(q)) {}

    AstPtr parse() {
        AstPtr ast = parse_union();
        expect(Token::End, "unexpected trailing input");
        return ast;
    }

private:
    const Token& peek() const { return tokens_[at_]; }
    void advance() { ++at_; }

    void expect(Token::Type t, const char* message) {
        if (peek().type != t) throw ParseError(message, peek().pos);
        advance();
    }

    AstPtr parse_union() {
        std::vector<AstPtr> branches;
        branches.push_back(parse_concat());
        while (peek().type == Token::Plus) {
            advance();
            branches.push_back(parse_concat());
        }
        return RpqAst::make_nary(AstKind::Union, std::move(branches));
    }

    AstPtr parse_concat() {
        std::vector<AstPtr> parts;
        parts.push_back(parse_factor());
        for (;;) {
            if (peek().type == Token::Dot) {
                advance();
                parts.push_back(parse_factor());
            } else if (peek().type == Token::Sym || peek().type == Token::LParen) {
                parts.push_back(parse_factor());
            } else {
                break;
            }
        }
        return RpqAst::make_nary(AstKind::Concat, std::move(parts));
    }

    AstPtr parse_factor() {
        AstPtr node = parse_atom();
        while (peek().type == Token::Star) {
            advance();
            node = RpqAst::make_star(std::move(node));
        }
        return node;
    }

    AstPtr parse_atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Sym: {
                AstPtr node = RpqAst::make_symbol(t.text);
                advance();
                return node;
            }
            case Token::LParen: {
                advance();
                AstPtr inner = parse_union();
                expect(Token::RParen, "expected ')'");
                return inner;
            }
            case Token::Plus: throw ParseError("empty alternation branch", t.pos);
            case Token::Star: throw ParseError("dangling '*'", t.pos);
            case Token::RParen: throw ParseError("unexpected ')'", t.pos);
            case Token::Dot: throw ParseError("dangling '.'", t.pos);
            case Token::End: throw ParseError("expected operand", t.pos);
        }
        throw ParseError("unexpected token", t.pos);
    }

    std::vector<Token> tokens_;
    std::size_t at_ = 0;
};

}  // namespace detail

/// Parses a query string. `+` and `|` are union, `.` and juxtaposition are
/// concatenation, postfix `*` is Kleene star, parentheses group
/// (star > concat > union). Queries containing '.' use multi-character
/// symbol tokens; otherwise each character is one symbol.
inline AstPtr parse(std::string_view query) {
    return detail::QueryParser(query).parse();
}

/// Serialization that reparses to a structurally equal tree.
inline std::string to_string(const RpqAst& ast) {
    bool multi = false;
    auto scan = [&](auto&& self, const RpqAst& n) -> void {
        if (n.kind == AstKind::Symbol && n.symbol.size() != 1) multi = true;
        if (n.kind == AstKind::Epsilon)
            throw std::logic_error("epsilon has no literal syntax");
        for (const auto& c : n.children) self(self, *c);
    };
    scan(scan, ast);

    auto emit = [&](auto&& self, const RpqAst& n, int parent_prec) -> std::string {
        // precedence: union 0, concat 1, star 2
        switch (n.kind) {
            case AstKind::Symbol: return n.symbol;
            case AstKind::Epsilon: throw std::logic_error("epsilon has no literal syntax");
            case AstKind::Star: {
                std::string inner = self(self, *n.children.front(), 2);
                std::string s = inner + "*";
                return s;
            }
            case AstKind::Concat: {
                std::string s;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i > 0 && multi) s += '.';
                    s += self(self, *n.children[i], 1);
                }
                if (parent_prec > 1) return "(" + s + ")";
                return s;
            }
            case AstKind::Union: {
                std::string s;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i > 0) s += '+';
                    s += self(self, *n.children[i], 0);
                }
                if (parent_prec > 0) return "(" + s + ")";
                return s;
            }
        }
        return {};
    };
    return emit(emit, ast, 0);
}

}  // namespace rpq
