#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "kcam/error.hpp"
#include "kcam/expr.hpp"
#include "kcam/formula.hpp"
#include "kcam/literal.hpp"

// Concrete syntax.
//
// Mechanism expressions:
//   expr    := or_expr
//   or_expr := and_expr ('|' and_expr)*
//   and_expr:= unary ('&' unary)*
//   unary   := '!' unary | '(' expr ')' | ident
//
// Query formulas extend the above with '->' (implication, lowest
// precedence, right associative) and the predicates
//   Goal(lit)  Affects(lit, patient, +|-)  Causes(lit, formula)
//   Means1(patient)  Means2(patient)  End(patient)
// where lit := '!'? ident and patient is an identifier or a double
// quoted string. Identifiers match [A-Za-z_][A-Za-z0-9_]*; whitespace
// is insignificant. Predicate names are only special when followed by
// '('; otherwise they are ordinary atoms.

namespace kcam {

namespace detail {

struct Token {
    enum class Type { Ident, String, Bang, Amp, Pipe, Arrow, LParen, RParen, Comma, Plus, Minus, End };
    Type type = Type::End;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) {}

    Token next() {
        while (pos_ < input_.size() && is_space(input_[pos_])) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= input_.size()) return t;
        char c = input_[pos_];
        switch (c) {
            case '!': ++pos_; t.type = Token::Type::Bang; return t;
            case '&': ++pos_; t.type = Token::Type::Amp; return t;
            case '|': ++pos_; t.type = Token::Type::Pipe; return t;
            case '(': ++pos_; t.type = Token::Type::LParen; return t;
            case ')': ++pos_; t.type = Token::Type::RParen; return t;
            case ',': ++pos_; t.type = Token::Type::Comma; return t;
            case '+': ++pos_; t.type = Token::Type::Plus; return t;
            case '-':
                ++pos_;
                if (pos_ < input_.size() && input_[pos_] == '>') {
                    ++pos_;
                    t.type = Token::Type::Arrow;
                } else {
                    t.type = Token::Type::Minus;
                }
                return t;
            case '"': return lex_string(t);
            default: break;
        }
        if (is_ident_start(c)) {
            std::size_t begin = pos_;
            while (pos_ < input_.size() && is_ident_char(input_[pos_])) ++pos_;
            t.type = Token::Type::Ident;
            t.text = std::string(input_.substr(begin, pos_ - begin));
            return t;
        }
        throw parse_error(pos_, "unexpected character");
    }

private:
    Token lex_string(Token t) {
        ++pos_;  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= input_.size()) throw parse_error(t.offset, "unterminated string");
            char c = input_[pos_++];
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= input_.size()) throw parse_error(t.offset, "unterminated string");
                char e = input_[pos_++];
                if (e != '"' && e != '\\') throw parse_error(pos_ - 1, "invalid escape in string");
                out.push_back(e);
            } else {
                out.push_back(c);
            }
        }
        t.type = Token::Type::String;
        t.text = std::move(out);
        return t;
    }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
    static bool is_ident_start(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    std::string_view input_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view input) : lexer_(input) { advance(); }

    BoolExprPtr mechanism() {
        auto e = mech_or();
        expect_end();
        return e;
    }

    FormulaPtr query() {
        auto f = formula();
        expect_end();
        return f;
    }

    Literal literal_only() {
        Literal l = literal();
        expect_end();
        return l;
    }

private:
    using T = Token::Type;

    // --- mechanism grammar ---

    BoolExprPtr mech_or() {
        auto e = mech_and();
        while (cur_.type == T::Pipe) {
            advance();
            e = BoolExpr::disj(std::move(e), mech_and());
        }
        return e;
    }

    BoolExprPtr mech_and() {
        auto e = mech_unary();
        while (cur_.type == T::Amp) {
            advance();
            e = BoolExpr::conj(std::move(e), mech_unary());
        }
        return e;
    }

    BoolExprPtr mech_unary() {
        if (cur_.type == T::Bang) {
            advance();
            return BoolExpr::negation(mech_unary());
        }
        if (cur_.type == T::LParen) {
            advance();
            auto e = mech_or();
            expect(T::RParen, "expected ')'");
            return e;
        }
        if (cur_.type == T::Ident) {
            auto e = BoolExpr::var(cur_.text);
            advance();
            return e;
        }
        throw parse_error(cur_.offset, "expected variable, '!' or '('");
    }

    // --- query grammar ---

    FormulaPtr formula() {
        auto lhs = form_or();
        if (cur_.type == T::Arrow) {
            advance();
            return Formula::implies(std::move(lhs), formula());  // right associative
        }
        return lhs;
    }

    FormulaPtr form_or() {
        auto f = form_and();
        while (cur_.type == T::Pipe) {
            advance();
            f = Formula::disj(std::move(f), form_and());
        }
        return f;
    }

    FormulaPtr form_and() {
        auto f = form_unary();
        while (cur_.type == T::Amp) {
            advance();
            f = Formula::conj(std::move(f), form_unary());
        }
        return f;
    }

    FormulaPtr form_unary() {
        if (cur_.type == T::Bang) {
            advance();
            return Formula::negation(form_unary());
        }
        if (cur_.type == T::LParen) {
            advance();
            auto f = formula();
            expect(T::RParen, "expected ')'");
            return f;
        }
        if (cur_.type == T::Ident) {
            std::string name = cur_.text;
            advance();
            if (cur_.type == T::LParen && is_predicate_name(name)) return predicate(name);
            return Formula::atom(Literal{std::move(name), true});
        }
        throw parse_error(cur_.offset, "expected formula");
    }

    static bool is_predicate_name(const std::string& n) {
        return n == "Goal" || n == "Affects" || n == "Causes" || n == "Means1" ||
               n == "Means2" || n == "End";
    }

    FormulaPtr predicate(const std::string& name) {
        expect(T::LParen, "expected '('");
        if (name == "Goal") {
            Literal l = literal();
            expect(T::RParen, "expected ')'");
            return Formula::goal(std::move(l));
        }
        if (name == "Affects") {
            Literal l = literal();
            expect(T::Comma, "expected ','");
            std::string p = patient();
            expect(T::Comma, "expected ','");
            Sign s = sign();
            expect(T::RParen, "expected ')'");
            return Formula::affects(std::move(l), std::move(p), s);
        }
        if (name == "Causes") {
            Literal l = literal();
            expect(T::Comma, "expected ','");
            std::size_t effect_at = cur_.offset;
            FormulaPtr effect = formula();
            if (contains_causal_predicate(effect))
                throw parse_error(effect_at, "the effect of Causes may not contain Causes, Means or End");
            expect(T::RParen, "expected ')'");
            return Formula::causes(std::move(l), std::move(effect));
        }
        if (name == "Means1" || name == "Means2") {
            std::string p = patient();
            expect(T::RParen, "expected ')'");
            return Formula::means(name == "Means1" ? Reading::One : Reading::Two, std::move(p));
        }
        // End
        std::string p = patient();
        expect(T::RParen, "expected ')'");
        return Formula::end(std::move(p));
    }

    Literal literal() {
        bool positive = true;
        if (cur_.type == T::Bang) {
            positive = false;
            advance();
        }
        if (cur_.type != T::Ident) throw parse_error(cur_.offset, "expected variable name");
        Literal l{cur_.text, positive};
        advance();
        return l;
    }

    std::string patient() {
        if (cur_.type == T::Ident || cur_.type == T::String) {
            std::string p = cur_.text;
            advance();
            return p;
        }
        throw parse_error(cur_.offset, "expected patient name");
    }

    Sign sign() {
        if (cur_.type == T::Plus) {
            advance();
            return Sign::Plus;
        }
        if (cur_.type == T::Minus) {
            advance();
            return Sign::Minus;
        }
        throw parse_error(cur_.offset, "expected '+' or '-'");
    }

    // --- machinery ---

    void advance() { cur_ = lexer_.next(); }

    void expect(T type, const char* message) {
        if (cur_.type != type) throw parse_error(cur_.offset, message);
        advance();
    }

    void expect_end() {
        if (cur_.type != T::End) throw parse_error(cur_.offset, "unexpected trailing input");
    }

    Lexer lexer_;
    Token cur_;
};

// Precedence levels used by both renderers; parentheses are emitted
// exactly where reparsing would otherwise change the tree.
inline int prec(BoolExpr::Kind k) {
    switch (k) {
        case BoolExpr::Kind::Or: return 1;
        case BoolExpr::Kind::And: return 2;
        case BoolExpr::Kind::Not: return 3;
        case BoolExpr::Kind::Var: return 4;
    }
    return 4;
}

inline int prec(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Implies: return 0;
        case Formula::Kind::Or: return 1;
        case Formula::Kind::And: return 2;
        case Formula::Kind::Not: return 3;
        default: return 4;
    }
}

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto start = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    };
    if (!start(s[0])) return false;
    for (char c : s.substr(1))
        if (!start(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string render_patient(const std::string& p) {
    return is_identifier(p) ? p : quote(p);
}

inline void render_expr(std::string& out, const BoolExprPtr& e, int ctx, bool parens_on_equal) {
    int p = prec(e->kind());
    bool need = parens_on_equal ? (p <= ctx) : (p < ctx);
    if (need) out.push_back('(');
    switch (e->kind()) {
        case BoolExpr::Kind::Var:
            out += e->name();
            break;
        case BoolExpr::Kind::Not:
            out.push_back('!');
            render_expr(out, e->lhs(), prec(BoolExpr::Kind::Not), false);
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or: {
            int my = prec(e->kind());
            render_expr(out, e->lhs(), my, false);
            out += e->kind() == BoolExpr::Kind::And ? " & " : " | ";
            render_expr(out, e->rhs(), my, true);  // left associative
            break;
        }
    }
    if (need) out.push_back(')');
}

inline void render_formula(std::string& out, const FormulaPtr& f, int ctx, bool parens_on_equal) {
    using K = Formula::Kind;
    int p = prec(f->kind());
    bool need = parens_on_equal ? (p <= ctx) : (p < ctx);
    if (need) out.push_back('(');
    switch (f->kind()) {
        case K::Atom:
            out += to_string(f->lit());
            break;
        case K::Not:
            out.push_back('!');
            render_formula(out, f->lhs(), prec(K::Not), false);
            break;
        case K::And:
        case K::Or: {
            int my = prec(f->kind());
            render_formula(out, f->lhs(), my, false);
            out += f->kind() == K::And ? " & " : " | ";
            render_formula(out, f->rhs(), my, true);  // left associative
            break;
        }
        case K::Implies:
            render_formula(out, f->lhs(), prec(K::Implies), true);  // right associative
            out += " -> ";
            render_formula(out, f->rhs(), prec(K::Implies), false);
            break;
        case K::Goal:
            out += "Goal(" + to_string(f->lit()) + ")";
            break;
        case K::Affects:
            out += "Affects(" + to_string(f->lit()) + ", " + render_patient(f->patient()) +
                   ", " + to_char(f->sign()) + ")";
            break;
        case K::Causes: {
            out += "Causes(" + to_string(f->lit()) + ", ";
            render_formula(out, f->rhs(), 0, false);
            out.push_back(')');
            break;
        }
        case K::Means:
            out += "Means" + std::to_string(to_int(f->reading())) + "(" +
                   render_patient(f->patient()) + ")";
            break;
        case K::End:
            out += "End(" + render_patient(f->patient()) + ")";
            break;
    }
    if (need) out.push_back(')');
}

}  // namespace detail

inline BoolExprPtr parse_mechanism(std::string_view text) {
    return detail::Parser(text).mechanism();
}

inline FormulaPtr parse_query(std::string_view text) {
    return detail::Parser(text).query();
}

// Parses the literal-string syntax used in model files: a variable
// name optionally prefixed by '!'.
inline Literal parse_literal(std::string_view text) {
    return detail::Parser(text).literal_only();
}

// Canonical text. parse_mechanism(render(e)) is structurally equal to e.
inline std::string render(const BoolExprPtr& e) {
    std::string out;
    detail::render_expr(out, e, 0, false);
    return out;
}

// Canonical text. parse_query(render(f)) is structurally equal to f for
// every tree the parser can produce (atoms are rendered as '!'-prefixed
// names when negative, which reparses as negation around the atom).
inline std::string render(const FormulaPtr& f) {
    std::string out;
    detail::render_formula(out, f, 0, false);
    return out;
}

}  // namespace kcam
