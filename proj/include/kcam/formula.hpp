#pragma once

#include <memory>
#include <string>
#include <utility>

#include "kcam/literal.hpp"

namespace kcam {

// The two notions of "treated as a means".
enum class Reading { One = 1, Two = 2 };

inline int to_int(Reading r) { return static_cast<int>(r); }

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Query-language AST. Atoms are literals; the predicates evaluate
// relative to the ambient (model, situation, intervention) triple.
//
// Causes takes a literal and an effect formula; the effect may use
// atoms, Goal, Affects and connectives, but no Causes/Means/End
// (enforced by the parser and again by the evaluator).
class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Implies, Goal, Affects, Causes, Means, End };

    static FormulaPtr atom(Literal l) {
        auto f = blank(Kind::Atom);
        f->lit_ = std::move(l);
        return f;
    }
    static FormulaPtr negation(FormulaPtr a) {
        auto f = blank(Kind::Not);
        f->lhs_ = std::move(a);
        return f;
    }
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
        auto f = blank(Kind::And);
        f->lhs_ = std::move(a);
        f->rhs_ = std::move(b);
        return f;
    }
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
        auto f = blank(Kind::Or);
        f->lhs_ = std::move(a);
        f->rhs_ = std::move(b);
        return f;
    }
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
        auto f = blank(Kind::Implies);
        f->lhs_ = std::move(a);
        f->rhs_ = std::move(b);
        return f;
    }
    static FormulaPtr goal(Literal l) {
        auto f = blank(Kind::Goal);
        f->lit_ = std::move(l);
        return f;
    }
    static FormulaPtr affects(Literal l, std::string patient, Sign sign) {
        auto f = blank(Kind::Affects);
        f->lit_ = std::move(l);
        f->patient_ = std::move(patient);
        f->sign_ = sign;
        return f;
    }
    static FormulaPtr causes(Literal cause, FormulaPtr effect) {
        auto f = blank(Kind::Causes);
        f->lit_ = std::move(cause);
        f->rhs_ = std::move(effect);
        return f;
    }
    static FormulaPtr means(Reading reading, std::string patient) {
        auto f = blank(Kind::Means);
        f->reading_ = reading;
        f->patient_ = std::move(patient);
        return f;
    }
    static FormulaPtr end(std::string patient) {
        auto f = blank(Kind::End);
        f->patient_ = std::move(patient);
        return f;
    }

    Kind kind() const { return kind_; }
    const Literal& lit() const { return lit_; }
    const std::string& patient() const { return patient_; }
    Sign sign() const { return sign_; }
    Reading reading() const { return reading_; }
    const FormulaPtr& lhs() const { return lhs_; }
    const FormulaPtr& rhs() const { return rhs_; }

    explicit Formula(Kind k) : kind_(k) {}

private:
    static std::shared_ptr<Formula> blank(Kind k) { return std::make_shared<Formula>(k); }

    Kind kind_;
    Literal lit_;          // Atom, Goal, Affects, Causes (cause)
    std::string patient_;  // Affects, Means, End
    Sign sign_ = Sign::Plus;
    Reading reading_ = Reading::One;
    FormulaPtr lhs_;       // Not operand, binary left
    FormulaPtr rhs_;       // binary right, Causes effect
};

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    using K = Formula::Kind;
    switch (a->kind()) {
        case K::Atom:
        case K::Goal:
            return a->lit() == b->lit();
        case K::Not:
            return equal(a->lhs(), b->lhs());
        case K::And:
        case K::Or:
        case K::Implies:
            return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
        case K::Affects:
            return a->lit() == b->lit() && a->patient() == b->patient() && a->sign() == b->sign();
        case K::Causes:
            return a->lit() == b->lit() && equal(a->rhs(), b->rhs());
        case K::Means:
            return a->reading() == b->reading() && a->patient() == b->patient();
        case K::End:
            return a->patient() == b->patient();
    }
    return false;
}

// True if the formula contains a Causes, Means or End node anywhere.
// Such formulas may not appear as the effect of a but-for check.
inline bool contains_causal_predicate(const FormulaPtr& f) {
    if (!f) return false;
    using K = Formula::Kind;
    switch (f->kind()) {
        case K::Causes:
        case K::Means:
        case K::End:
            return true;
        default:
            return contains_causal_predicate(f->lhs()) || contains_causal_predicate(f->rhs());
    }
}

}  // namespace kcam
