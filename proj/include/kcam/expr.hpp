#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>

namespace kcam {

class BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

// Boolean mechanism expression: a tree of variables, negations,
// conjunctions and disjunctions. Nodes are immutable and shared.
class BoolExpr {
public:
    enum class Kind { Var, Not, And, Or };

    static BoolExprPtr var(std::string name) {
        return std::make_shared<BoolExpr>(Kind::Var, std::move(name), nullptr, nullptr);
    }
    static BoolExprPtr negation(BoolExprPtr e) {
        return std::make_shared<BoolExpr>(Kind::Not, std::string{}, std::move(e), nullptr);
    }
    static BoolExprPtr conj(BoolExprPtr l, BoolExprPtr r) {
        return std::make_shared<BoolExpr>(Kind::And, std::string{}, std::move(l), std::move(r));
    }
    static BoolExprPtr disj(BoolExprPtr l, BoolExprPtr r) {
        return std::make_shared<BoolExpr>(Kind::Or, std::string{}, std::move(l), std::move(r));
    }

    BoolExpr(Kind kind, std::string name, BoolExprPtr lhs, BoolExprPtr rhs)
        : kind_(kind), name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const BoolExprPtr& lhs() const { return lhs_; }
    const BoolExprPtr& rhs() const { return rhs_; }

private:
    Kind kind_;
    std::string name_;   // Var only
    BoolExprPtr lhs_;    // Not operand, And/Or left
    BoolExprPtr rhs_;    // And/Or right
};

// Structural equality.
inline bool equal(const BoolExprPtr& a, const BoolExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case BoolExpr::Kind::Var: return a->name() == b->name();
        case BoolExpr::Kind::Not: return equal(a->lhs(), b->lhs());
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
    }
    return false;
}

inline void collect_variables(const BoolExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind() == BoolExpr::Kind::Var) {
        out.insert(e->name());
        return;
    }
    collect_variables(e->lhs(), out);
    collect_variables(e->rhs(), out);
}

// Every variable name syntactically occurring in the expression.
inline std::set<std::string> variables_of(const BoolExprPtr& e) {
    std::set<std::string> out;
    collect_variables(e, out);
    return out;
}

}  // namespace kcam
